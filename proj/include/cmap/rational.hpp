#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <optional>
#include <string>

namespace cmap {

// Exact scalars. cpp_rational keeps lowest terms and a positive denominator
// by construction, which is exactly the representation contract we need.
using big_int = boost::multiprecision::cpp_int;
using rational = boost::multiprecision::cpp_rational;

inline double to_double(const rational& q) { return q.template convert_to<double>(); }
inline double to_double(const big_int& n) { return n.template convert_to<double>(); }

inline big_int numer(const rational& q) { return boost::multiprecision::numerator(q); }
inline big_int denom(const rational& q) { return boost::multiprecision::denominator(q); }

inline bool is_integer(const rational& q) { return denom(q) == 1; }

// "p/q" or "p"; accepts an optional leading sign on the numerator.
rational parse_rational(const std::string& text);

// Lowest terms, "p" when the denominator is 1, else "p/q".
std::string format_rational(const rational& q);

// Exponent of p in n (n != 0).
int vp(big_int n, const big_int& p);

// Signed exponent of p in q = num/den.
int vp(const rational& q, const big_int& p);

// Best rational approximation with denominator <= max_den, together with the
// exact approximation error |x - p/q|. x is treated as the exact binary
// rational the double represents.
struct best_approx_result {
    rational value;
    rational error;
};
best_approx_result best_rational_approx(double x, const big_int& max_den);

// The p/q with q <= max_den minimizing |x - p/q| when that minimum is <=
// tolerance, otherwise empty. Continued-fraction search, never a denominator
// scan.
std::optional<rational> rational_detect(double x, const big_int& max_den, double tolerance);

} // namespace cmap
