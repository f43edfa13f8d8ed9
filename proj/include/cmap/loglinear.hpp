#pragma once

#include "cmap/rational.hpp"

#include <cstdint>
#include <map>
#include <string>

namespace cmap {

// A formal value q0 + sum q_p * log(p) over primes p, plus a float overflow
// part for contributions that have no exact form. The value is exact iff
// float_part == 0; log_terms never stores a zero coefficient.
struct log_linear_number {
    rational rational_part{0};
    std::map<std::int64_t, rational> log_terms;
    double float_part = 0.0;

    bool is_exact() const { return float_part == 0.0; }

    void add_rational(const rational& q) { rational_part += q; }
    void add_log_term(std::int64_t p, const rational& coeff);
    void add_float(double x) { float_part += x; }

    log_linear_number& operator+=(const log_linear_number& other);
    friend log_linear_number operator+(log_linear_number a, const log_linear_number& b) {
        a += b;
        return a;
    }

    // Scaling by an exact rational keeps exact parts exact.
    log_linear_number scaled(const rational& t) const;

    double to_double() const;

    // Exact values compare componentwise; anything with a float part only
    // equals itself structurally.
    bool operator==(const log_linear_number& other) const;

    // Human-readable rendering like "2 + 1*log(3) + 0.5", omitting zero parts.
    std::string to_string() const;
};

} // namespace cmap
