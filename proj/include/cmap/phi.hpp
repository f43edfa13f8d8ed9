#pragma once

#include "cmap/consistent.hpp"
#include "cmap/loglinear.hpp"
#include "cmap/places.hpp"
#include "cmap/quadfield.hpp"

#include <string>
#include <vector>

namespace cmap {

// One term of a Phi sum: the place, the map value there, the log of the
// normalized absolute value, and their product.
struct phi_term {
    place v;
    local_value coeff;
    log_abs_value logabs;
    log_linear_number contribution;
};

struct phi_result {
    log_linear_number value;
    std::vector<phi_term> terms;
};

// Phi_c(x^t) = sum over places of c(.)·log||x^t||. The sum runs over the
// archimedean places plus the non-archimedean places where x has nonzero
// valuation (the normalized absolute value is 1 everywhere else). Exact
// arithmetic is preserved wherever the map value is exact; in particular
// rational x contributes exact log terms even at archimedean places.
phi_result phi_eval(const consistent_map& c, const field_element& x,
                    const rational& exponent = rational(1));

// Same sum for a rational argument, taken over the places of Q.
phi_result phi_eval(const consistent_map& c, const rational& x,
                    const rational& exponent = rational(1));

// Product-formula verification: Phi_lambda(x) for each sample, with the
// sum reported both exactly (where available) and as a float.
struct product_formula_row {
    std::string element;
    log_linear_number value;
    double abs_value = 0.0;
    bool exact_zero = false;
    bool pass = false;
};

struct product_formula_report {
    std::vector<product_formula_row> rows;
    bool all_pass = true;
    double max_abs = 0.0;
};

product_formula_report product_formula_check(const std::vector<field_element>& samples,
                                             double tol = 1e-9);
product_formula_report product_formula_check_q(const std::vector<rational>& samples,
                                               double tol = 1e-9);

// For a map based at Q, Phi_c(x) computed over the places of K must agree
// with (1/2)·Phi_c(norm x) computed over the places of Q.
struct norm_compat_row {
    std::string element;
    log_linear_number lhs;
    log_linear_number rhs;
    double abs_diff = 0.0;
    bool exact_equal = false;
    bool pass = false;
};

struct norm_compat_report {
    std::vector<norm_compat_row> rows;
    bool all_pass = true;
    double max_abs_diff = 0.0;
};

norm_compat_report norm_compatibility_check(const consistent_map& c,
                                            const std::vector<field_element>& samples,
                                            double tol = 1e-9);

// Kernel classification: evaluate Phi_c on the fundamental unit (real
// fields) and on ideal generators over primes up to prime_bound. If every
// value vanishes, check the structural consequence c(K,v) = c(Q,inf)·lambda(K,v)
// at all tested places; the report records which branch held.
struct zero_phi_test {
    std::string element;
    double phi_abs = 0.0;
    bool exact_zero = false;
};

struct zero_phi_place_row {
    place v;
    double c_value = 0.0;
    double lambda_v = 0.0;
    double expected = 0.0;
    double abs_diff = 0.0;
    bool pass = false;
};

struct zero_phi_report {
    std::vector<zero_phi_test> tests;
    double max_phi_abs = 0.0;
    bool phi_vanishes = false;
    double arch_scalar = 0.0;
    std::vector<zero_phi_place_row> place_rows;
    bool lambda_multiple = false;
    std::string branch;
};

zero_phi_report zero_phi_classify(const consistent_map& c, const quad_field& K,
                                  std::int64_t prime_bound, double tol = 1e-9);

} // namespace cmap
