#pragma once

#include "cmap/consistent.hpp"
#include "cmap/places.hpp"
#include "cmap/quadfield.hpp"
#include "cmap/rational.hpp"

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace cmap {

// The unit-log matrix of a real quadratic field: one fundamental unit, the
// row A = [log eps, log|eps'|], and the lambda vector (1/2, 1/2) spanning
// ker A.
struct regulator_system {
    quad_field field;
    std::vector<field_element> units; // length 1
    std::array<double, 2> matrix_a{};
    std::array<rational, 2> lambda_vector;
    double regulator = 0.0; // |log eps|
};

regulator_system make_regulator_system(const quad_field& K);

// Target data for a functional: the value r at (Q, inf), Phi on each
// fundamental unit, and Phi on the ideal generator of each listed
// non-archimedean place (absent places default to target 0).
struct functional_spec {
    double r = 0.0;
    std::vector<double> unit_targets;
    std::map<place, double> generator_targets;
};

// The unique y with A·y = unit targets and sum(y) = r (coset intersection;
// 2x2 for real fields). Throws singular_system if the determinant
// degenerates (defensive; cannot happen for a valid regulator system).
std::array<double, 2> solve_arch_y(const regulator_system& sys, const functional_spec& fs);

// y_w = (target - sum_arch y_v log||beta||_v) / log||beta||_w.
double nonarch_y(const std::vector<double>& arch_y, const field_element& beta,
                 const place& w, double target);

// The consistent map based at K whose archimedean values come from
// solve_arch_y and whose value at each place over a prime <= prime_bound
// comes from nonarch_y applied to that place's canonical ideal generator.
consistent_map build_map_from_functional(const quad_field& K, const functional_spec& fs,
                                         std::int64_t prime_bound);

// An S-unit basis: fundamental units plus one ideal generator per
// non-archimedean place of S.
struct s_unit_basis {
    quad_field field;
    std::vector<place> s; // archimedean places first
    std::vector<field_element> units;
    std::map<place, field_element> generators;
};

s_unit_basis make_s_unit_basis(const quad_field& K, const std::vector<std::int64_t>& primes);

// x = torsion · prod units[i]^unit_exponents[i] · prod beta_w^generator_exponents[w],
// verified by exact reconstruction.
struct sunit_decomposition {
    field_element torsion;
    std::vector<big_int> unit_exponents;
    std::map<place, big_int> generator_exponents;
};

sunit_decomposition sunit_decompose(const field_element& x, const s_unit_basis& basis);

// Bounded-denominator rationality check of the two K-rationality
// conditions on a value assignment y: (i) the entries of A·y_arch are
// rational; (ii) for each non-archimedean place, y_w log||beta_w||_w plus
// the archimedean part of Phi(beta_w) is rational. Every verdict is
// relative to (prime_bound, max_den, tol), which the report surfaces.
struct krational_quantity {
    std::string label;
    double value = 0.0;
    std::optional<rational> detected;
    bool pass = false;
};

struct krational_report {
    std::vector<krational_quantity> quantities;
    bool all_pass = true;
    std::int64_t prime_bound = 0;
    big_int max_den;
    double tol = 0.0;
    std::string verdict;
};

krational_report krational_check(const quad_field& K, const std::map<place, double>& y,
                                 std::int64_t prime_bound, const big_int& max_den, double tol);

// The worked map on Q(sqrt(2)): archimedean values ±1/log(1+sqrt(2)), zero
// at inert and ramified places, and the generator-log rule at split
// places. Emits one table row per split prime (plus the archimedean row)
// and records the antisymmetry and c(Q,p)=0 checks.
struct sqrt2_row {
    place v;                            // the place carrying the row's value
    std::optional<field_element> beta;  // generator; absent on the arch row
    double c_value = 0.0;
    std::string note;                   // empty except for specially cross-checked rows
};

struct sqrt2_result {
    consistent_map map;
    std::vector<sqrt2_row> rows;
    double antisymmetry_max = 0.0; // max |y_w + y_wbar| over split pairs
    double max_cq = 0.0;           // max |c(Q,q)| over q <= bound and inf
    bool verified = false;
};

sqrt2_result sqrt2_example(std::int64_t prime_bound);

} // namespace cmap
