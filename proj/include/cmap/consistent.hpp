#pragma once

#include "cmap/places.hpp"
#include "cmap/quadfield.hpp"
#include "cmap/rational.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace cmap {

// One value c(K,v): an exact rational, an exact rational over log(p_v)
// (non-archimedean places only), or a float.
struct local_value {
    enum class kind_t { plain, over_logp, floating };

    kind_t kind = kind_t::plain;
    rational q{0};
    double x = 0.0;

    static local_value plain(const rational& q);
    static local_value over_logp(const rational& q);
    static local_value floating(double x);
    static local_value zero() { return plain(rational(0)); }

    bool is_exact() const { return kind != kind_t::floating; }
    bool is_zero() const;

    // p gives meaning to over_logp values; pass 0 at archimedean places
    // (where over_logp must not occur).
    double to_double(std::int64_t p) const;

    std::string to_string() const;
    bool operator==(const local_value&) const = default;
};

// Addition at a single place: exact when the kinds agree (or one side is an
// exact zero), collapsing to float otherwise. p is the residue prime of the
// place, 0 for archimedean.
local_value lv_add(const local_value& a, const local_value& b, std::int64_t p);
local_value lv_scale(const local_value& a, const rational& t);
local_value lv_scale_double(const local_value& a, double t, std::int64_t p);
local_value lv_negate(const local_value& a);

// An exact-or-float scalar (rule coefficients, target values).
struct scalar {
    bool exact = true;
    rational q{0};
    double x = 0.0;

    static scalar of(const rational& q) { return {true, q, 0.0}; }
    static scalar of_double(double x) { return {false, rational(0), x}; }
    double to_double() const { return exact ? cmap::to_double(q) : x; }
    bool is_zero() const { return exact ? q == 0 : x == 0.0; }
    bool operator==(const scalar&) const = default;
};

// Coefficient of lambda in a map. Keeping the over-log form (anchored at an
// explicit prime) lets the J_q normalization cancel exactly against
// OverLogP-ruled maps.
struct lambda_scalar {
    enum class kind_t { exact, over_logp, floating };

    kind_t kind = kind_t::exact;
    rational q{0};
    std::int64_t p = 0; // anchor prime, over_logp only
    double x = 0.0;

    static lambda_scalar of(const rational& q) { return {kind_t::exact, q, 0, 0.0}; }
    static lambda_scalar of_double(double x) { return {kind_t::floating, rational(0), 0, x}; }
    static lambda_scalar of_over_logp(const rational& q, std::int64_t p) {
        return {kind_t::over_logp, q, p, 0.0};
    }

    bool is_zero() const;
    double to_double() const;
    bool operator==(const lambda_scalar&) const = default;
};

lambda_scalar ls_add(const lambda_scalar& a, const lambda_scalar& b);
lambda_scalar ls_scale(const lambda_scalar& a, const scalar& t);

// lambda_coeff * lambda(v) as a local value at a place over prime p (0 for
// archimedean): exact whenever representable at that place.
local_value ls_times_lambda(const lambda_scalar& c, const rational& lambda_v, std::int64_t p);

enum class named_rule { log_ext, omega_ext, psi_ext, sqrt2_example };

std::string named_rule_name(named_rule r);

// Finite-support values on non-archimedean places of the base field;
// everything unlisted is zero.
struct explicit_rule {
    std::map<place, local_value> values;

    bool operator==(const explicit_rule&) const = default;
};

// One term coeff * rule of a map's non-archimedean part.
struct rule_term {
    scalar coeff = scalar::of(rational(1));
    std::variant<named_rule, explicit_rule> body;

    bool operator==(const rule_term&) const = default;
};

// A consistent map stored intensionally: base field (Q when absent),
// archimedean values, non-archimedean rule terms (empty = zero rule), plus
// lambda_coeff * lambda. Values at other fields follow the canonical
// extension / consistency equations.
struct consistent_map {
    std::optional<quad_field> base;
    std::vector<local_value> arch_values;
    std::vector<rule_term> rules;
    lambda_scalar lambda_coeff = lambda_scalar::of(rational(0));

    std::size_t arch_count() const { return base && base->is_real() ? 2 : 1; }
    bool operator==(const consistent_map&) const = default;
};

// Validating constructor: arch value count must match the base field, named
// rules must sit on their home base (log/omega/psi on Q, sqrt2_example on
// Q(sqrt(2))), explicit keys must be non-archimedean places of the base.
consistent_map make_map(const std::optional<quad_field>& base,
                        std::vector<local_value> arch_values,
                        std::vector<rule_term> rules,
                        const lambda_scalar& lambda_coeff);

// lambda itself (base Q, lambda_coeff = r).
consistent_map lambda_map(const scalar& r = scalar::of(rational(1)));

// lambda(K_v, v) = [K_v : Q_v] / [K : Q].
rational lambda_value(const place& v);

// c(field of v, v). Base-Q maps extend canonically to any quadratic field;
// base-K maps push down to Q by summation; two distinct quadratic fields
// are unsupported.
local_value evaluate_at(const consistent_map& c, const place& v);

// The worked-example value at a non-archimedean place of Q(sqrt(2)): zero
// unless the place splits, else the generator's log-ratio scaled by
// 1/(log p · log(1+sqrt(2))).
double sqrt2_example_y(const place& w);

// d = c - (c(F,q)/lambda(F,q)) * lambda, so evaluate_at(d, q) == 0; exact
// when the value at q is exact.
consistent_map normalize_to_Jq(const consistent_map& c, const place& q);

consistent_map map_add(const consistent_map& a, const consistent_map& b);
consistent_map map_scale(const consistent_map& a, const scalar& t);

// Eq-by-eq check of c(Q,q) = sum over w|q of c(K,w) for q = infinity and
// primes q <= prime_bound.
struct consistency_row {
    place below;
    local_value lhs;
    local_value rhs_sum;
    double abs_diff = 0.0;
    bool exact_match = false;
    bool pass = false;
};

struct consistency_report {
    std::vector<consistency_row> rows;
    bool all_pass = true;
    double max_abs_diff = 0.0;
};

consistency_report check_consistency_suite(const consistent_map& c, const quad_field& K,
                                           std::int64_t prime_bound, double tol = 1e-12);

} // namespace cmap
