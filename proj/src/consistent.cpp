#include "cmap/consistent.hpp"

#include "cmap/errors.hpp"
#include "cmap/factor.hpp"

#include <cmath>
#include <sstream>

namespace cmap {

local_value local_value::plain(const rational& q) {
    local_value v;
    v.kind = kind_t::plain;
    v.q = q;
    return v;
}

local_value local_value::over_logp(const rational& q) {
    if (q == 0)
        return zero(); // a zero coefficient has no prime to remember
    local_value v;
    v.kind = kind_t::over_logp;
    v.q = q;
    return v;
}

local_value local_value::floating(double x) {
    local_value v;
    v.kind = kind_t::floating;
    v.x = x;
    return v;
}

bool local_value::is_zero() const {
    return kind == kind_t::floating ? x == 0.0 : q == 0;
}

double local_value::to_double(std::int64_t p) const {
    switch (kind) {
    case kind_t::plain:
        return cmap::to_double(q);
    case kind_t::over_logp:
        if (p < 2)
            throw cmap_error("over_logp value used without a residue prime");
        return cmap::to_double(q) / std::log(static_cast<double>(p));
    case kind_t::floating:
        return x;
    }
    return 0.0;
}

std::string local_value::to_string() const {
    switch (kind) {
    case kind_t::plain:
        return format_rational(q);
    case kind_t::over_logp:
        return format_rational(q) + "/log(p)";
    case kind_t::floating: {
        std::ostringstream out;
        out << x;
        return out.str();
    }
    }
    return "?";
}

local_value lv_add(const local_value& a, const local_value& b, std::int64_t p) {
    if (a.is_exact() && a.is_zero())
        return b;
    if (b.is_exact() && b.is_zero())
        return a;
    if (a.kind == b.kind) {
        switch (a.kind) {
        case local_value::kind_t::plain:
            return local_value::plain(a.q + b.q);
        case local_value::kind_t::over_logp:
            return local_value::over_logp(a.q + b.q);
        case local_value::kind_t::floating:
            return local_value::floating(a.x + b.x);
        }
    }
    return local_value::floating(a.to_double(p) + b.to_double(p));
}

local_value lv_scale(const local_value& a, const rational& t) {
    if (t == 0)
        return local_value::zero();
    switch (a.kind) {
    case local_value::kind_t::plain:
        return local_value::plain(a.q * t);
    case local_value::kind_t::over_logp:
        return local_value::over_logp(a.q * t);
    case local_value::kind_t::floating:
        return local_value::floating(a.x * to_double(t));
    }
    return local_value::zero();
}

local_value lv_scale_double(const local_value& a, double t, std::int64_t p) {
    if (a.is_exact() && a.is_zero())
        return local_value::zero();
    // A float scalar forces the float representation.  over_logp values need
    // the residue prime to become a float; callers at non-archimedean places
    // always have it, and archimedean values are never over_logp.
    if (a.kind == local_value::kind_t::over_logp) {
        if (p < 2)
            throw cmap_error("float-scaling an over_logp value needs a place context");
        return local_value::floating(a.to_double(p) * t);
    }
    if (a.kind == local_value::kind_t::plain)
        return local_value::floating(to_double(a.q) * t);
    return local_value::floating(a.x * t);
}

local_value lv_negate(const local_value& a) {
    return lv_scale(a, rational(-1));
}

bool lambda_scalar::is_zero() const {
    return kind == kind_t::floating ? x == 0.0 : q == 0;
}

double lambda_scalar::to_double() const {
    switch (kind) {
    case kind_t::exact:
        return cmap::to_double(q);
    case kind_t::over_logp:
        return cmap::to_double(q) / std::log(static_cast<double>(p));
    case kind_t::floating:
        return x;
    }
    return 0.0;
}

lambda_scalar ls_add(const lambda_scalar& a, const lambda_scalar& b) {
    if (a.is_zero() && a.kind != lambda_scalar::kind_t::floating)
        return b;
    if (b.is_zero() && b.kind != lambda_scalar::kind_t::floating)
        return a;
    if (a.kind == b.kind) {
        if (a.kind == lambda_scalar::kind_t::exact)
            return lambda_scalar::of(a.q + b.q);
        if (a.kind == lambda_scalar::kind_t::over_logp && a.p == b.p) {
            if (a.q + b.q == 0)
                return lambda_scalar::of(rational(0));
            return lambda_scalar::of_over_logp(a.q + b.q, a.p);
        }
        if (a.kind == lambda_scalar::kind_t::floating)
            return lambda_scalar::of_double(a.x + b.x);
    }
    return lambda_scalar::of_double(a.to_double() + b.to_double());
}

lambda_scalar ls_scale(const lambda_scalar& a, const scalar& t) {
    if (t.is_zero() && t.exact)
        return lambda_scalar::of(rational(0));
    if (t.exact) {
        switch (a.kind) {
        case lambda_scalar::kind_t::exact:
            return lambda_scalar::of(a.q * t.q);
        case lambda_scalar::kind_t::over_logp:
            return lambda_scalar::of_over_logp(a.q * t.q, a.p);
        case lambda_scalar::kind_t::floating:
            return lambda_scalar::of_double(a.x * t.to_double());
        }
    }
    return lambda_scalar::of_double(a.to_double() * t.to_double());
}

local_value ls_times_lambda(const lambda_scalar& c, const rational& lambda_v, std::int64_t p) {
    switch (c.kind) {
    case lambda_scalar::kind_t::exact:
        return local_value::plain(c.q * lambda_v);
    case lambda_scalar::kind_t::over_logp:
        if (p != 0 && p == c.p)
            return local_value::over_logp(c.q * lambda_v);
        return local_value::floating(c.to_double() * cmap::to_double(lambda_v));
    case lambda_scalar::kind_t::floating:
        if (c.x == 0.0)
            return local_value::zero();
        return local_value::floating(c.x * cmap::to_double(lambda_v));
    }
    return local_value::zero();
}

std::string named_rule_name(named_rule r) {
    switch (r) {
    case named_rule::log_ext: return "log";
    case named_rule::omega_ext: return "omega";
    case named_rule::psi_ext: return "psi";
    case named_rule::sqrt2_example: return "sqrt2_example";
    }
    return "?";
}

consistent_map make_map(const std::optional<quad_field>& base,
                        std::vector<local_value> arch_values,
                        std::vector<rule_term> rules,
                        const lambda_scalar& lambda_coeff) {
    consistent_map c;
    c.base = base;
    c.arch_values = std::move(arch_values);
    c.rules = std::move(rules);
    c.lambda_coeff = lambda_coeff;
    if (c.arch_values.size() != c.arch_count())
        throw incomplete_arch_values_error(
            "expected " + std::to_string(c.arch_count()) + " archimedean value(s), got " +
            std::to_string(c.arch_values.size()));
    for (const local_value& v : c.arch_values)
        if (v.kind == local_value::kind_t::over_logp)
            throw cmap_error("over_logp values are non-archimedean only");
    for (const rule_term& term : c.rules) {
        if (const named_rule* nr = std::get_if<named_rule>(&term.body)) {
            if (*nr == named_rule::sqrt2_example) {
                if (!base || base->d != 2)
                    throw cmap_error("the sqrt2_example rule lives on base Q(sqrt(2))");
            } else if (base) {
                throw cmap_error("the " + named_rule_name(*nr) + " rule lives on base Q");
            }
        } else {
            const explicit_rule& ex = std::get<explicit_rule>(term.body);
            for (const auto& [w, value] : ex.values) {
                if (!w.is_nonarch())
                    throw cmap_error("explicit rule keys must be non-archimedean places");
                const bool q_key = w.kind == place::kind_t::rational_prime;
                if (base ? q_key || !(*w.field == *base) : !q_key)
                    throw cmap_error("explicit rule key " + w.to_string() +
                                     " does not belong to the base field");
                (void)value;
            }
        }
    }
    return c;
}

consistent_map lambda_map(const scalar& r) {
    const lambda_scalar coeff =
        r.exact ? lambda_scalar::of(r.q) : lambda_scalar::of_double(r.x);
    return make_map(std::nullopt, {local_value::zero()}, {}, coeff);
}

rational lambda_value(const place& v) {
    if (!v.field)
        return rational(1);
    return rational(v.local_degree(), 2);
}

double sqrt2_example_y(const place& w) {
    if (!w.field || w.field->d != 2 || !w.is_nonarch() ||
        w.kind == place::kind_t::rational_prime)
        throw cmap_error("sqrt2_example_y expects a non-archimedean place of Q(sqrt(2))");
    if (w.split_type != splitting::split)
        return 0.0;
    const quad_field K = *w.field;
    const field_element beta = ideal_generator_search(K, w);
    const double l1 = std::log(std::abs(embed(beta, 1)));
    const double l2 = std::log(std::abs(embed(beta, 2)));
    const double L = std::log(embed(fundamental_unit(K), 1));
    return (l1 - l2) / (std::log(static_cast<double>(w.p)) * L);
}

namespace {

// Value of the rule stack of a base-Q map at the finite place p of Q.
local_value base_q_rule_value(const consistent_map& c, std::int64_t p) {
    local_value acc = local_value::zero();
    for (const rule_term& term : c.rules) {
        local_value v = local_value::zero();
        if (const named_rule* nr = std::get_if<named_rule>(&term.body)) {
            switch (*nr) {
            case named_rule::log_ext:
                v = local_value::plain(rational(-1));
                break;
            case named_rule::omega_ext:
                v = local_value::over_logp(rational(-1));
                break;
            case named_rule::psi_ext:
                v = local_value::over_logp(rational(-p));
                break;
            case named_rule::sqrt2_example:
                throw cmap_error("sqrt2_example rule on base Q (internal)");
            }
        } else {
            const explicit_rule& ex = std::get<explicit_rule>(term.body);
            const auto it = ex.values.find(q_prime_place(p));
            if (it != ex.values.end())
                v = it->second;
        }
        v = term.coeff.exact ? lv_scale(v, term.coeff.q) : lv_scale_double(v, term.coeff.x, p);
        acc = lv_add(acc, v, p);
    }
    return acc;
}

// Value of the rule stack of a base-K map at a non-archimedean place of K.
local_value base_k_rule_value(const consistent_map& c, const place& w) {
    local_value acc = local_value::zero();
    for (const rule_term& term : c.rules) {
        local_value v = local_value::zero();
        if (const named_rule* nr = std::get_if<named_rule>(&term.body)) {
            if (*nr != named_rule::sqrt2_example)
                throw cmap_error("base-Q rule on a quadratic base (internal)");
            v = local_value::floating(sqrt2_example_y(w));
        } else {
            const explicit_rule& ex = std::get<explicit_rule>(term.body);
            const auto it = ex.values.find(w);
            if (it != ex.values.end())
                v = it->second;
        }
        v = term.coeff.exact ? lv_scale(v, term.coeff.q) : lv_scale_double(v, term.coeff.x, w.p);
        acc = lv_add(acc, v, w.p);
    }
    return acc;
}

// Full value of a base-Q map at a place of Q, lambda part included.
local_value base_q_value_at_q(const consistent_map& c, const place& q) {
    if (q.kind == place::kind_t::rational_infinity) {
        const local_value lam = ls_times_lambda(c.lambda_coeff, rational(1), 0);
        return lv_add(c.arch_values[0], lam, 0);
    }
    const local_value stored = base_q_rule_value(c, q.p);
    const local_value lam = ls_times_lambda(c.lambda_coeff, rational(1), q.p);
    return lv_add(stored, lam, q.p);
}

} // namespace

local_value evaluate_at(const consistent_map& c, const place& v) {
    if (!c.base) {
        if (!v.field)
            return base_q_value_at_q(c, v);
        // Canonical extension (DF): c(K,w) = ([K_w : Q_q]/2) * c(Q,q).
        const rational t(v.local_degree(), 2);
        return lv_scale(base_q_value_at_q(c, place_below(v)), t);
    }
    const quad_field& K = *c.base;
    if (v.field) {
        if (!(*v.field == K))
            throw unsupported_field_pair_error(
                "map based at Q(sqrt(" + std::to_string(K.d) + ")) evaluated at a place of " +
                "Q(sqrt(" + std::to_string(v.field->d) + "))");
        if (v.is_arch()) {
            const local_value stored = c.arch_values[static_cast<std::size_t>(v.index - 1)];
            const local_value lam = ls_times_lambda(c.lambda_coeff, lambda_value(v), 0);
            return lv_add(stored, lam, 0);
        }
        const local_value stored = base_k_rule_value(c, v);
        const local_value lam = ls_times_lambda(c.lambda_coeff, lambda_value(v), v.p);
        return lv_add(stored, lam, v.p);
    }
    // Consistency pushdown: c(Q,q) = sum over w|q of c(K,w).
    local_value acc = local_value::zero();
    const std::int64_t ctx = v.kind == place::kind_t::rational_prime ? v.p : 0;
    for (const place& w : places_above(K, v))
        acc = lv_add(acc, evaluate_at(c, w), ctx);
    return acc;
}

consistent_map normalize_to_Jq(const consistent_map& c, const place& q) {
    const local_value v0 = evaluate_at(c, q);
    const rational lam = lambda_value(q);
    lambda_scalar shift;
    switch (v0.kind) {
    case local_value::kind_t::plain:
        shift = lambda_scalar::of(-v0.q / lam);
        break;
    case local_value::kind_t::over_logp:
        shift = lambda_scalar::of_over_logp(-v0.q / lam, q.p);
        break;
    case local_value::kind_t::floating:
        shift = lambda_scalar::of_double(-v0.x / to_double(lam));
        break;
    }
    consistent_map d = c;
    d.lambda_coeff = ls_add(d.lambda_coeff, shift);
    return d;
}

consistent_map map_add(const consistent_map& a, const consistent_map& b) {
    if (!(a.base == b.base))
        throw cmap_error("map addition requires identical base fields");
    consistent_map out = a;
    for (std::size_t i = 0; i < out.arch_values.size(); ++i)
        out.arch_values[i] = lv_add(out.arch_values[i], b.arch_values[i], 0);
    out.rules.insert(out.rules.end(), b.rules.begin(), b.rules.end());
    out.lambda_coeff = ls_add(a.lambda_coeff, b.lambda_coeff);
    return out;
}

consistent_map map_scale(const consistent_map& a, const scalar& t) {
    consistent_map out = a;
    for (local_value& v : out.arch_values)
        v = t.exact ? lv_scale(v, t.q) : lv_scale_double(v, t.x, 0);
    for (rule_term& term : out.rules) {
        if (term.coeff.exact && t.exact)
            term.coeff = scalar::of(term.coeff.q * t.q);
        else
            term.coeff = scalar::of_double(term.coeff.to_double() * t.to_double());
    }
    out.lambda_coeff = ls_scale(a.lambda_coeff, t);
    return out;
}

consistency_report check_consistency_suite(const consistent_map& c, const quad_field& K,
                                           std::int64_t prime_bound, double tol) {
    consistency_report report;
    std::vector<place> below;
    below.push_back(q_infinity());
    for (const std::int32_t p : small_primes()) {
        if (p > prime_bound)
            break;
        below.push_back(q_prime_place(p));
    }
    for (const place& q : below) {
        consistency_row row;
        row.below = q;
        row.lhs = evaluate_at(c, q);
        const std::int64_t ctx = q.kind == place::kind_t::rational_prime ? q.p : 0;
        local_value sum = local_value::zero();
        for (const place& w : places_above(K, q))
            sum = lv_add(sum, evaluate_at(c, w), ctx);
        row.rhs_sum = sum;
        row.exact_match = row.lhs.is_exact() && sum.is_exact() && row.lhs == sum;
        row.abs_diff = std::abs(row.lhs.to_double(ctx) - sum.to_double(ctx));
        row.pass = row.exact_match || row.abs_diff <= tol;
        report.max_abs_diff = std::max(report.max_abs_diff, row.abs_diff);
        if (!row.pass)
            report.all_pass = false;
        report.rows.push_back(std::move(row));
    }
    return report;
}

} // namespace cmap
