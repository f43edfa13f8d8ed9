#include "cmap/phi.hpp"

#include "cmap/errors.hpp"
#include "cmap/factor.hpp"

#include <cmath>

namespace cmap {

namespace {

// c(v)·log||x||_v at a non-archimedean place, from the exact exponent form
// log||x||_v = r·log p. Plain coefficients yield log terms, over_logp
// coefficients cancel the log p and yield exact rationals.
log_linear_number nonarch_contribution(const local_value& coeff, const rational& r,
                                       std::int64_t p) {
    log_linear_number out;
    if (r == 0 || (coeff.is_exact() && coeff.is_zero()))
        return out;
    switch (coeff.kind) {
    case local_value::kind_t::plain:
        out.add_log_term(p, coeff.q * r);
        break;
    case local_value::kind_t::over_logp:
        out.rational_part = coeff.q * r;
        break;
    case local_value::kind_t::floating:
        out.float_part = coeff.x * to_double(r) * std::log(static_cast<double>(p));
        break;
    }
    return out;
}

// c(v)·log|x| at an archimedean place for a rational value x: log|x| is
// itself a Z-combination of log p, so exact coefficients stay exact.
log_linear_number arch_rational_contribution(const local_value& coeff, const rational& xval) {
    log_linear_number out;
    if (coeff.is_exact() && coeff.is_zero())
        return out;
    const auto exponents = factorize(xval); // signed prime exponents of |x|
    if (coeff.kind == local_value::kind_t::plain) {
        for (const auto& [p, m] : exponents)
            out.add_log_term(p, coeff.q * m);
        return out;
    }
    double logx = 0.0;
    for (const auto& [p, m] : exponents)
        logx += m * std::log(static_cast<double>(p));
    out.float_part = coeff.to_double(0) * logx;
    return out;
}

log_linear_number arch_float_contribution(const local_value& coeff, double logabs) {
    log_linear_number out;
    if (coeff.is_exact() && coeff.is_zero())
        return out;
    out.float_part = coeff.to_double(0) * logabs;
    return out;
}

void append_term(phi_result& res, const place& v, const local_value& coeff,
                 const log_abs_value& la, log_linear_number contribution) {
    res.value += contribution;
    res.terms.push_back({v, coeff, la, std::move(contribution)});
}

// Scale a finished exponent-1 result by t; guarantees the homogeneity
// phi(x^t) = t·phi(x) bitwise, float parts included.
phi_result scale_result(phi_result res, const rational& t) {
    if (t == 1)
        return res;
    const double td = to_double(t);
    res.value = res.value.scaled(t);
    for (phi_term& term : res.terms) {
        term.contribution = term.contribution.scaled(t);
        if (term.logabs.nonarch_exponent)
            *term.logabs.nonarch_exponent *= t;
        if (term.logabs.arch_value)
            *term.logabs.arch_value *= td;
    }
    return res;
}

phi_result phi_eval_1(const consistent_map& c, const field_element& x) {
    if (x.is_zero())
        throw zero_element_error("phi_eval of zero");
    const quad_field& K = x.field;
    phi_result res;
    for (int i = 1; i <= (K.is_real() ? 2 : 1); ++i) {
        const place v = arch_place(K, i);
        const local_value coeff = evaluate_at(c, v);
        const log_abs_value la = log_abs(x, v);
        log_linear_number contrib = x.is_rational()
            ? arch_rational_contribution(coeff, x.a)
            : arch_float_contribution(coeff, *la.arch_value);
        append_term(res, v, coeff, la, std::move(contrib));
    }
    for (const auto& [p, m] : factorize(norm(x))) {
        (void)m;
        for (const place& w : places_above_prime(K, p)) {
            const rational vp = valuation(x, w);
            if (vp == 0)
                continue;
            const local_value coeff = evaluate_at(c, w);
            const log_abs_value la = log_abs(x, w);
            append_term(res, w, coeff, la, nonarch_contribution(coeff, *la.nonarch_exponent, p));
        }
    }
    return res;
}

phi_result phi_eval_1_q(const consistent_map& c, const rational& x) {
    if (x == 0)
        throw zero_element_error("phi_eval of zero");
    phi_result res;
    const place inf = q_infinity();
    const local_value arch_coeff = evaluate_at(c, inf);
    const log_abs_value arch_la = log_abs_rational(x, inf);
    append_term(res, inf, arch_coeff, arch_la, arch_rational_contribution(arch_coeff, x));
    for (const auto& [p, m] : factorize(x)) {
        (void)m;
        const place v = q_prime_place(p);
        const local_value coeff = evaluate_at(c, v);
        const log_abs_value la = log_abs_rational(x, v);
        append_term(res, v, coeff, la, nonarch_contribution(coeff, *la.nonarch_exponent, p));
    }
    return res;
}

std::vector<place> tested_places(const quad_field& K, std::int64_t prime_bound) {
    std::vector<place> out;
    for (int i = 1; i <= (K.is_real() ? 2 : 1); ++i)
        out.push_back(arch_place(K, i));
    for (const std::int32_t p : small_primes()) {
        if (p > prime_bound)
            break;
        for (const place& w : places_above_prime(K, p))
            out.push_back(w);
    }
    return out;
}

} // namespace

phi_result phi_eval(const consistent_map& c, const field_element& x, const rational& exponent) {
    return scale_result(phi_eval_1(c, x), exponent);
}

phi_result phi_eval(const consistent_map& c, const rational& x, const rational& exponent) {
    return scale_result(phi_eval_1_q(c, x), exponent);
}

namespace {

product_formula_row pf_row_from(std::string name, const log_linear_number& value, double tol) {
    product_formula_row row;
    row.element = std::move(name);
    row.value = value;
    row.abs_value = std::abs(value.to_double());
    row.exact_zero = value.is_exact() && value == log_linear_number{};
    row.pass = row.exact_zero || row.abs_value <= tol;
    return row;
}

void pf_finish(product_formula_report& report) {
    for (const product_formula_row& row : report.rows) {
        report.max_abs = std::max(report.max_abs, row.abs_value);
        if (!row.pass)
            report.all_pass = false;
    }
}

} // namespace

product_formula_report product_formula_check(const std::vector<field_element>& samples,
                                             double tol) {
    const consistent_map lam = lambda_map();
    product_formula_report report;
    for (const field_element& x : samples)
        report.rows.push_back(pf_row_from(format_element(x), phi_eval(lam, x).value, tol));
    pf_finish(report);
    return report;
}

product_formula_report product_formula_check_q(const std::vector<rational>& samples,
                                               double tol) {
    const consistent_map lam = lambda_map();
    product_formula_report report;
    for (const rational& x : samples)
        report.rows.push_back(pf_row_from(format_rational(x), phi_eval(lam, x).value, tol));
    pf_finish(report);
    return report;
}

norm_compat_report norm_compatibility_check(const consistent_map& c,
                                            const std::vector<field_element>& samples,
                                            double tol) {
    if (c.base)
        throw cmap_error("norm compatibility applies to maps based at Q");
    norm_compat_report report;
    for (const field_element& x : samples) {
        norm_compat_row row;
        row.element = format_element(x);
        row.lhs = phi_eval(c, x).value;
        row.rhs = phi_eval(c, norm(x)).value.scaled(rational(1, 2));
        row.exact_equal = row.lhs.is_exact() && row.rhs.is_exact() && row.lhs == row.rhs;
        row.abs_diff = std::abs(row.lhs.to_double() - row.rhs.to_double());
        row.pass = row.exact_equal || row.abs_diff <= tol;
        report.max_abs_diff = std::max(report.max_abs_diff, row.abs_diff);
        if (!row.pass)
            report.all_pass = false;
        report.rows.push_back(std::move(row));
    }
    return report;
}

zero_phi_report zero_phi_classify(const consistent_map& c, const quad_field& K,
                                  std::int64_t prime_bound, double tol) {
    zero_phi_report report;
    std::vector<field_element> points;
    if (K.is_real())
        points.push_back(fundamental_unit(K));
    for (const std::int32_t p : small_primes()) {
        if (p > prime_bound)
            break;
        for (const place& w : places_above_prime(K, p)) {
            try {
                points.push_back(ideal_generator_search(K, w));
            } catch (const generator_not_found_error&) {
                // non-principal prime ideal; no generator to test
            }
        }
    }
    for (const field_element& x : points) {
        zero_phi_test t;
        t.element = format_element(x);
        const log_linear_number value = phi_eval(c, x).value;
        t.phi_abs = std::abs(value.to_double());
        t.exact_zero = value.is_exact() && value == log_linear_number{};
        report.max_phi_abs = std::max(report.max_phi_abs, t.phi_abs);
        report.tests.push_back(std::move(t));
    }
    report.phi_vanishes = report.max_phi_abs <= tol;
    report.arch_scalar = evaluate_at(c, q_infinity()).to_double(0);
    if (!report.phi_vanishes) {
        report.branch = "Phi does not vanish on the test points; the map is not a lambda multiple";
        return report;
    }
    report.lambda_multiple = true;
    for (const place& v : tested_places(K, prime_bound)) {
        zero_phi_place_row row;
        row.v = v;
        row.c_value = evaluate_at(c, v).to_double(v.is_nonarch() ? v.p : 0);
        row.lambda_v = to_double(lambda_value(v));
        row.expected = report.arch_scalar * row.lambda_v;
        row.abs_diff = std::abs(row.c_value - row.expected);
        row.pass = row.abs_diff <= tol;
        if (!row.pass)
            report.lambda_multiple = false;
        report.place_rows.push_back(std::move(row));
    }
    report.branch = report.lambda_multiple
        ? "Phi vanishes on the test points and c(K,v) = c(Q,inf)·lambda(K,v) at every tested place"
        : "Phi vanishes on the test points but c is not the expected lambda multiple";
    return report;
}

} // namespace cmap
