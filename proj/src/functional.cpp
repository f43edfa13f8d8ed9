#include "cmap/functional.hpp"

#include "cmap/errors.hpp"
#include "cmap/factor.hpp"
#include "cmap/phi.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace cmap {

regulator_system make_regulator_system(const quad_field& K) {
    if (!K.is_real())
        throw not_real_field_error("regulator systems require a real quadratic field");
    regulator_system sys;
    sys.field = K;
    const field_element eps = fundamental_unit(K);
    sys.units = {eps};
    sys.matrix_a = {std::log(std::abs(embed(eps, 1))), std::log(std::abs(embed(eps, 2)))};
    sys.lambda_vector = {rational(1, 2), rational(1, 2)};
    sys.regulator = std::abs(sys.matrix_a[0]);
    return sys;
}

std::array<double, 2> solve_arch_y(const regulator_system& sys, const functional_spec& fs) {
    const double b = fs.unit_targets.empty() ? 0.0 : fs.unit_targets[0];
    // Rows: A·y = b and (1,1)·y = r; det = a0 - a1 = 2·log eps.
    const double det = sys.matrix_a[0] - sys.matrix_a[1];
    if (std::abs(det) < 1e-14)
        throw singular_system_error("degenerate unit-log matrix");
    const double y1 = fs.r / 2.0 + b / det;
    return {y1, fs.r - y1};
}

double nonarch_y(const std::vector<double>& arch_y, const field_element& beta,
                 const place& w, double target) {
    const quad_field& K = beta.field;
    double num = target;
    for (std::size_t i = 0; i < arch_y.size(); ++i)
        num -= arch_y[i] * log_abs(beta, arch_place(K, static_cast<int>(i) + 1)).to_double();
    const log_abs_value den = log_abs(beta, w);
    if (!den.nonarch_exponent || *den.nonarch_exponent == 0)
        throw zero_denominator_error("beta has no valuation at the target place");
    return num / den.to_double();
}

consistent_map build_map_from_functional(const quad_field& K, const functional_spec& fs,
                                         std::int64_t prime_bound) {
    std::vector<double> arch_y;
    if (K.is_real()) {
        const std::array<double, 2> y = solve_arch_y(make_regulator_system(K), fs);
        arch_y = {y[0], y[1]};
    } else {
        if (!fs.unit_targets.empty())
            throw cmap_error("imaginary quadratic fields have no unit targets");
        arch_y = {fs.r};
    }
    std::vector<local_value> arch_values;
    for (const double y : arch_y)
        arch_values.push_back(local_value::floating(y));
    explicit_rule ex;
    for (const std::int32_t p : small_primes()) {
        if (p > prime_bound)
            break;
        for (const place& w : places_above_prime(K, p)) {
            const field_element beta = ideal_generator_search(K, w);
            const auto it = fs.generator_targets.find(w);
            const double target = it == fs.generator_targets.end() ? 0.0 : it->second;
            ex.values[w] = local_value::floating(nonarch_y(arch_y, beta, w, target));
        }
    }
    std::vector<rule_term> rules;
    rules.push_back({scalar::of(rational(1)), std::move(ex)});
    return make_map(K, std::move(arch_values), std::move(rules), lambda_scalar::of(rational(0)));
}

s_unit_basis make_s_unit_basis(const quad_field& K, const std::vector<std::int64_t>& primes) {
    s_unit_basis basis;
    basis.field = K;
    for (int i = 1; i <= (K.is_real() ? 2 : 1); ++i)
        basis.s.push_back(arch_place(K, i));
    std::set<std::int64_t> seen;
    for (const std::int64_t p : primes) {
        if (!seen.insert(p).second)
            continue;
        for (const place& w : places_above_prime(K, p)) {
            basis.s.push_back(w);
            basis.generators.emplace(w, ideal_generator_search(K, w));
        }
    }
    if (K.is_real())
        basis.units = {fundamental_unit(K)};
    return basis;
}

namespace {

std::int64_t to_small_int(const big_int& n, const char* what) {
    if (n > 1000000 || n < -1000000)
        throw cmap_error(std::string(what) + " exponent out of range");
    return n.convert_to<std::int64_t>();
}

bool is_torsion(const field_element& x, const quad_field& K) {
    for (const field_element& t : torsion_units(K))
        if (x == t)
            return true;
    return false;
}

} // namespace

sunit_decomposition sunit_decompose(const field_element& x, const s_unit_basis& basis) {
    if (x.is_zero())
        throw zero_element_error("cannot decompose zero");
    if (!(x.field == basis.field))
        throw cmap_error("element does not belong to the basis field");
    const quad_field& K = basis.field;

    // S-unit membership: the support of x must lie inside S.
    for (const auto& [p, m] : factorize(norm(x))) {
        (void)m;
        for (const place& w : places_above_prime(K, p))
            if (valuation(x, w) != 0 &&
                std::find(basis.s.begin(), basis.s.end(), w) == basis.s.end())
                throw not_s_unit_error("nonzero valuation at " + w.to_string() +
                                       ", which is outside S");
    }

    sunit_decomposition out;
    field_element gamma = x;
    for (const auto& [w, beta] : basis.generators) {
        const rational s = valuation(x, w) / valuation(beta, w);
        if (!is_integer(s))
            throw non_integral_exponent_error("non-integral exponent at " + w.to_string());
        const big_int sw = numer(s);
        out.generator_exponents[w] = sw;
        if (sw != 0)
            gamma = gamma * pow(beta, -to_small_int(sw, "generator"));
    }

    // gamma is now a unit; peel off the fundamental-unit power by log size,
    // then confirm the leftover is torsion.
    field_element eta = gamma;
    if (!basis.units.empty()) {
        const field_element& eps = basis.units[0];
        const double L = std::log(std::abs(embed(eps, 1)));
        const double guess = std::log(std::abs(embed(gamma, 1))) / L;
        big_int r = 0;
        bool found = false;
        for (const std::int64_t cand : {std::llround(guess), std::llround(guess) - 1,
                                        std::llround(guess) + 1}) {
            const field_element candidate = gamma * pow(eps, -cand);
            if (is_torsion(candidate, K)) {
                r = cand;
                eta = candidate;
                found = true;
                break;
            }
        }
        if (!found)
            throw cmap_error("unit part did not reduce to torsion");
        out.unit_exponents = {r};
    } else if (!is_torsion(eta, K)) {
        throw cmap_error("unit part did not reduce to torsion");
    }
    out.torsion = eta;

    // Exact reconstruction is the correctness certificate.
    field_element rebuilt = out.torsion;
    for (std::size_t i = 0; i < basis.units.size(); ++i)
        rebuilt = rebuilt * pow(basis.units[i], to_small_int(out.unit_exponents[i], "unit"));
    for (const auto& [w, sw] : out.generator_exponents)
        if (sw != 0)
            rebuilt = rebuilt * pow(basis.generators.at(w), to_small_int(sw, "generator"));
    if (!(rebuilt == x))
        throw cmap_error("decomposition failed exact reconstruction");
    return out;
}

krational_report krational_check(const quad_field& K, const std::map<place, double>& y,
                                 std::int64_t prime_bound, const big_int& max_den, double tol) {
    krational_report report;
    report.prime_bound = prime_bound;
    report.max_den = max_den;
    report.tol = tol;

    std::vector<double> arch_y;
    for (int i = 1; i <= (K.is_real() ? 2 : 1); ++i) {
        const auto it = y.find(arch_place(K, i));
        if (it == y.end())
            throw cmap_error("y must be given at every archimedean place");
        arch_y.push_back(it->second);
    }

    auto add_quantity = [&](std::string label, double value) {
        krational_quantity q;
        q.label = std::move(label);
        q.value = value;
        q.detected = rational_detect(value, max_den, tol);
        q.pass = q.detected.has_value();
        if (!q.pass)
            report.all_pass = false;
        report.quantities.push_back(std::move(q));
    };

    if (K.is_real()) {
        const regulator_system sys = make_regulator_system(K);
        add_quantity("(i) A*y", sys.matrix_a[0] * arch_y[0] + sys.matrix_a[1] * arch_y[1]);
    }
    for (const std::int32_t p : small_primes()) {
        if (p > prime_bound)
            break;
        for (const place& w : places_above_prime(K, p)) {
            const field_element beta = ideal_generator_search(K, w);
            const auto it = y.find(w);
            const double yw = it == y.end() ? 0.0 : it->second;
            double value = yw * log_abs(beta, w).to_double();
            for (std::size_t i = 0; i < arch_y.size(); ++i)
                value += arch_y[i] *
                         log_abs(beta, arch_place(K, static_cast<int>(i) + 1)).to_double();
            add_quantity("(ii) " + w.to_string(), value);
        }
    }

    std::ostringstream verdict;
    if (report.all_pass) {
        verdict << "rationality holds at every tested quantity";
    } else {
        const auto first = std::find_if(report.quantities.begin(), report.quantities.end(),
                                        [](const krational_quantity& q) { return !q.pass; });
        verdict << "no rational of bounded denominator found for " << first->label;
    }
    verdict << " (primes <= " << prime_bound << ", max_den = " << max_den << ", tol = " << tol
            << "; a bounded check, not a proof)";
    report.verdict = verdict.str();
    return report;
}

namespace {

// Preference order shared with the generator search: positive norm first,
// then small positive a, then positive b, then small |b|.
bool better_generator(const field_element& x, const field_element& y) {
    const bool xpos = norm(x) > 0;
    const bool ypos = norm(y) > 0;
    if (xpos != ypos)
        return xpos;
    if (x.a != y.a)
        return x.a < y.a;
    const bool xb = x.b > 0;
    const bool yb = y.b > 0;
    if (xb != yb)
        return xb;
    return abs(x.b) < abs(y.b);
}

} // namespace

sqrt2_result sqrt2_example(std::int64_t prime_bound) {
    if (prime_bound < 7)
        throw cmap_error("the prime bound must be at least 7");
    const quad_field K = make_field(2);
    const double L = std::log(embed(fundamental_unit(K), 1));

    sqrt2_result result;
    std::vector<rule_term> rules;
    rules.push_back({scalar::of(rational(1)), named_rule::sqrt2_example});
    result.map = make_map(K,
                          {local_value::floating(1.0 / L), local_value::floating(-(1.0 / L))},
                          std::move(rules), lambda_scalar::of(rational(0)));

    sqrt2_row arch_row;
    arch_row.v = arch_place(K, 1);
    arch_row.c_value = 1.0 / L;
    result.rows.push_back(std::move(arch_row));

    result.verified = true;
    for (const std::int32_t p : small_primes()) {
        if (p > prime_bound)
            break;
        const double cq = std::abs(evaluate_at(result.map, q_prime_place(p)).to_double(p));
        result.max_cq = std::max(result.max_cq, cq);
        if (splitting_type(K, p) != splitting::split)
            continue;
        const std::vector<place> pair = places_above_prime(K, p);
        const double y1 = sqrt2_example_y(pair[0]);
        const double y2 = sqrt2_example_y(pair[1]);
        result.antisymmetry_max = std::max(result.antisymmetry_max, std::abs(y1 + y2));
        const field_element g1 = ideal_generator_search(K, pair[0]);
        const field_element g2 = ideal_generator_search(K, pair[1]);
        sqrt2_row row;
        if (better_generator(g1, g2)) {
            row.v = pair[0];
            row.beta = g1;
            row.c_value = y1;
        } else {
            row.v = pair[1];
            row.beta = g2;
            row.c_value = y2;
        }
        if (p == 23)
            row.note = "value cross-checked by direct high-precision evaluation";
        result.rows.push_back(std::move(row));
    }
    const double cinf = std::abs(evaluate_at(result.map, q_infinity()).to_double(0));
    result.max_cq = std::max(result.max_cq, cinf);
    if (result.antisymmetry_max > 1e-12 || result.max_cq > 1e-12)
        result.verified = false;
    return result;
}

} // namespace cmap
