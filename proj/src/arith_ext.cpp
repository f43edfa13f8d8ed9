#include "cmap/arith_ext.hpp"

#include "cmap/errors.hpp"
#include "cmap/factor.hpp"
#include "cmap/places.hpp"

#include <algorithm>
#include <cmath>

namespace cmap {

additive_kind parse_additive_kind(const std::string& name) {
    if (name == "log")
        return additive_kind::log_ext;
    if (name == "omega")
        return additive_kind::omega_ext;
    if (name == "psi")
        return additive_kind::psi_ext;
    throw parse_error("unknown additive function '" + name + "' (expected log, omega or psi)");
}

std::string additive_kind_name(additive_kind kind) {
    switch (kind) {
    case additive_kind::log_ext: return "log";
    case additive_kind::omega_ext: return "omega";
    case additive_kind::psi_ext: return "psi";
    }
    return "?";
}

rational omega(const rational& n) {
    if (n == 0)
        throw zero_argument_error("omega(0) is undefined");
    rational total = 0;
    for (const auto& [p, m] : factorize(n)) {
        (void)p;
        total += m;
    }
    return total;
}

rational psi(const rational& n) {
    if (n == 0)
        throw zero_argument_error("psi(0) is undefined");
    rational total = 0;
    for (const auto& [p, m] : factorize(n))
        total += rational(p) * m;
    return total;
}

consistent_map build_extension(additive_kind kind) {
    named_rule rule = named_rule::log_ext;
    switch (kind) {
    case additive_kind::log_ext: rule = named_rule::log_ext; break;
    case additive_kind::omega_ext: rule = named_rule::omega_ext; break;
    case additive_kind::psi_ext: rule = named_rule::psi_ext; break;
    }
    std::vector<rule_term> rules;
    rules.push_back({scalar::of(rational(1)), rule});
    return make_map(std::nullopt, {local_value::zero()}, std::move(rules),
                    lambda_scalar::of(rational(0)));
}

continuity_report continuity_diagnostic(const consistent_map& c, std::int64_t prime_bound,
                                        const std::vector<quad_field>& sample_fields) {
    continuity_report report;
    std::vector<place> sites;
    sites.push_back(q_infinity());
    for (const quad_field& K : sample_fields)
        for (int i = 1; i <= (K.is_real() ? 2 : 1); ++i)
            sites.push_back(arch_place(K, i));
    for (const std::int32_t p : small_primes()) {
        if (p > prime_bound)
            break;
        sites.push_back(q_prime_place(p));
        for (const quad_field& K : sample_fields)
            for (const place& w : places_above_prime(K, p))
                sites.push_back(w);
    }
    std::sort(sites.begin(), sites.end());
    for (const place& v : sites) {
        continuity_row row;
        row.v = v;
        const double cv = evaluate_at(c, v).to_double(v.is_nonarch() ? v.p : 0);
        row.ratio = std::abs(cv / to_double(lambda_value(v)));
        if (row.ratio > report.max_ratio) {
            report.max_ratio = row.ratio;
            report.max_location = v;
        }
        report.rows.push_back(row);
    }
    // Compare the ratio over the places of Q at the last few sampled primes;
    // a strictly climbing tail signals an unbounded family.
    std::vector<double> q_tail;
    for (const continuity_row& row : report.rows)
        if (row.v.kind == place::kind_t::rational_prime)
            q_tail.push_back(row.ratio);
    const std::size_t n = q_tail.size();
    if (n >= 3)
        report.increasing_tail = q_tail[n - 1] > q_tail[n - 2] && q_tail[n - 2] > q_tail[n - 3];
    return report;
}

} // namespace cmap
