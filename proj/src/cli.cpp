#include "cmap/cli.hpp"

#include "cmap/arith_ext.hpp"
#include "cmap/consistent.hpp"
#include "cmap/errors.hpp"
#include "cmap/factor.hpp"
#include "cmap/functional.hpp"
#include "cmap/json_io.hpp"
#include "cmap/phi.hpp"
#include "cmap/places.hpp"
#include "cmap/quadfield.hpp"

#include "CLI11.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

namespace cmap {

namespace {

struct cli_config {
    double tol = 1e-9;
    std::string max_den_text = "1000000";
    std::string format = "plain";

    big_int max_den() const {
        big_int m;
        try {
            m = big_int(max_den_text);
        } catch (const std::exception&) {
            throw parse_error("--max-den must be an integer");
        }
        if (m < 2)
            throw parse_error("--max-den must be at least 2");
        return m;
    }
};

std::string fmt_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    return buf;
}

std::string read_source(const std::string& path, std::istream& in) {
    if (path == "-") {
        std::ostringstream body;
        body << in.rdbuf();
        return body.str();
    }
    std::ifstream file(path);
    if (!file)
        throw cmap_error("cannot open " + path);
    std::ostringstream body;
    body << file.rdbuf();
    return body.str();
}

json parse_json_source(const std::string& path, std::istream& in) {
    try {
        return json::parse(read_source(path, in));
    } catch (const json::parse_error& e) {
        throw parse_error(std::string("invalid JSON: ") + e.what());
    }
}

void require_prime(std::int64_t p) {
    if (p < 2 || !is_small_prime(p))
        throw cmap_error("p must be a prime up to 10^6");
}

// ---- field-info ----------------------------------------------------------

int cmd_field_info(std::int64_t d, const cli_config& cfg, std::ostream& out) {
    const quad_field K = make_field(d);
    const bool real = K.is_real();
    std::string basis = K.d_is_1_mod_4() ? "1, (1+sqrt(d))/2" : "1, sqrt(d)";
    std::optional<field_element> unit;
    if (real)
        unit = fundamental_unit(K);
    const std::size_t torsion = torsion_units(K).size();
    if (cfg.format == "json") {
        json j;
        j["d"] = K.d;
        j["discriminant"] = K.discriminant;
        j["signature"] = real ? "real" : "imaginary";
        j["integral_basis"] = basis;
        j["torsion_order"] = torsion;
        if (unit) {
            j["fundamental_unit"] = format_element(*unit);
            j["regulator"] = std::log(embed(*unit, 1));
        }
        out << j.dump(2) << "\n";
        return 0;
    }
    out << "d=" << K.d << "\n";
    out << "discriminant=" << K.discriminant << "\n";
    out << "signature=" << (real ? "real" : "imaginary") << "\n";
    out << "integral_basis=" << basis << "\n";
    out << "torsion_order=" << torsion << "\n";
    if (unit) {
        out << "fundamental_unit=" << format_element(*unit) << "\n";
        out << "regulator=" << fmt_double(std::log(embed(*unit, 1))) << "\n";
    }
    return 0;
}

// ---- split ---------------------------------------------------------------

int cmd_split(std::int64_t d, std::int64_t p, const cli_config& cfg, std::ostream& out) {
    const quad_field K = make_field(d);
    require_prime(p);
    const splitting s = splitting_type(K, p);
    const std::vector<place> above = places_above_prime(K, p);
    if (cfg.format == "json") {
        json j;
        j["d"] = d;
        j["p"] = p;
        j["type"] = splitting_name(s);
        json rows = json::array();
        for (const place& w : above) {
            json row;
            row["place"] = w.to_string();
            row["local_degree"] = w.local_degree();
            row["e"] = w.ram_index();
            row["f"] = w.residue_degree();
            if (s == splitting::split)
                row["root"] = hensel_root(d, p, 1, w.index).convert_to<std::int64_t>();
            rows.push_back(std::move(row));
        }
        j["places"] = rows;
        out << j.dump(2) << "\n";
        return 0;
    }
    out << "d=" << d << "\n";
    out << "p=" << p << "\n";
    out << "type=" << splitting_name(s) << "\n";
    for (const place& w : above) {
        out << "place." << w.to_string() << ".local_degree=" << w.local_degree() << "\n";
        out << "place." << w.to_string() << ".e=" << w.ram_index() << "\n";
        out << "place." << w.to_string() << ".f=" << w.residue_degree() << "\n";
        if (s == splitting::split)
            out << "place." << w.to_string() << ".root=" << hensel_root(d, p, 1, w.index)
                << "\n";
    }
    return 0;
}

// ---- unit / generator ----------------------------------------------------

int cmd_unit(std::int64_t d, const cli_config& cfg, std::ostream& out) {
    const quad_field K = make_field(d);
    const field_element eps = fundamental_unit(K);
    if (cfg.format == "json") {
        json j;
        j["d"] = d;
        j["fundamental_unit"] = format_element(eps);
        j["norm"] = format_rational(norm(eps));
        out << j.dump(2) << "\n";
    } else {
        out << format_element(eps) << "\n";
    }
    return 0;
}

int cmd_generator(std::int64_t d, std::int64_t p, const cli_config& cfg, std::ostream& out) {
    const quad_field K = make_field(d);
    require_prime(p);
    const std::vector<place> above = places_above_prime(K, p);
    json rows = json::array();
    for (const place& w : above) {
        const field_element beta = ideal_generator_search(K, w);
        if (cfg.format == "json") {
            json row;
            row["place"] = w.to_string();
            row["beta"] = format_element(beta);
            row["norm"] = format_rational(norm(beta));
            rows.push_back(std::move(row));
        } else {
            out << "generator." << w.to_string() << "=" << format_element(beta) << "\n";
        }
    }
    if (cfg.format == "json")
        out << rows.dump(2) << "\n";
    return 0;
}

// ---- eval-phi / extend / extend-eval -------------------------------------

phi_result eval_alpha(const consistent_map& c, const std::string& alpha, const rational& pw) {
    const parsed_element parsed = parse_element(alpha);
    if (parsed.d) {
        const quad_field K = make_field(*parsed.d);
        return phi_eval(c, make_element(K, parsed.a, parsed.b), pw);
    }
    if (c.base) // rational alpha against a quadratic-based map: embed it
        return phi_eval(c, from_rational(*c.base, parsed.a), pw);
    return phi_eval(c, parsed.a, pw);
}

int print_phi(const phi_result& r, const cli_config& cfg, std::ostream& out) {
    if (cfg.format == "json") {
        out << phi_to_json(r).dump(2) << "\n";
        return 0;
    }
    out << "value_exact=" << (r.value.is_exact() ? r.value.to_string() : "none") << "\n";
    out << "value_float=" << fmt_double(r.value.to_double()) << "\n";
    return 0;
}

int cmd_eval_phi(const std::string& map_path, const std::string& alpha, const std::string& pw,
                 const cli_config& cfg, std::ostream& out, std::istream& in) {
    const consistent_map c = map_from_json(parse_json_source(map_path, in));
    return print_phi(eval_alpha(c, alpha, parse_rational(pw)), cfg, out);
}

int cmd_extend(const std::string& kind, std::ostream& out) {
    out << map_to_json(build_extension(parse_additive_kind(kind))).dump(2) << "\n";
    return 0;
}

int cmd_extend_eval(const std::string& kind, const std::string& alpha, const std::string& pw,
                    const cli_config& cfg, std::ostream& out) {
    const consistent_map c = build_extension(parse_additive_kind(kind));
    return print_phi(eval_alpha(c, alpha, parse_rational(pw)), cfg, out);
}

// ---- check suites --------------------------------------------------------

std::vector<field_element> random_elements(const quad_field& K, int count, int coord_bound,
                                           unsigned seed) {
    std::mt19937 gen(seed);
    std::uniform_int_distribution<int> coord(-coord_bound, coord_bound);
    std::vector<field_element> out;
    while (out.size() < static_cast<std::size_t>(count)) {
        const field_element x = make_element(K, coord(gen), coord(gen));
        if (!x.is_zero())
            out.push_back(x);
    }
    return out;
}

int suite_product_formula(const quad_field& K, std::int64_t bound, const cli_config& cfg,
                          std::ostream& out) {
    (void)bound;
    std::vector<field_element> samples = random_elements(K, 100, 50, 20260822);
    if (K.is_real())
        samples.push_back(fundamental_unit(K));
    samples.push_back(from_rational(K, rational(7)));
    samples.push_back(from_rational(K, rational(-5, 3)));
    const product_formula_report report = product_formula_check(samples, cfg.tol);
    out << "suite=product-formula\n";
    out << "d=" << K.d << "\n";
    out << "samples=" << report.rows.size() << "\n";
    out << "max_abs=" << fmt_double(report.max_abs) << "\n";
    out << "pass=" << (report.all_pass ? "true" : "false") << "\n";
    if (!report.all_pass)
        for (const product_formula_row& row : report.rows)
            if (!row.pass) {
                out << "first_violation=" << row.element << "\n";
                break;
            }
    return report.all_pass ? 0 : 1;
}

int suite_consistency(const quad_field& K, std::int64_t bound, const cli_config& cfg,
                      std::ostream& out) {
    (void)cfg;
    out << "suite=consistency\n";
    out << "d=" << K.d << "\n";
    bool all = true;
    std::vector<std::pair<std::string, consistent_map>> maps;
    maps.emplace_back("lambda", lambda_map());
    maps.emplace_back("omega", build_extension(additive_kind::omega_ext));
    maps.emplace_back("psi", build_extension(additive_kind::psi_ext));
    maps.emplace_back("log", build_extension(additive_kind::log_ext));
    if (K.d == 2) {
        const double L = std::log(embed(fundamental_unit(K), 1));
        std::vector<rule_term> rules;
        rules.push_back({scalar::of(rational(1)), named_rule::sqrt2_example});
        maps.emplace_back("sqrt2_example",
                          make_map(K,
                                   {local_value::floating(1.0 / L),
                                    local_value::floating(-(1.0 / L))},
                                   std::move(rules), lambda_scalar::of(rational(0))));
    }
    for (const auto& [name, c] : maps) {
        const consistency_report report = check_consistency_suite(c, K, bound);
        out << "map." << name << ".max_abs_diff=" << fmt_double(report.max_abs_diff) << "\n";
        out << "map." << name << ".pass=" << (report.all_pass ? "true" : "false") << "\n";
        if (name == "sqrt2_example") {
            double max_cq = 0.0;
            for (const consistency_row& row : report.rows) {
                const std::int64_t p =
                    row.below.kind == place::kind_t::rational_prime ? row.below.p : 0;
                max_cq = std::max(max_cq, std::abs(row.lhs.to_double(p)));
            }
            out << "map.sqrt2_example.max_cq=" << fmt_double(max_cq) << "\n";
            if (max_cq > 1e-12)
                all = false;
        }
        if (!report.all_pass) {
            all = false;
            for (const consistency_row& row : report.rows)
                if (!row.pass) {
                    out << "first_violation=" << row.below.to_string() << "\n";
                    break;
                }
        }
    }
    out << "pass=" << (all ? "true" : "false") << "\n";
    return all ? 0 : 1;
}

int suite_kernel(const quad_field& K, std::int64_t bound, const cli_config& cfg,
                 std::ostream& out) {
    out << "suite=kernel\n";
    out << "d=" << K.d << "\n";
    bool all = true;
    const std::int64_t b = std::min<std::int64_t>(bound, 50);
    const std::vector<std::pair<std::string, consistent_map>> kernel_maps = {
        {"lambda", lambda_map()},
        {"2.5*lambda", lambda_map(scalar::of_double(2.5))},
        {"-2*lambda", lambda_map(scalar::of(rational(-2)))},
    };
    for (const auto& [name, c] : kernel_maps) {
        const zero_phi_report report = zero_phi_classify(c, K, b, cfg.tol);
        const bool ok = report.phi_vanishes && report.lambda_multiple;
        out << "map." << name << ".max_phi_abs=" << fmt_double(report.max_phi_abs) << "\n";
        out << "map." << name << ".kernel=" << (ok ? "true" : "false") << "\n";
        if (!ok)
            all = false;
    }
    const zero_phi_report omega_report =
        zero_phi_classify(build_extension(additive_kind::omega_ext), K, b, cfg.tol);
    out << "map.omega.kernel=" << (omega_report.phi_vanishes ? "true" : "false") << "\n";
    if (omega_report.phi_vanishes)
        all = false; // omega must NOT be in the kernel
    out << "pass=" << (all ? "true" : "false") << "\n";
    return all ? 0 : 1;
}

int suite_extensions(const quad_field& K, std::int64_t bound, const cli_config& cfg,
                     std::ostream& out) {
    (void)K;
    (void)cfg;
    out << "suite=extensions\n";
    const consistent_map om = build_extension(additive_kind::omega_ext);
    const consistent_map ps = build_extension(additive_kind::psi_ext);
    const consistent_map lg = build_extension(additive_kind::log_ext);
    bool all = true;
    const std::int64_t n_max = std::max<std::int64_t>(bound, 100);
    for (std::int64_t n = 2; n <= n_max && all; ++n) {
        const rational q(n);
        const log_linear_number om_val = phi_eval(om, q).value;
        if (!(om_val.is_exact() && om_val.log_terms.empty() &&
              om_val.rational_part == omega(q))) {
            out << "first_violation=omega(" << n << ")\n";
            all = false;
        }
        const log_linear_number ps_val = phi_eval(ps, q).value;
        if (all && !(ps_val.is_exact() && ps_val.log_terms.empty() &&
                     ps_val.rational_part == psi(q))) {
            out << "first_violation=psi(" << n << ")\n";
            all = false;
        }
        const log_linear_number lg_val = phi_eval(lg, q).value;
        if (all && !(lg_val.is_exact() && lg_val.rational_part == 0)) {
            out << "first_violation=log(" << n << ")\n";
            all = false;
        }
        if (all)
            for (const auto& [p, m] : factorize(big_int(n))) {
                const auto it = lg_val.log_terms.find(p);
                if (it == lg_val.log_terms.end() || it->second != m) {
                    out << "first_violation=log(" << n << ")\n";
                    all = false;
                    break;
                }
            }
    }
    for (const consistent_map& c : {om, ps, lg}) {
        const local_value v = evaluate_at(c, q_infinity());
        if (!(v.is_exact() && v.is_zero())) {
            out << "first_violation=archimedean normalization\n";
            all = false;
        }
    }
    out << "checked_n=2.." << n_max << "\n";
    out << "pass=" << (all ? "true" : "false") << "\n";
    return all ? 0 : 1;
}

int suite_local_global(const quad_field& K, std::int64_t bound, const cli_config& cfg,
                       std::ostream& out) {
    out << "suite=local-global\n";
    out << "d=" << K.d << "\n";
    bool all = true;
    for (const std::int32_t p : small_primes()) {
        if (p > bound)
            break;
        int total = 0;
        for (const place& w : places_above_prime(K, p))
            total += w.local_degree();
        if (total != 2) {
            out << "first_violation=degree sum at p=" << p << "\n";
            all = false;
            break;
        }
    }
    const consistent_map om = build_extension(additive_kind::omega_ext);
    const norm_compat_report nc =
        norm_compatibility_check(om, random_elements(K, 25, 30, 20260823), cfg.tol);
    out << "norm_compat_max_diff=" << fmt_double(nc.max_abs_diff) << "\n";
    if (!nc.all_pass) {
        out << "first_violation=" << nc.rows[0].element << "\n";
        all = false;
    }
    out << "pass=" << (all ? "true" : "false") << "\n";
    return all ? 0 : 1;
}

int cmd_check(const std::string& suite, std::int64_t d, std::int64_t bound,
              const cli_config& cfg, std::ostream& out) {
    const quad_field K = make_field(d);
    if (suite == "product-formula")
        return suite_product_formula(K, bound, cfg, out);
    if (suite == "consistency")
        return suite_consistency(K, bound, cfg, out);
    if (suite == "kernel")
        return suite_kernel(K, bound, cfg, out);
    if (suite == "extensions")
        return suite_extensions(K, bound, cfg, out);
    if (suite == "local-global")
        return suite_local_global(K, bound, cfg, out);
    throw cmap_error("unknown suite '" + suite + "'");
}

// ---- sqrt2-table ---------------------------------------------------------

int cmd_sqrt2_table(std::int64_t bound, const cli_config& cfg, std::ostream& out) {
    const sqrt2_result result = sqrt2_example(bound);
    if (cfg.format == "json") {
        json j;
        json rows = json::array();
        for (const sqrt2_row& row : result.rows) {
            json r;
            if (row.beta) {
                r["p"] = row.v.p;
                r["beta"] = format_element(*row.beta);
            } else {
                r["p"] = "inf";
                r["beta"] = nullptr;
            }
            r["c"] = row.c_value;
            if (!row.note.empty())
                r["note"] = row.note;
            rows.push_back(std::move(r));
        }
        j["rows"] = rows;
        j["antisymmetry_max"] = result.antisymmetry_max;
        j["max_cq"] = result.max_cq;
        j["verified"] = result.verified;
        out << j.dump(2) << "\n";
        return 0;
    }
    if (cfg.format == "markdown") {
        out << "| p | factorization | c(K,v) |\n";
        out << "|---|---------------|--------|\n";
        for (const sqrt2_row& row : result.rows) {
            if (row.beta)
                out << "| " << row.v.p << " | (" << format_element(*row.beta) << ")("
                    << format_element(conj(*row.beta)) << ") | ±"
                    << fmt_double(std::abs(row.c_value)) << " |";
            else
                out << "| inf |  | ±" << fmt_double(std::abs(row.c_value)) << " |";
            if (!row.note.empty())
                out << " <!-- " << row.note << " -->";
            out << "\n";
        }
        out << "\n";
        out << "antisymmetry_max=" << fmt_double(result.antisymmetry_max) << "\n";
        out << "max_cq=" << fmt_double(result.max_cq) << "\n";
        out << "verified=" << (result.verified ? "true" : "false") << "\n";
        return 0;
    }
    for (const sqrt2_row& row : result.rows) {
        const std::string key = row.beta ? std::to_string(row.v.p) : std::string("inf");
        if (row.beta)
            out << "row." << key << ".beta=" << format_element(*row.beta) << "\n";
        out << "row." << key << ".c=" << fmt_double(row.c_value) << "\n";
        if (!row.note.empty())
            out << "row." << key << ".note=" << row.note << "\n";
    }
    out << "antisymmetry_max=" << fmt_double(result.antisymmetry_max) << "\n";
    out << "max_cq=" << fmt_double(result.max_cq) << "\n";
    out << "verified=" << (result.verified ? "true" : "false") << "\n";
    return 0;
}

// ---- build-functional / decompose / krational ----------------------------

int cmd_build_functional(const std::string& spec_path, std::optional<std::int64_t> d_flag,
                         std::int64_t bound, std::ostream& out, std::istream& in) {
    const json j = parse_json_source(spec_path, in);
    std::optional<std::int64_t> d = d_flag;
    if (!d)
        d = spec_field_d(j);
    if (!d)
        throw cmap_error("the functional spec needs a field: put \"d\" in the file or pass --d");
    const quad_field K = make_field(*d);
    const functional_spec fs = spec_from_json(j, K);
    out << map_to_json(build_map_from_functional(K, fs, bound)).dump(2) << "\n";
    return 0;
}

int cmd_decompose(std::int64_t d, const std::string& alpha, const std::string& primes_text,
                  const cli_config& cfg, std::ostream& out) {
    const quad_field K = make_field(d);
    std::vector<std::int64_t> primes;
    std::stringstream ss(primes_text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty())
            continue;
        try {
            primes.push_back(std::stoll(item));
        } catch (const std::exception&) {
            throw parse_error("--primes must be a comma-separated list of primes");
        }
        require_prime(primes.back());
    }
    const s_unit_basis basis = make_s_unit_basis(K, primes);
    const field_element x = parse_element_in(alpha, K);
    const sunit_decomposition dec = sunit_decompose(x, basis);
    if (cfg.format == "json") {
        json j;
        j["element"] = format_element(x);
        j["torsion"] = format_element(dec.torsion);
        json units = json::array();
        for (const big_int& r : dec.unit_exponents)
            units.push_back(r.convert_to<std::int64_t>());
        j["unit_exponents"] = units;
        json gens = json::object();
        for (const auto& [w, s] : dec.generator_exponents)
            gens[w.to_string()] = s.convert_to<std::int64_t>();
        j["generator_exponents"] = gens;
        out << j.dump(2) << "\n";
        return 0;
    }
    out << "element=" << format_element(x) << "\n";
    out << "torsion=" << format_element(dec.torsion) << "\n";
    for (std::size_t i = 0; i < dec.unit_exponents.size(); ++i)
        out << "unit." << i << "=" << dec.unit_exponents[i] << "\n";
    for (const auto& [w, s] : dec.generator_exponents)
        out << "gen." << w.to_string() << "=" << s << "\n";
    return 0;
}

int cmd_krational(std::int64_t d, const std::string& y_path, std::int64_t bound,
                  const cli_config& cfg, std::ostream& out, std::istream& in) {
    const quad_field K = make_field(d);
    const json j = parse_json_source(y_path, in);
    if (!j.is_object())
        throw parse_error("the y file must be a JSON object keyed by place");
    std::map<place, double> y;
    for (const auto& [key, value] : j.items())
        y.emplace(parse_place(key, K), value.get<double>());
    const krational_report report = krational_check(K, y, bound, cfg.max_den(), cfg.tol);
    if (cfg.format == "json") {
        json jr;
        json rows = json::array();
        for (const krational_quantity& q : report.quantities) {
            json row;
            row["label"] = q.label;
            row["value"] = q.value;
            row["detected"] = q.detected ? json(format_rational(*q.detected)) : json(nullptr);
            row["pass"] = q.pass;
            rows.push_back(std::move(row));
        }
        jr["quantities"] = rows;
        jr["all_pass"] = report.all_pass;
        jr["verdict"] = report.verdict;
        out << jr.dump(2) << "\n";
    } else {
        for (const krational_quantity& q : report.quantities) {
            out << "quantity." << q.label << ".value=" << fmt_double(q.value) << "\n";
            out << "quantity." << q.label
                << ".detected=" << (q.detected ? format_rational(*q.detected) : "none") << "\n";
        }
        out << "all_pass=" << (report.all_pass ? "true" : "false") << "\n";
        out << "verdict=" << report.verdict << "\n";
    }
    return report.all_pass ? 0 : 1;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
            std::istream& in) {
    CLI::App app{"consistent maps and Q-linear functionals on quadratic fields"};
    app.require_subcommand(1);

    cli_config cfg;
    app.add_option("--tol", cfg.tol, "numeric tolerance")
        ->envname("CMAP_TOL")
        ->check(CLI::PositiveNumber);
    app.add_option("--max-den", cfg.max_den_text, "rational-detection denominator bound")
        ->envname("CMAP_MAX_DEN");
    app.add_option("--format", cfg.format, "output format")
        ->check(CLI::IsMember({"json", "markdown", "plain"}));

    std::int64_t arg_d = 0, arg_p = 0, arg_bound = 100;
    std::int64_t fi_d = 0, sp_d = 0, sp_p = 0, un_d = 0;
    std::string arg_map, arg_alpha, arg_pow = "1", arg_kind, arg_suite;
    std::string arg_spec, arg_primes, arg_y;
    std::optional<std::int64_t> arg_d_opt;

    CLI::App* fi = app.add_subcommand("field-info", "describe Q(sqrt(d))");
    fi->add_option("d", fi_d, "squarefree d")->required();

    CLI::App* sp = app.add_subcommand("split", "splitting of p in Q(sqrt(d))");
    sp->add_option("d", sp_d)->required();
    sp->add_option("p", sp_p)->required();

    CLI::App* un = app.add_subcommand("unit", "fundamental unit of a real field");
    un->add_option("d", un_d)->required();

    CLI::App* ge = app.add_subcommand("generator", "ideal generators over p");
    ge->add_option("d", arg_d)->required();
    ge->add_option("p", arg_p)->required();

    CLI::App* ep = app.add_subcommand("eval-phi", "evaluate Phi_c");
    ep->add_option("--map", arg_map, "map JSON file, or - for stdin")->required();
    ep->add_option("--alpha", arg_alpha, "field element or rational")->required();
    ep->add_option("--pow", arg_pow, "rational exponent");

    CLI::App* ex = app.add_subcommand("extend", "arithmetic-function extension map");
    ex->add_option("--kind", arg_kind, "log | omega | psi")->required();

    CLI::App* ee = app.add_subcommand("extend-eval", "evaluate an extension directly");
    ee->add_option("--kind", arg_kind, "log | omega | psi")->required();
    ee->add_option("--alpha", arg_alpha)->required();
    ee->add_option("--pow", arg_pow);

    CLI::App* ck = app.add_subcommand("check", "verification suites");
    ck->add_option("--suite", arg_suite,
                   "product-formula | consistency | kernel | extensions | local-global")
        ->required();
    ck->add_option("--d", arg_d)->required();
    ck->add_option("--bound", arg_bound, "prime bound");

    CLI::App* st = app.add_subcommand("sqrt2-table", "the worked example's value table");
    st->add_option("--bound", arg_bound, "prime bound");

    CLI::App* bf = app.add_subcommand("build-functional", "map from a functional spec");
    bf->add_option("--spec", arg_spec, "spec JSON file, or - for stdin")->required();
    bf->add_option("--d", arg_d_opt, "field (overrides the file)");
    bf->add_option("--bound", arg_bound, "prime bound");

    CLI::App* de = app.add_subcommand("decompose", "S-unit decomposition");
    de->add_option("--d", arg_d)->required();
    de->add_option("--alpha", arg_alpha)->required();
    de->add_option("--primes", arg_primes, "comma-separated primes of S")->required();

    CLI::App* kr = app.add_subcommand("krational", "bounded rationality check");
    kr->add_option("--d", arg_d)->required();
    kr->add_option("--y", arg_y, "JSON file mapping place to value, or - for stdin")
        ->required();
    kr->add_option("--bound", arg_bound, "prime bound");

    for (CLI::App* sub : app.get_subcommands({}))
        sub->fallthrough();

    std::vector<const char*> argv;
    argv.push_back("cmap");
    for (const std::string& a : args)
        argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        const auto parsed = app.get_subcommands();
        err << (parsed.empty() ? app.help() : parsed.front()->help());
        return 2;
    }

    try {
        if (arg_bound < 2)
            throw cmap_error("--bound must be at least 2");
        if (fi->parsed())
            return cmd_field_info(fi_d, cfg, out);
        if (sp->parsed())
            return cmd_split(sp_d, sp_p, cfg, out);
        if (un->parsed())
            return cmd_unit(un_d, cfg, out);
        if (ge->parsed())
            return cmd_generator(arg_d, arg_p, cfg, out);
        if (ep->parsed())
            return cmd_eval_phi(arg_map, arg_alpha, arg_pow, cfg, out, in);
        if (ex->parsed())
            return cmd_extend(arg_kind, out);
        if (ee->parsed())
            return cmd_extend_eval(arg_kind, arg_alpha, arg_pow, cfg, out);
        if (ck->parsed())
            return cmd_check(arg_suite, arg_d, arg_bound, cfg, out);
        if (st->parsed())
            return cmd_sqrt2_table(arg_bound, cfg, out);
        if (bf->parsed())
            return cmd_build_functional(arg_spec, arg_d_opt, arg_bound, out, in);
        if (de->parsed())
            return cmd_decompose(arg_d, arg_alpha, arg_primes, cfg, out);
        if (kr->parsed())
            return cmd_krational(arg_d, arg_y, arg_bound, cfg, out, in);
        err << "error: no subcommand\n" << app.help();
        return 2;
    } catch (const cmap_error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
}

} // namespace cmap
