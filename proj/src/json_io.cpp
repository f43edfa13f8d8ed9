#include "cmap/json_io.hpp"

#include "cmap/errors.hpp"

namespace cmap {

namespace {

rational rational_from_json(const json& j, const char* what) {
    if (j.is_string())
        return parse_rational(j.get<std::string>());
    if (j.is_number_integer())
        return rational(j.get<std::int64_t>());
    throw parse_error(std::string(what) + " must be a rational string or integer");
}

std::optional<quad_field> base_from_json(const json& j) {
    if (!j.contains("base") || j.at("base").is_null() ||
        (j.at("base").is_string() && j.at("base").get<std::string>() == "Q"))
        return std::nullopt;
    const json& b = j.at("base");
    if (b.is_object() && b.contains("d"))
        return make_field(b.at("d").get<std::int64_t>());
    throw parse_error("base must be \"Q\" or {\"d\": n}");
}

json rule_body_to_json(const std::variant<named_rule, explicit_rule>& body) {
    if (const named_rule* nr = std::get_if<named_rule>(&body))
        return json(named_rule_name(*nr));
    json values = json::object();
    for (const auto& [w, v] : std::get<explicit_rule>(body).values)
        values[w.to_string()] = value_to_json(v);
    return json{{"explicit", values}};
}

std::variant<named_rule, explicit_rule> rule_body_from_json(const json& j,
                                                            const std::optional<quad_field>& base) {
    if (j.is_string()) {
        const std::string name = j.get<std::string>();
        if (name == "log")
            return named_rule::log_ext;
        if (name == "omega")
            return named_rule::omega_ext;
        if (name == "psi")
            return named_rule::psi_ext;
        if (name == "sqrt2_example")
            return named_rule::sqrt2_example;
        throw parse_error("unknown rule name '" + name + "'");
    }
    if (j.is_object() && j.contains("explicit")) {
        explicit_rule ex;
        for (const auto& [key, value] : j.at("explicit").items())
            ex.values.emplace(parse_place(key, base), value_from_json(value));
        return ex;
    }
    throw parse_error("rule must be a name or {\"explicit\": {...}}");
}

} // namespace

json value_to_json(const local_value& v) {
    switch (v.kind) {
    case local_value::kind_t::plain:
        return json{{"q", format_rational(v.q)}};
    case local_value::kind_t::over_logp:
        return json{{"q_over_logp", format_rational(v.q)}};
    case local_value::kind_t::floating:
        return json{{"float", v.x}};
    }
    throw parse_error("corrupt local value");
}

local_value value_from_json(const json& j) {
    if (j.is_number())
        return local_value::floating(j.get<double>());
    if (!j.is_object())
        throw parse_error("a value must be an object or a number");
    if (j.contains("q"))
        return local_value::plain(rational_from_json(j.at("q"), "q"));
    if (j.contains("q_over_logp"))
        return local_value::over_logp(rational_from_json(j.at("q_over_logp"), "q_over_logp"));
    if (j.contains("float"))
        return local_value::floating(j.at("float").get<double>());
    throw parse_error("a value needs one of q, q_over_logp, float");
}

json lambda_to_json(const lambda_scalar& c) {
    switch (c.kind) {
    case lambda_scalar::kind_t::exact:
        return json{{"q", format_rational(c.q)}};
    case lambda_scalar::kind_t::over_logp:
        return json{{"q_over_logp", format_rational(c.q)}, {"p", c.p}};
    case lambda_scalar::kind_t::floating:
        return json(c.x);
    }
    throw parse_error("corrupt lambda coefficient");
}

lambda_scalar lambda_from_json(const json& j) {
    if (j.is_number())
        return lambda_scalar::of_double(j.get<double>());
    if (!j.is_object())
        throw parse_error("lambda_coeff must be a number or an object");
    if (j.contains("q"))
        return lambda_scalar::of(rational_from_json(j.at("q"), "q"));
    if (j.contains("q_over_logp")) {
        if (!j.contains("p"))
            throw parse_error("an over-log lambda_coeff needs its anchor prime p");
        return lambda_scalar::of_over_logp(rational_from_json(j.at("q_over_logp"), "q_over_logp"),
                                           j.at("p").get<std::int64_t>());
    }
    throw parse_error("lambda_coeff needs one of q, q_over_logp");
}

json map_to_json(const consistent_map& c) {
    json out = json::object();
    out["base"] = c.base ? json{{"d", c.base->d}} : json("Q");
    json arch = json::array();
    for (const local_value& v : c.arch_values)
        arch.push_back(value_to_json(v));
    out["arch"] = arch;
    if (c.rules.empty()) {
        out["rule"] = "zero";
    } else if (c.rules.size() == 1 && c.rules[0].coeff == scalar::of(rational(1))) {
        out["rule"] = rule_body_to_json(c.rules[0].body);
    } else {
        json terms = json::array();
        for (const rule_term& term : c.rules) {
            json t = json::object();
            t["coeff"] = term.coeff.exact ? json(format_rational(term.coeff.q))
                                          : json(term.coeff.x);
            t["body"] = rule_body_to_json(term.body);
            terms.push_back(std::move(t));
        }
        out["rule"] = terms;
    }
    out["lambda_coeff"] = lambda_to_json(c.lambda_coeff);
    return out;
}

consistent_map map_from_json(const json& j) {
    if (!j.is_object())
        throw parse_error("a map must be a JSON object");
    const std::optional<quad_field> base = base_from_json(j);
    std::vector<local_value> arch;
    if (j.contains("arch"))
        for (const json& v : j.at("arch"))
            arch.push_back(value_from_json(v));
    std::vector<rule_term> rules;
    if (j.contains("rule") && !j.at("rule").is_null()) {
        const json& r = j.at("rule");
        if (r.is_string() && r.get<std::string>() == "zero") {
            // empty rule stack
        } else if (r.is_array()) {
            for (const json& t : r) {
                rule_term term;
                const json& coeff = t.at("coeff");
                term.coeff = coeff.is_string()
                                 ? scalar::of(parse_rational(coeff.get<std::string>()))
                                 : scalar::of_double(coeff.get<double>());
                term.body = rule_body_from_json(t.at("body"), base);
                rules.push_back(std::move(term));
            }
        } else {
            rules.push_back({scalar::of(rational(1)), rule_body_from_json(r, base)});
        }
    }
    lambda_scalar coeff = lambda_scalar::of(rational(0));
    if (j.contains("lambda_coeff"))
        coeff = lambda_from_json(j.at("lambda_coeff"));
    return make_map(base, std::move(arch), std::move(rules), coeff);
}

json spec_to_json(const functional_spec& fs, const quad_field& K) {
    json out = json::object();
    out["d"] = K.d;
    out["r"] = fs.r;
    out["unit_targets"] = fs.unit_targets;
    json targets = json::object();
    for (const auto& [w, t] : fs.generator_targets)
        targets[w.to_string()] = t;
    out["generator_targets"] = targets;
    return out;
}

functional_spec spec_from_json(const json& j, const quad_field& K) {
    if (!j.is_object())
        throw parse_error("a functional spec must be a JSON object");
    functional_spec fs;
    if (j.contains("r"))
        fs.r = j.at("r").get<double>();
    if (j.contains("unit_targets"))
        fs.unit_targets = j.at("unit_targets").get<std::vector<double>>();
    if (j.contains("generator_targets"))
        for (const auto& [key, value] : j.at("generator_targets").items())
            fs.generator_targets.emplace(parse_place(key, K), value.get<double>());
    return fs;
}

std::optional<std::int64_t> spec_field_d(const json& j) {
    if (j.is_object() && j.contains("d"))
        return j.at("d").get<std::int64_t>();
    return std::nullopt;
}

json lln_exact_to_json(const log_linear_number& n) {
    if (!n.is_exact())
        return json(nullptr);
    json out = json::object();
    out["rational"] = format_rational(n.rational_part);
    json terms = json::object();
    for (const auto& [p, coeff] : n.log_terms)
        terms[std::to_string(p)] = format_rational(coeff);
    out["log_terms"] = terms;
    return out;
}

json phi_to_json(const phi_result& r) {
    json out = json::object();
    out["value_exact"] = lln_exact_to_json(r.value);
    out["value_float"] = r.value.to_double();
    json terms = json::array();
    for (const phi_term& t : r.terms) {
        json term = json::object();
        term["place"] = t.v.to_string();
        term["coeff"] = value_to_json(t.coeff);
        term["logabs"] = t.logabs.to_double();
        terms.push_back(std::move(term));
    }
    out["terms"] = terms;
    return out;
}

} // namespace cmap
