#pragma once

#include "cmap/consistent.hpp"
#include "cmap/functional.hpp"
#include "cmap/loglinear.hpp"
#include "cmap/phi.hpp"

#include "json.hpp"

#include <optional>
#include <string>

namespace cmap {

using json = nlohmann::json;

// Value objects: {"q": "a/b"} | {"q_over_logp": "a/b"} | {"float": x}.
json value_to_json(const local_value& v);
local_value value_from_json(const json& j);

// Lambda coefficients: a plain number (float), {"q": "a/b"}, or
// {"q_over_logp": "a/b", "p": n}.
json lambda_to_json(const lambda_scalar& c);
lambda_scalar lambda_from_json(const json& j);

// Maps: {"base": "Q" | {"d": n}, "arch": [...], "rule": ..., "lambda_coeff": ...}.
// A single unit-coefficient rule serializes to the plain form ("omega",
// {"explicit": {...}}, "zero"); anything else becomes an array of
// {"coeff": ..., "body": ...} terms.
json map_to_json(const consistent_map& c);
consistent_map map_from_json(const json& j);

// Functional specs: {"d": n, "r": x, "unit_targets": [...],
// "generator_targets": {"7:split:1": x, ...}}. d may instead be supplied by
// the caller.
json spec_to_json(const functional_spec& fs, const quad_field& K);
functional_spec spec_from_json(const json& j, const quad_field& K);
std::optional<std::int64_t> spec_field_d(const json& j);

// Exact part of a log-linear number, or null if the float part is live.
json lln_exact_to_json(const log_linear_number& n);

// {"value_exact": ..., "value_float": x, "terms": [...]}.
json phi_to_json(const phi_result& r);

} // namespace cmap
