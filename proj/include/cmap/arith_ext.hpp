#pragma once

#include "cmap/consistent.hpp"
#include "cmap/quadfield.hpp"
#include "cmap/rational.hpp"

#include <string>
#include <vector>

namespace cmap {

// The three completely additive arithmetic functions with consistent-map
// extensions: log n, Omega(n) (prime factors with multiplicity), psi(n)
// (sum of prime factors with multiplicity).
enum class additive_kind { log_ext, omega_ext, psi_ext };

additive_kind parse_additive_kind(const std::string& name); // "log" | "omega" | "psi"
std::string additive_kind_name(additive_kind kind);

// Omega and psi on nonzero rationals, extended by complete additivity
// (denominator primes count negatively).
rational omega(const rational& n);
rational psi(const rational& n);

// The consistent map extending the chosen function: base field Q,
// archimedean value 0, and rule c(Q,p) = -1 (log), -1/log p (omega),
// or -p/log p (psi).
consistent_map build_extension(additive_kind kind);

// Sampled boundedness check of sup |c(K,v)/lambda(K,v)|: the ratio at every
// place of Q and of the sample fields with residue prime <= prime_bound
// (archimedean places included), the max and where it occurs, and whether
// the ratio is still climbing at the edge of the sampled range.
struct continuity_row {
    place v;
    double ratio = 0.0;
};

struct continuity_report {
    std::vector<continuity_row> rows; // sorted by place
    double max_ratio = 0.0;
    place max_location;
    bool increasing_tail = false; // ratio at the largest primes still growing
};

continuity_report continuity_diagnostic(const consistent_map& c, std::int64_t prime_bound,
                                        const std::vector<quad_field>& sample_fields);

} // namespace cmap
