#pragma once

#include "cmap/quadfield.hpp"
#include "cmap/rational.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace cmap {

enum class splitting { split, inert, ramified };

std::string splitting_name(splitting s);

// A place of Q (rational_prime / rational_infinity) or of a quadratic field
// (arch_embedding / nonarch). Split places come in a canonically labeled
// pair: index 1 is the one whose Hensel root r satisfies r = r0 mod p with
// 0 < r0 < p/2 (for p = 2: r = 1 mod 4).
struct place {
    enum class kind_t { rational_prime, rational_infinity, arch_embedding, nonarch };

    kind_t kind = kind_t::rational_infinity;
    std::optional<quad_field> field; // engaged for arch_embedding / nonarch
    std::int64_t p = 0;              // residue prime for the non-archimedean kinds
    int index = 1;                   // 1 or 2 for arch_embedding and split nonarch
    splitting split_type = splitting::split;

    bool is_arch() const {
        return kind == kind_t::rational_infinity || kind == kind_t::arch_embedding;
    }
    bool is_nonarch() const { return !is_arch(); }

    // [K_v : Q_{p_v}] (1 for places of Q).
    int local_degree() const;

    // Ramification index e and residue degree f (non-archimedean kinds).
    int ram_index() const;
    int residue_degree() const;

    // "inf", "7", "inf:1", "7:split:2", "3:inert", "2:ram".
    std::string to_string() const;

    bool operator==(const place&) const = default;
    // Archimedean places first, then by residue prime; usable as a map key.
    bool operator<(const place& other) const;
};

place q_prime_place(std::int64_t p);
place q_infinity();
place arch_place(const quad_field& K, int index);
place nonarch_place(const quad_field& K, std::int64_t p, splitting s, int index = 1);

// Ramified iff p | discriminant, else split iff Kronecker symbol
// (discriminant/p) = +1, else inert.
splitting splitting_type(const quad_field& K, std::int64_t p);

// Kronecker symbol (n/p) for prime p.
int kronecker_symbol(std::int64_t n, std::int64_t p);

// The places of K over a place of Q; local degrees always sum to 2.
std::vector<place> places_above(const quad_field& K, const place& below);

// All non-archimedean places of K over p (one or two).
std::vector<place> places_above_prime(const quad_field& K, std::int64_t p);

// The place of Q under any place.
place place_below(const place& w);

// Root r of X^2 = d mod p^precision attached to the given split place
// index.
big_int hensel_root(std::int64_t d, std::int64_t p, int precision, int index);

// Prime-ideal valuation v_P(x) for nonzero x, an integer on K^x. Split
// places embed via the Hensel root at precision v_p(norm)+1; inert places
// use v_p(norm)/2; ramified places use v_p(norm) of the integral part.
rational valuation(const field_element& x, const place& w);

// v_p(x) / the trivial archimedean analogue for places of Q.
rational valuation_rational(const rational& x, const place& q);

// log of the normalized absolute value, exact exponent form at
// non-archimedean places: nonarch_exponent = r means ||x^t||_v = p^r.
struct log_abs_value {
    place v;
    std::optional<rational> nonarch_exponent;
    std::optional<double> arch_value;

    double to_double() const;
};

log_abs_value log_abs(const field_element& x, const place& v, const rational& exponent = rational(1));
log_abs_value log_abs_rational(const rational& x, const place& v, const rational& exponent = rational(1));

// An integral beta with valuation 1 at w and 0 at every other
// non-archimedean place, unit-normalized deterministically: candidates with
// norm > 0 are preferred when any exist, then smallest coordinate a > 0,
// then b > 0. Throws generator_not_found when the prime ideal has no such
// generator within the search bound (class-number obstruction).
field_element ideal_generator_search(const quad_field& K, const place& w, std::int64_t bound = 10000);

// Parse "inf", "inf:1", "p", "p:split:1", "p:inert", "p:ram". Forms with a
// field part require the context field and are validated against the actual
// splitting.
place parse_place(const std::string& text, const std::optional<quad_field>& context);

} // namespace cmap
