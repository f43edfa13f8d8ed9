#pragma once

#include "cmap/rational.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace cmap {

// Q(sqrt(d)) for squarefree d != 0,1. Integral basis {1, omega} with
// omega = (1+sqrt(d))/2 when d = 1 mod 4 and omega = sqrt(d) otherwise.
struct quad_field {
    std::int64_t d = 0;
    std::int64_t discriminant = 0; // d when d = 1 mod 4, else 4d

    bool is_real() const { return d > 0; }
    bool d_is_1_mod_4() const { return ((d % 4) + 4) % 4 == 1; }
    bool operator==(const quad_field&) const = default;
};

// Validates squarefreeness (via factorization, so |d| is subject to the
// factoring bounds).
quad_field make_field(std::int64_t d);

// a + b*sqrt(d) with exact rational coordinates.
struct field_element {
    quad_field field;
    rational a;
    rational b;

    bool is_zero() const { return a == 0 && b == 0; }
    bool is_rational() const { return b == 0; }
    bool operator==(const field_element&) const = default;
};

field_element make_element(const quad_field& K, const rational& a, const rational& b);
field_element from_rational(const quad_field& K, const rational& q);

field_element operator+(const field_element& x, const field_element& y);
field_element operator-(const field_element& x, const field_element& y);
field_element operator-(const field_element& x);
field_element operator*(const field_element& x, const field_element& y);
field_element operator/(const field_element& x, const field_element& y);

field_element conj(const field_element& x);
rational norm(const field_element& x);
rational trace(const field_element& x);
field_element pow(const field_element& x, std::int64_t k);

// Integrality in the {1, omega} basis: for d = 1 mod 4 the coordinates are
// u = a - b, v = 2b; otherwise u = a, v = b.
bool is_integral(const field_element& x);

// Integral with |norm| = 1.
bool is_unit(const field_element& x);

// Real embeddings (is_real fields only): index 1 sends sqrt(d) to the
// positive root, index 2 to the negative root.
double embed(const field_element& x, int index);

// The unit epsilon > 1 of smallest value among integral units with
// |norm| = 1, via the continued-fraction (PQa) expansion of omega.
field_element fundamental_unit(const quad_field& K);

// 4 for d=-1, 6 for d=-3, else 2.
int torsion_order(const quad_field& K);

// All roots of unity in K, starting at 1 and stepping by a generator.
std::vector<field_element> torsion_units(const quad_field& K);

// Element text: "a+b*sqrt(d)" with rationals as "p/q"; also accepts bare
// rationals ("7"), bare radicals ("sqrt(2)", "-3/2*sqrt(5)").
struct parsed_element {
    std::optional<std::int64_t> d; // absent for a bare rational
    rational a;
    rational b;
};
parsed_element parse_element(const std::string& text);

// Parse in a known field; a bare rational is promoted, a mismatched d is an
// error.
field_element parse_element_in(const std::string& text, const quad_field& K);

std::string format_element(const field_element& x);

} // namespace cmap
