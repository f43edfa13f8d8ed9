#include "doctest.h"

#include "cmap/errors.hpp"
#include "cmap/places.hpp"
#include "cmap/quadfield.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <vector>

using namespace cmap;

TEST_CASE("splitting_type matches hand-computed Kronecker symbols") {
    const quad_field K2 = make_field(2); // disc 8
    CHECK(splitting_type(K2, 2) == splitting::ramified);
    CHECK(splitting_type(K2, 3) == splitting::inert);
    CHECK(splitting_type(K2, 5) == splitting::inert);
    CHECK(splitting_type(K2, 7) == splitting::split);
    CHECK(splitting_type(K2, 17) == splitting::split);
    CHECK(splitting_type(K2, 23) == splitting::split); // 23 = 7 mod 8

    const quad_field K5 = make_field(5); // disc 5
    CHECK(splitting_type(K5, 5) == splitting::ramified);
    CHECK(splitting_type(K5, 2) == splitting::inert);
    CHECK(splitting_type(K5, 11) == splitting::split);

    const quad_field Km1 = make_field(-1); // disc -4
    CHECK(splitting_type(Km1, 2) == splitting::ramified);
    CHECK(splitting_type(Km1, 3) == splitting::inert);
    CHECK(splitting_type(Km1, 5) == splitting::split);

    const quad_field Km5 = make_field(-5); // disc -20
    CHECK(splitting_type(Km5, 2) == splitting::ramified);
    CHECK(splitting_type(Km5, 3) == splitting::split);
    CHECK(splitting_type(Km5, 7) == splitting::split);
    CHECK(splitting_type(Km5, 11) == splitting::inert);
}

TEST_CASE("kronecker_symbol including the p = 2 rule") {
    CHECK(kronecker_symbol(8, 7) == 1);
    CHECK(kronecker_symbol(8, 3) == -1);
    CHECK(kronecker_symbol(8, 2) == 0);
    CHECK(kronecker_symbol(5, 11) == 1);
    CHECK(kronecker_symbol(5, 2) == -1);  // 5 mod 8
    CHECK(kronecker_symbol(17, 2) == 1);  // 1 mod 8
    CHECK(kronecker_symbol(7, 2) == 1);   // 7 = -1 mod 8
    CHECK(kronecker_symbol(3, 2) == -1);  // 3 mod 8
    CHECK(kronecker_symbol(-20, 3) == 1);
    CHECK(kronecker_symbol(12, 2) == 0);
}

TEST_CASE("local degrees sum to 2 over every rational place") {
    for (std::int64_t d : {2, 3, 5, 6, 7, 13, -1, -3, -5}) {
        const quad_field K = make_field(d);
        int arch_sum = 0;
        for (const place& w : places_above(K, q_infinity()))
            arch_sum += w.local_degree();
        CHECK(arch_sum == 2);
        for (std::int64_t p : {2, 3, 5, 7, 11, 13, 97}) {
            int sum = 0;
            for (const place& w : places_above_prime(K, p))
                sum += w.local_degree();
            CHECK_MESSAGE(sum == 2, "d = ", d, ", p = ", p);
        }
    }
}

TEST_CASE("place structure: degrees, e, f, below") {
    const quad_field K = make_field(2);
    const place w_split = nonarch_place(K, 7, splitting::split, 2);
    const place w_inert = nonarch_place(K, 3, splitting::inert);
    const place w_ram = nonarch_place(K, 2, splitting::ramified);

    CHECK(w_split.local_degree() == 1);
    CHECK(w_inert.local_degree() == 2);
    CHECK(w_ram.local_degree() == 2);
    CHECK(w_split.ram_index() == 1);
    CHECK(w_split.residue_degree() == 1);
    CHECK(w_inert.ram_index() == 1);
    CHECK(w_inert.residue_degree() == 2);
    CHECK(w_ram.ram_index() == 2);
    CHECK(w_ram.residue_degree() == 1);

    CHECK(place_below(w_split) == q_prime_place(7));
    CHECK(place_below(w_ram) == q_prime_place(2));
    CHECK(place_below(arch_place(K, 1)) == q_infinity());
    CHECK(place_below(q_prime_place(5)) == q_prime_place(5));

    // Imaginary arch place has local degree 2, real ones degree 1.
    CHECK(arch_place(make_field(-1), 1).local_degree() == 2);
    CHECK(arch_place(K, 1).local_degree() == 1);
    CHECK(arch_place(K, 2).local_degree() == 1);
}

TEST_CASE("hensel_root lifts and labels canonically") {
    // d = 2, p = 7: roots 3 and 4 mod 7; index 1 owns the root below p/2.
    CHECK(hensel_root(2, 7, 1, 1) == 3);
    CHECK(hensel_root(2, 7, 1, 2) == 4);
    CHECK(hensel_root(2, 7, 3, 1) == 108);  // 108^2 = 2 mod 343, 108 = 3 mod 7
    CHECK(hensel_root(2, 7, 3, 2) == 235);

    // p = 2 uses the mod-4 labeling: index 1 is the root = 1 mod 4.
    CHECK(hensel_root(17, 2, 6, 1) == 41);  // 41^2 = 17 mod 64, 41 = 1 mod 4
    CHECK(hensel_root(17, 2, 6, 2) == 23);

    // Any lift squares to d at its precision.
    for (int prec = 1; prec <= 6; ++prec) {
        const big_int r = hensel_root(2, 7, prec, 1);
        big_int mod = 1;
        for (int i = 0; i < prec; ++i)
            mod *= 7;
        CHECK((r * r - 2) % mod == 0);
    }
}

TEST_CASE("valuation at split, inert, ramified places") {
    const quad_field K = make_field(2);
    const field_element x = make_element(K, rational(3), rational(1)); // norm 7
    const place w1 = nonarch_place(K, 7, splitting::split, 1);
    const place w2 = nonarch_place(K, 7, splitting::split, 2);

    CHECK(valuation(x, w2) == 1);
    CHECK(valuation(x, w1) == 0);
    CHECK(valuation(conj(x), w1) == 1);
    CHECK(valuation(conj(x), w2) == 0);
    CHECK(valuation(from_rational(K, rational(7)), w1) == 1);
    CHECK(valuation(from_rational(K, rational(7)), w2) == 1);
    CHECK(valuation(x / from_rational(K, rational(7)), w1) == -1);
    CHECK(valuation(x * x, w2) == 2);

    const place ram = nonarch_place(K, 2, splitting::ramified);
    CHECK(valuation(make_element(K, rational(0), rational(1)), ram) == 1); // sqrt(2)
    CHECK(valuation(from_rational(K, rational(2)), ram) == 2);
    CHECK(valuation(from_rational(K, rational(1, 2)), ram) == -2);

    const place inert = nonarch_place(K, 3, splitting::inert);
    CHECK(valuation(from_rational(K, rational(3)), inert) == 1);
    CHECK(valuation(from_rational(K, rational(1, 3)), inert) == -1);
    CHECK(valuation(x, inert) == 0);

    CHECK_THROWS_AS(valuation(from_rational(K, rational(0)), ram), zero_element_error);
}

TEST_CASE("valuation is additive on products") {
    const quad_field K = make_field(2);
    const std::vector<field_element> xs = {
        make_element(K, rational(3), rational(1)),
        make_element(K, rational(1), rational(1)),
        make_element(K, rational(5, 2), rational(-3)),
        make_element(K, rational(0), rational(1)),
        from_rational(K, rational(-14, 9)),
    };
    std::vector<place> ws;
    for (std::int64_t p : {2, 3, 7, 17})
        for (const place& w : places_above_prime(K, p))
            ws.push_back(w);
    for (const field_element& x : xs)
        for (const field_element& y : xs)
            for (const place& w : ws)
                CHECK(valuation(x * y, w) == valuation(x, w) + valuation(y, w));
}

TEST_CASE("log_abs exponents: || . ||_w = p^(-v/e)") {
    const quad_field K = make_field(2);
    const field_element x = make_element(K, rational(3), rational(1));
    const place w2 = nonarch_place(K, 7, splitting::split, 2);

    const log_abs_value la = log_abs(x, w2);
    REQUIRE(la.nonarch_exponent.has_value());
    CHECK(*la.nonarch_exponent == -1);
    CHECK(la.to_double() == doctest::Approx(-std::log(7.0)).epsilon(1e-14));

    // Ramified: e = 2 halves the exponent.
    const place ram = nonarch_place(K, 2, splitting::ramified);
    const log_abs_value lr = log_abs(make_element(K, rational(0), rational(1)), ram);
    CHECK(*lr.nonarch_exponent == rational(-1, 2));

    // Exponent parameter scales exactly.
    const log_abs_value l3 = log_abs(x, w2, rational(3, 2));
    CHECK(*l3.nonarch_exponent == rational(-3, 2));

    // Archimedean values are plain embedding logs.
    const log_abs_value a1 = log_abs(x, arch_place(K, 1));
    const log_abs_value a2 = log_abs(x, arch_place(K, 2));
    REQUIRE(a1.arch_value.has_value());
    CHECK(*a1.arch_value == doctest::Approx(std::log(3.0 + std::sqrt(2.0))).epsilon(1e-14));
    CHECK(*a2.arch_value == doctest::Approx(std::log(3.0 - std::sqrt(2.0))).epsilon(1e-14));

    // Imaginary arch place: |sigma(x)| = sqrt(norm), so ||1+i|| picks up (1/2)log 2.
    const quad_field Ki = make_field(-1);
    const log_abs_value ai = log_abs(make_element(Ki, rational(1), rational(1)), arch_place(Ki, 1));
    CHECK(*ai.arch_value == doctest::Approx(0.5 * std::log(2.0)).epsilon(1e-14));
}

TEST_CASE("lambda-weighted local logs sum to zero (product formula, by hand)") {
    const quad_field K = make_field(2);
    const field_element x = make_element(K, rational(3), rational(1));
    // arch: (1/2)(log|3+s2| + log|3-s2|) = (1/2) log 7; nonarch only at w2: (1/2)(-log 7).
    double sum = 0.0;
    for (const place& w : places_above(K, q_infinity()))
        sum += 0.5 * *log_abs(x, w).arch_value;
    for (const place& w : places_above_prime(K, 7))
        sum += 0.5 * log_abs(x, w).to_double();
    CHECK(sum == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("valuation_rational and log_abs_rational at places of Q") {
    CHECK(valuation_rational(rational(12), q_prime_place(2)) == 2);
    CHECK(valuation_rational(rational(4, 9), q_prime_place(3)) == -2);
    const log_abs_value la = log_abs_rational(rational(12), q_prime_place(2));
    CHECK(*la.nonarch_exponent == -2);
    const log_abs_value li = log_abs_rational(rational(-12), q_infinity());
    CHECK(*li.arch_value == doctest::Approx(std::log(12.0)).epsilon(1e-14));
}

TEST_CASE("ideal generator search returns the frozen normalized generators") {
    const quad_field K = make_field(2);
    CHECK(ideal_generator_search(K, nonarch_place(K, 7, splitting::split, 1)) ==
          make_element(K, rational(3), rational(-1)));
    CHECK(ideal_generator_search(K, nonarch_place(K, 7, splitting::split, 2)) ==
          make_element(K, rational(3), rational(1)));
    CHECK(ideal_generator_search(K, nonarch_place(K, 2, splitting::ramified)) ==
          make_element(K, rational(2), rational(1)));
    CHECK(ideal_generator_search(K, nonarch_place(K, 3, splitting::inert)) ==
          from_rational(K, rational(3)));

    const quad_field Ki = make_field(-1);
    CHECK(ideal_generator_search(Ki, nonarch_place(Ki, 2, splitting::ramified)) ==
          make_element(Ki, rational(1), rational(1)));
}

TEST_CASE("generators have valuation 1 at home and 0 elsewhere") {
    for (std::int64_t d : {2, 3, 5, -1}) {
        const quad_field K = make_field(d);
        for (std::int64_t p : {2, 3, 5, 7, 11, 13}) {
            for (const place& w : places_above_prime(K, p)) {
                const field_element g = ideal_generator_search(K, w);
                CHECK(is_integral(g));
                CHECK(valuation(g, w) == 1);
                for (std::int64_t q : {2, 3, 5, 7, 11, 13})
                    for (const place& u : places_above_prime(K, q))
                        if (!(u == w))
                            CHECK_MESSAGE(valuation(g, u) == 0, "d=", d, " p=", p, " q=", q);
            }
        }
    }
}

TEST_CASE("class-number obstruction surfaces as generator_not_found") {
    const quad_field K = make_field(-5);
    CHECK_THROWS_AS(ideal_generator_search(K, nonarch_place(K, 2, splitting::ramified)),
                    generator_not_found_error);
    CHECK_THROWS_AS(ideal_generator_search(K, nonarch_place(K, 3, splitting::split, 1)),
                    generator_not_found_error);
}

TEST_CASE("place text round trips") {
    const quad_field K = make_field(2);
    CHECK(q_infinity().to_string() == "inf");
    CHECK(q_prime_place(7).to_string() == "7");
    CHECK(arch_place(K, 2).to_string() == "inf:2");
    CHECK(nonarch_place(K, 7, splitting::split, 2).to_string() == "7:split:2");
    CHECK(nonarch_place(K, 3, splitting::inert).to_string() == "3:inert");
    CHECK(nonarch_place(K, 2, splitting::ramified).to_string() == "2:ram");

    const std::vector<place> all = {
        q_infinity(),
        q_prime_place(7),
        arch_place(K, 1),
        arch_place(K, 2),
        nonarch_place(K, 7, splitting::split, 1),
        nonarch_place(K, 3, splitting::inert),
        nonarch_place(K, 2, splitting::ramified),
    };
    for (const place& v : all)
        CHECK(parse_place(v.to_string(), K) == v);
    CHECK(parse_place("7", std::nullopt) == q_prime_place(7));

    CHECK_THROWS_AS(parse_place("7:inert", K), parse_error);     // 7 splits in Q(sqrt 2)
    CHECK_THROWS_AS(parse_place("7:split:3", K), parse_error);
    CHECK_THROWS_AS(parse_place("inf:1", std::nullopt), parse_error); // needs a field
    CHECK_THROWS_AS(parse_place("4:split:1", K), parse_error);   // not prime
    CHECK_THROWS_AS(parse_place("", K), parse_error);
}

TEST_CASE("place ordering puts archimedean first, then by prime") {
    const quad_field K = make_field(2);
    std::vector<place> v = {
        nonarch_place(K, 7, splitting::split, 2),
        q_prime_place(3),
        arch_place(K, 2),
        nonarch_place(K, 2, splitting::ramified),
        arch_place(K, 1),
        nonarch_place(K, 7, splitting::split, 1),
    };
    std::sort(v.begin(), v.end());
    CHECK(v[0].is_arch());
    CHECK(v[1].is_arch());
    CHECK(v[2].p == 2);
    CHECK(v[3].p == 3);
    CHECK(v[4] == nonarch_place(K, 7, splitting::split, 1));
    CHECK(v[5] == nonarch_place(K, 7, splitting::split, 2));

    // Usable as a map key.
    std::map<place, int> m;
    for (std::size_t i = 0; i < v.size(); ++i)
        m[v[i]] = static_cast<int>(i);
    CHECK(m.size() == v.size());
    CHECK(m.at(q_prime_place(3)) == 3);
}
