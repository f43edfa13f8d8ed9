#include "doctest.h"

#include "cmap/consistent.hpp"
#include "cmap/errors.hpp"
#include "cmap/factor.hpp"
#include "cmap/functional.hpp"
#include "cmap/phi.hpp"
#include "cmap/places.hpp"
#include "cmap/quadfield.hpp"

#include <cmath>
#include <cstdint>
#include <map>
#include <vector>

using namespace cmap;

TEST_CASE("regulator systems of small real fields") {
    const regulator_system r2 = make_regulator_system(make_field(2));
    REQUIRE(r2.units.size() == 1);
    CHECK(r2.units[0] == make_element(make_field(2), rational(1), rational(1)));
    CHECK(r2.matrix_a[0] == doctest::Approx(std::log(1.0 + std::sqrt(2.0))).epsilon(1e-14));
    CHECK(r2.matrix_a[1] == doctest::Approx(-std::log(1.0 + std::sqrt(2.0))).epsilon(1e-12));
    CHECK(r2.lambda_vector[0] == rational(1, 2));
    CHECK(r2.lambda_vector[1] == rational(1, 2));
    CHECK(r2.regulator == doctest::Approx(0.881373587020).epsilon(1e-9));

    CHECK(make_regulator_system(make_field(3)).regulator ==
          doctest::Approx(1.316957896925).epsilon(1e-9));
    CHECK(make_regulator_system(make_field(5)).regulator ==
          doctest::Approx(0.481211825060).epsilon(1e-9));

    CHECK_THROWS_AS(make_regulator_system(make_field(-1)), not_real_field_error);
}

TEST_CASE("solve_arch_y: the worked example and the kernel geometry") {
    const regulator_system sys = make_regulator_system(make_field(2));
    const double L = std::log(1.0 + std::sqrt(2.0));

    // Phi(eps) = 2 with r = 0 forces y = (1/L, -1/L).
    functional_spec fs;
    fs.r = 0.0;
    fs.unit_targets = {2.0};
    const auto y = solve_arch_y(sys, fs);
    CHECK(y[0] == doctest::Approx(1.0 / L).epsilon(1e-12));
    CHECK(y[1] == doctest::Approx(-1.0 / L).epsilon(1e-12));
    CHECK(y[0] == doctest::Approx(1.13459265711).epsilon(1e-9));

    // Unit target 0: the solution is r times the lambda direction, exactly.
    for (double r : {-2.0, 0.3, 10.0}) {
        functional_spec lam;
        lam.r = r;
        lam.unit_targets = {0.0};
        const auto yl = solve_arch_y(sys, lam);
        CHECK(yl[0] == r / 2);
        CHECK(yl[1] == r / 2);
    }

    // Residual check on a generic spec: A.y = b and sum(y) = r.
    functional_spec g;
    g.r = -1.25;
    g.unit_targets = {3.75};
    const auto yg = solve_arch_y(sys, g);
    CHECK(sys.matrix_a[0] * yg[0] + sys.matrix_a[1] * yg[1] ==
          doctest::Approx(3.75).epsilon(1e-12));
    CHECK(yg[0] + yg[1] == doctest::Approx(-1.25).epsilon(1e-12));

    // An absent unit target means target 0.
    functional_spec empty;
    empty.r = 1.0;
    const auto ye = solve_arch_y(sys, empty);
    CHECK(ye[0] == 0.5);
    CHECK(ye[1] == 0.5);
}

TEST_CASE("nonarch_y: frozen oracle values") {
    const quad_field K = make_field(2);
    const double L = std::log(1.0 + std::sqrt(2.0));
    const std::vector<double> arch_y = {1.0 / L, -1.0 / L};

    // beta = 3+sqrt(2) at its split place over 7, target 0: the table value.
    const field_element b7 = make_element(K, rational(3), rational(1));
    const place w7 = nonarch_place(K, 7, splitting::split, 2);
    CHECK(nonarch_y(arch_y, b7, w7, 0.0) == doctest::Approx(0.596912637438).epsilon(1e-9));

    // beta = sqrt(2) at the ramified place, target 1/2: -1/log 2.
    const field_element s2 = make_element(K, rational(0), rational(1));
    const place w2 = nonarch_place(K, 2, splitting::ramified);
    CHECK(nonarch_y(arch_y, s2, w2, 0.5) ==
          doctest::Approx(-1.0 / std::log(2.0)).epsilon(1e-12));

    // A target equal to the archimedean part leaves y = 0.
    const double arch_part = arch_y[0] * std::log(std::abs(embed(b7, 1))) +
                             arch_y[1] * std::log(std::abs(embed(b7, 2)));
    CHECK(nonarch_y(arch_y, b7, w7, arch_part) == doctest::Approx(0.0).epsilon(1e-12));

    // beta has valuation 0 at a foreign place: the denominator vanishes.
    CHECK_THROWS_AS(nonarch_y(arch_y, b7, nonarch_place(K, 17, splitting::split, 1), 0.0),
                    zero_denominator_error);
}

TEST_CASE("build_map_from_functional reconstructs its targets") {
    const quad_field K = make_field(2);
    functional_spec fs;
    fs.r = 0.0;
    fs.unit_targets = {2.0};
    fs.generator_targets[nonarch_place(K, 7, splitting::split, 2)] = 0.0;
    const consistent_map m = build_map_from_functional(K, fs, 10);

    const double L = std::log(1.0 + std::sqrt(2.0));
    CHECK(evaluate_at(m, arch_place(K, 1)).to_double(0) ==
          doctest::Approx(1.0 / L).epsilon(1e-12));
    CHECK(evaluate_at(m, nonarch_place(K, 7, splitting::split, 2)).to_double(7) ==
          doctest::Approx(0.596912637438).epsilon(1e-9));
    CHECK(evaluate_at(m, nonarch_place(K, 7, splitting::split, 1)).to_double(7) ==
          doctest::Approx(-0.596912637438).epsilon(1e-9));

    // Phi on the targeted elements.
    const field_element eps = make_element(K, rational(1), rational(1));
    CHECK(phi_eval(m, eps).value.to_double() == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(phi_eval(m, make_element(K, rational(3), rational(1))).value.to_double() ==
          doctest::Approx(0.0).epsilon(1e-9));
    // Unlisted places default to target 0.
    CHECK(phi_eval(m, from_rational(K, rational(3))).value.to_double() ==
          doctest::Approx(0.0).epsilon(1e-9));
    // c(Q, inf) = r.
    CHECK(evaluate_at(m, q_infinity()).to_double(0) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("build_map_from_functional: the lambda direction and imaginary fields") {
    const quad_field K = make_field(2);
    functional_spec lam;
    lam.r = 1.0;
    const consistent_map m = build_map_from_functional(K, lam, 20);
    std::vector<place> ws = places_above(K, q_infinity());
    for (std::int64_t p : {2, 3, 5, 7, 11, 13, 17, 19})
        for (const place& w : places_above_prime(K, p))
            ws.push_back(w);
    for (const place& w : ws) {
        const double got = evaluate_at(m, w).to_double(w.p);
        CHECK_MESSAGE(std::abs(got - to_double(lambda_value(w))) <= 1e-12, w.to_string());
    }

    // Imaginary quadratic: one archimedean place, no units.
    const quad_field Ki = make_field(-1);
    functional_spec fi;
    fi.r = 0.7;
    const consistent_map mi = build_map_from_functional(Ki, fi, 10);
    CHECK(evaluate_at(mi, arch_place(Ki, 1)).to_double(0) == doctest::Approx(0.7).epsilon(1e-12));
    CHECK(evaluate_at(mi, nonarch_place(Ki, 2, splitting::ramified)).to_double(2) ==
          doctest::Approx(0.7).epsilon(1e-12));

    functional_spec bad = fi;
    bad.unit_targets = {1.0};
    CHECK_THROWS_AS(build_map_from_functional(Ki, bad, 10), cmap_error);

    // Class-number obstructions surface instead of being papered over.
    CHECK_THROWS_AS(build_map_from_functional(make_field(-5), fi, 10),
                    generator_not_found_error);
}

TEST_CASE("s-unit basis satisfies the rank count") {
    const quad_field K = make_field(2);
    const s_unit_basis basis = make_s_unit_basis(K, {7, 2});
    CHECK(basis.s.size() == 5); // 2 arch + ram + 2 split
    CHECK(basis.units.size() == 1);
    CHECK(basis.generators.size() == 3);
    CHECK(basis.s.size() - 1 == basis.units.size() + basis.generators.size());
    CHECK(basis.s[0].is_arch());
    CHECK(basis.s[1].is_arch());
    CHECK(basis.generators.at(nonarch_place(K, 7, splitting::split, 2)) ==
          make_element(K, rational(3), rational(1)));

    const s_unit_basis bi = make_s_unit_basis(make_field(-1), {2});
    CHECK(bi.units.empty());
    CHECK(bi.s.size() == 2);
    CHECK(bi.generators.size() == 1);
}

TEST_CASE("sunit_decompose: worked cases") {
    const quad_field K = make_field(2);
    const s_unit_basis basis = make_s_unit_basis(K, {7});
    const place w1 = nonarch_place(K, 7, splitting::split, 1);
    const place w2 = nonarch_place(K, 7, splitting::split, 2);
    const field_element eps = make_element(K, rational(1), rational(1));
    const field_element b2 = make_element(K, rational(3), rational(1));

    const sunit_decomposition d7 = sunit_decompose(from_rational(K, rational(7)), basis);
    CHECK(d7.torsion == from_rational(K, rational(1)));
    CHECK(d7.unit_exponents[0] == 0);
    CHECK(d7.generator_exponents.at(w1) == 1);
    CHECK(d7.generator_exponents.at(w2) == 1);

    // -(1+sqrt2)(3+sqrt2)^2.
    const field_element x = -(eps * b2 * b2);
    const sunit_decomposition dx = sunit_decompose(x, basis);
    CHECK(dx.torsion == from_rational(K, rational(-1)));
    CHECK(dx.unit_exponents[0] == 1);
    CHECK(dx.generator_exponents.at(w1) == 0);
    CHECK(dx.generator_exponents.at(w2) == 2);

    // 1/(3-sqrt2) carries exponent -1 at the conjugate place.
    const sunit_decomposition dinv =
        sunit_decompose(from_rational(K, rational(1)) / conj(b2), basis);
    CHECK(dinv.unit_exponents[0] == 0);
    CHECK(dinv.generator_exponents.at(w1) == -1);
    CHECK(dinv.generator_exponents.at(w2) == 0);
}

TEST_CASE("sunit_decompose: round trip over a grid of exponents") {
    const quad_field K = make_field(2);
    const s_unit_basis basis = make_s_unit_basis(K, {7, 2});
    const field_element eps = basis.units[0];
    const place w2 = nonarch_place(K, 7, splitting::split, 2);
    const place ram = nonarch_place(K, 2, splitting::ramified);
    const field_element beta = basis.generators.at(w2);
    const field_element gam = basis.generators.at(ram);

    for (std::int64_t a = -3; a <= 3; a += 2)
        for (std::int64_t s1 = -2; s1 <= 2; ++s1)
            for (std::int64_t s2 = -2; s2 <= 2; s2 += 2)
                for (int sign = -1; sign <= 1; sign += 2) {
                    field_element x = pow(eps, a) * pow(beta, s1) * pow(gam, s2);
                    if (sign < 0)
                        x = -x;
                    const sunit_decomposition d = sunit_decompose(x, basis);
                    CHECK(d.torsion == from_rational(K, rational(sign)));
                    CHECK(d.unit_exponents[0] == a);
                    CHECK(d.generator_exponents.at(w2) == s1);
                    CHECK(d.generator_exponents.at(ram) == s2);
                }
}

TEST_CASE("sunit_decompose: torsion in an imaginary field") {
    const quad_field K = make_field(-1);
    const s_unit_basis basis = make_s_unit_basis(K, {2});
    const field_element i = make_element(K, rational(0), rational(1));
    const field_element g = basis.generators.at(nonarch_place(K, 2, splitting::ramified));

    const field_element x = i * pow(g, 3);
    const sunit_decomposition d = sunit_decompose(x, basis);
    CHECK(d.torsion == i);
    CHECK(d.unit_exponents.empty());
    CHECK(d.generator_exponents.at(nonarch_place(K, 2, splitting::ramified)) == 3);
}

TEST_CASE("sunit_decompose: error paths") {
    const quad_field K = make_field(2);
    const s_unit_basis b17 = make_s_unit_basis(K, {17});
    CHECK_THROWS_AS(sunit_decompose(make_element(K, rational(3), rational(1)), b17),
                    not_s_unit_error);
    CHECK_THROWS_AS(sunit_decompose(from_rational(K, rational(5)), b17), not_s_unit_error);
    CHECK_THROWS_AS(sunit_decompose(from_rational(K, rational(0)), b17), zero_element_error);

    // A doctored basis whose generator is a square forces a half-integer
    // exponent.
    s_unit_basis doctored = make_s_unit_basis(K, {7});
    const place w2 = nonarch_place(K, 7, splitting::split, 2);
    doctored.generators[w2] = pow(doctored.generators.at(w2), 2);
    CHECK_THROWS_AS(sunit_decompose(make_element(K, rational(3), rational(1)), doctored),
                    non_integral_exponent_error);
}

namespace {

std::map<place, double> example_y(std::int64_t bound) {
    const quad_field K = make_field(2);
    const consistent_map m = sqrt2_example(bound).map;
    std::map<place, double> y;
    for (const place& w : places_above(K, q_infinity()))
        y[w] = evaluate_at(m, w).to_double(0);
    for (std::int64_t p = 2; p <= bound; ++p) {
        if (!is_small_prime(p))
            continue;
        for (const place& w : places_above_prime(K, p))
            y[w] = evaluate_at(m, w).to_double(w.p);
    }
    return y;
}

} // namespace

TEST_CASE("krational accepts the worked example and y = 0") {
    const quad_field K = make_field(2);
    const krational_report rep = krational_check(K, example_y(20), 20, 1000000, 1e-9);
    CHECK(rep.all_pass);
    // Condition (i): A.y is the rational 2.
    REQUIRE(!rep.quantities.empty());
    CHECK(rep.quantities[0].label.find("(i)") != std::string::npos);
    REQUIRE(rep.quantities[0].detected.has_value());
    CHECK(*rep.quantities[0].detected == 2);
    CHECK(rep.verdict.find("max_den") != std::string::npos);

    std::map<place, double> zero;
    zero[arch_place(K, 1)] = 0.0;
    zero[arch_place(K, 2)] = 0.0;
    const krational_report rz = krational_check(K, zero, 20, 1000000, 1e-9);
    CHECK(rz.all_pass);
}

TEST_CASE("krational rejects the lambda-arch variant at bounded denominators") {
    const quad_field K = make_field(2);
    std::map<place, double> y;
    y[arch_place(K, 1)] = 0.5;
    y[arch_place(K, 2)] = 0.5;

    // max_den 10^3 discriminates: (1/2)log 7 has no rational approximation
    // with denominator <= 1000 within 1e-9.
    const krational_report rep = krational_check(K, y, 20, 1000, 1e-9);
    CHECK(!rep.all_pass);
    bool failed_at_7 = false;
    for (const krational_quantity& q : rep.quantities)
        if (!q.pass && q.label.find(" 7:split") != std::string::npos) {
            failed_at_7 = true;
            CHECK(q.value == doctest::Approx(0.5 * std::log(7.0)).epsilon(1e-12));
            CHECK(!q.detected.has_value());
        }
    CHECK(failed_at_7);

    // At max_den 10^6 every real number has a convergent within 1e-9, so the
    // same variant passes vacuously. Pinned as documentation: the check is a
    // bounded search, and only discriminating parameters make it meaningful.
    const krational_report loose = krational_check(K, y, 20, 1000000, 1e-9);
    CHECK(loose.all_pass);
}

TEST_CASE("sqrt2_example: frozen table, antisymmetry, verification flags") {
    const sqrt2_result ex = sqrt2_example(71);
    CHECK(ex.verified);
    CHECK(ex.antisymmetry_max == 0.0);
    CHECK(ex.max_cq == 0.0);
    REQUIRE(ex.rows.size() == 8);

    CHECK(ex.rows[0].v.is_arch());
    CHECK(!ex.rows[0].beta.has_value());
    CHECK(ex.rows[0].c_value == doctest::Approx(1.13459265711).epsilon(1e-9));

    const quad_field K = make_field(2);
    struct expected_row {
        std::int64_t p;
        int index;
        rational a, b;
        double c;
    };
    const std::vector<expected_row> table = {
        {7, 2, rational(3), rational(1), 0.596912637438},
        {17, 2, rational(5), rational(2), 0.513515643438},
        {23, 2, rational(5), rational(1), 0.210432344973},
        {31, 2, rational(7), rational(3), 0.464358820276},
        {41, 2, rational(7), rational(2), 0.261831394104},
        {47, 2, rational(7), rational(1), 0.120732866683},
        {71, 2, rational(11), rational(5), 0.406158916835},
    };
    for (std::size_t i = 0; i < table.size(); ++i) {
        const sqrt2_row& row = ex.rows[i + 1];
        const expected_row& want = table[i];
        CHECK(row.v.p == want.p);
        REQUIRE(row.beta.has_value());
        CHECK(*row.beta == make_element(K, want.a, want.b));
        CHECK(row.c_value == doctest::Approx(want.c).epsilon(1e-9));
        CHECK(valuation(*row.beta, row.v) == 1);
    }

    // The independently cross-checked row carries its note; others are bare.
    CHECK(!ex.rows[3].note.empty()); // p = 23
    CHECK(ex.rows[1].note.empty());

    CHECK_THROWS_AS(sqrt2_example(5), cmap_error);
}
