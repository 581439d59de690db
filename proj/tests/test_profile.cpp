#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "warpdist/profile.hpp"

using namespace warpdist;

TEST_CASE("evaluate is override-aware and strips are half-open") {
    SUBCASE("k_n blow-up strip") {
        const WarpProfile k10 = family_member(Family::K, 10, 1.0);
        CHECK(k10.evaluate(0.05) == doctest::Approx(10.0));
        CHECK(k10.evaluate(0.5) == doctest::Approx(1.0));
        CHECK(k10.evaluate(0.1) == doctest::Approx(1.0));  // right-continuous at 1/n
    }
    SUBCASE("z_n override at the origin") {
        const WarpProfile z4 = family_member(Family::Z, 4);
        CHECK(z4.evaluate(0.0) == doctest::Approx(0.25));
        CHECK(z4.evaluate(1e-9) == doctest::Approx(1.0));
    }
    SUBCASE("out of range") {
        const WarpProfile c = family_member(Family::Constant, 1);
        CHECK_THROWS_AS(c.evaluate(1.5), std::domain_error);
        CHECK_THROWS_AS(c.evaluate(-0.5), std::domain_error);
    }
}

TEST_CASE("family members match their case definitions") {
    SUBCASE("h_5") {
        const WarpProfile h5 = family_member(Family::H, 5);
        CHECK(h5.breakpoints() == std::vector<double>{0.0, 0.2, 0.4, 1.0});
        CHECK(h5.strip_value(0) == doctest::Approx(1.0));
        CHECK(h5.strip_value(1) == doctest::Approx(0.2));
        CHECK(h5.strip_value(2) == doctest::Approx(1.0));
    }
    SUBCASE("v_3 with alpha 2") {
        const WarpProfile v3 = family_member(Family::V, 3, 2.0);
        CHECK(v3.breakpoints() == std::vector<double>{0.0, 0.5, 1.0});
        CHECK(v3.strip_value(0) == doctest::Approx(9.0));
        CHECK(v3.strip_value(1) == doctest::Approx(1.0));
    }
    SUBCASE("constant") {
        const WarpProfile c = family_member(Family::Constant, 7);
        CHECK(c.strip_count() == 1);
        CHECK(c.strip_value(0) == doctest::Approx(1.0));
    }
    SUBCASE("degenerate small n still yields valid profiles") {
        for (Family f : family_registry()) {
            for (int n : {1, 2}) {
                const WarpProfile p = family_member(f, n, 1.0);
                CHECK(p.t0() == 0.0);
                CHECK(p.t1() == 1.0);
                CHECK(p.global_bounds().first > 0.0);
            }
        }
    }
    SUBCASE("bad arguments") {
        CHECK_THROWS_AS(family_member(Family::K, 0, 1.0), std::invalid_argument);
        CHECK_THROWS_AS(family_member(Family::K, 4, -1.0), std::invalid_argument);
        CHECK_THROWS_AS(family_from_name("nope"), std::invalid_argument);
    }
}

TEST_CASE("infimum over an interval") {
    const WarpProfile z4 = family_member(Family::Z, 4);
    CHECK(z4.infimum_on(0.0, 0.5) == doctest::Approx(0.25));
    CHECK(z4.infimum_on(0.25, 0.5) == doctest::Approx(1.0));
    const WarpProfile h5 = family_member(Family::H, 5);
    CHECK(h5.infimum_on(0.3, 1.0) == doctest::Approx(0.2));
    CHECK(h5.infimum_on(0.4, 1.0) == doctest::Approx(1.0));
    const WarpProfile c = family_member(Family::Constant, 1);
    CHECK(c.infimum_on(0.1, 0.9) == doctest::Approx(1.0));
    CHECK_THROWS_AS(c.infimum_on(0.9, 0.1), std::domain_error);
}

TEST_CASE("supremum over a dense subset") {
    const WarpProfile k10 = family_member(Family::K, 10, 1.0);
    CHECK(supremum_on_set(k10, DenseSubset{{0.15, 0.5, 0.85}, 0.0}) == doctest::Approx(1.0));
    CHECK(supremum_on_set(k10, DenseSubset{{0.05, 0.5}, 0.0}) == doctest::Approx(10.0));
    const WarpProfile c = family_member(Family::Constant, 1);
    CHECK(supremum_on_set(c, DenseSubset{{0.1, 0.9}, 0.0}) == doctest::Approx(1.0));
    CHECK_THROWS_AS(supremum_on_set(c, DenseSubset{}), std::invalid_argument);
    CHECK_THROWS_AS(supremum_on_set(c, DenseSubset{{2.0}, 0.0}), std::domain_error);
}

TEST_CASE("global bounds") {
    CHECK(family_member(Family::H, 5).global_bounds() == std::pair{0.2, 1.0});
    CHECK(family_member(Family::W, 3, 1.0).global_bounds() == std::pair{1.0, 3.0});
    CHECK(family_member(Family::Constant, 1).global_bounds() == std::pair{1.0, 1.0});
}

TEST_CASE("pointwise dominance facts used by the comparison theorems") {
    // z_n dominates the collapsed limit pointwise; every family stays
    // uniformly positive; the grown families never dip below 1
    for (int n : {2, 5, 17}) {
        const WarpProfile zn = family_member(Family::Z, n);
        CHECK(zn.evaluate(0.0) >= 0.0);
        for (double x : {1e-6, 0.3, 1.0}) CHECK(zn.evaluate(x) >= 1.0);
    }
    for (Family f : family_registry())
        for (int n : {2, 9})
            CHECK(family_member(f, n, 1.5).global_bounds().first > 0.0);
    for (Family f : {Family::K, Family::W, Family::V})
        for (int n : {2, 6}) {
            const WarpProfile p = family_member(f, n, 0.5);
            for (double x : {0.0, 0.2, 0.5, 0.9, 1.0}) CHECK(p.evaluate(x) >= 1.0);
        }
}

TEST_CASE("evaluate is right-continuous at non-override breakpoints") {
    const WarpProfile h5 = family_member(Family::H, 5);
    for (double b : {0.2, 0.4}) {
        const double at = h5.evaluate(b);
        const double right = h5.evaluate(b + 1e-12);
        CHECK(at == doctest::Approx(right).epsilon(1e-14));
    }
}

TEST_CASE("profile literal round trip and validation") {
    const std::string text =
        "breakpoints = 0,0.2,0.4,1\n"
        "values = 1,0.2,1\n"
        "override 0 = 0.25\n";
    const WarpProfile p = parse_profile(text);
    CHECK(p.breakpoints() == std::vector<double>{0.0, 0.2, 0.4, 1.0});
    CHECK(p.evaluate(0.0) == doctest::Approx(0.25));
    CHECK(p.evaluate(0.3) == doctest::Approx(0.2));

    const WarpProfile again = parse_profile(format_profile(p));
    CHECK(again.breakpoints() == p.breakpoints());
    CHECK(again.evaluate(0.0) == doctest::Approx(0.25));

    CHECK_THROWS_AS(parse_profile("values = 1\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_profile("breakpoints = 0,1\nvalues = -1\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_profile("breakpoints = 0,0.5,0.4,1\nvalues = 1,1,1\n"),
                    std::invalid_argument);
    CHECK_THROWS_AS(parse_profile("breakpoints = 0,1\nvalues = 1\noverride 3 = 1\n"),
                    std::invalid_argument);
    CHECK_THROWS_AS(parse_profile("breakpoints = 0,1\nvalues = 1\njunk\n"),
                    std::invalid_argument);
}
