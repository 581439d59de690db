#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "support.hpp"
#include "warpdist/analysis.hpp"

using namespace warpdist;

namespace {
const ProductSpec kUnit = ProductSpec::unit_square();

MetricHandle candidate_handle(const WarpProfile& profile) {
    return metric_handle_from_profile(profile, SolverKind::Candidate, kUnit);
}
}  // namespace

TEST_CASE("samplers are deterministic and adversarial coverage is structural") {
    const WarpProfile k10 = family_member(Family::K, 10, 1.0);
    PairSampler s{PairSampler::Mode::Adversarial, 9, 300, 9};
    const auto a = s.pairs(kUnit, &k10);
    const auto b = s.pairs(kUnit, &k10);
    REQUIRE(a.size() == b.size());
    CHECK(a.size() >= 300);
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].first.x == b[i].first.x);
        CHECK(a[i].second.fiber == b[i].second.fiber);
    }
    bool boundary = false, pure_fiber_at_zero = false, override_absc = false;
    for (const auto& [p, q] : a) {
        boundary = boundary || p.x == 0.0 || p.x == 1.0 || q.x == 0.0 || q.x == 1.0;
        pure_fiber_at_zero = pure_fiber_at_zero || (p.x == 0.0 && q.x == 0.0);
        override_absc = override_absc || p.x == 0.1;  // k_10 breakpoint
    }
    CHECK(boundary);
    CHECK(pure_fiber_at_zero);
    CHECK(override_absc);
}

TEST_CASE("sup difference") {
    const MetricHandle euclid = oracle_lookup("euclid");
    const MetricHandle taxi = oracle_lookup("taxi");
    PairSampler grid{PairSampler::Mode::Grid, 1, 0, 33};
    const auto pairs = grid.pairs(kUnit);

    SUBCASE("identical handles") {
        CHECK(sup_difference(euclid, euclid, pairs).value == 0.0);
    }
    SUBCASE("taxi vs euclid attains 2 - sqrt(2) at the corners") {
        const auto sup = sup_difference(taxi, euclid, pairs);
        CHECK(sup.value == doctest::Approx(2.0 - std::sqrt(2.0)).epsilon(1e-12));
        CHECK(product_distance(sup.witness.first, sup.witness.second, kUnit) ==
              doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
    }
    SUBCASE("k_n handle approaches euclid at rate 2/n") {
        const WarpProfile k50 = family_member(Family::K, 50, 1.0);
        PairSampler adv{PairSampler::Mode::Adversarial, 5, 400, 9};
        const auto sup = sup_difference(candidate_handle(k50), euclid, adv.pairs(kUnit, &k50));
        CHECK(sup.value <= 2.0 / 50 + 1e-6);
    }
    SUBCASE("empty sample") {
        CHECK_THROWS_AS(sup_difference(euclid, euclid, std::vector<PointPair>{}),
                        std::invalid_argument);
    }
}

TEST_CASE("lipschitz envelope") {
    PairSampler grid{PairSampler::Mode::Grid, 1, 0, 17};
    const auto pairs = grid.pairs(kUnit);
    SUBCASE("euclid pins both constants at one") {
        const auto env = lipschitz_envelope(oracle_lookup("euclid"), pairs, kUnit);
        CHECK(env.c_est == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(env.big_c_est == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(env.skipped > 0);  // the grid sample contains coincident pairs
    }
    SUBCASE("taxi fills the sandwich") {
        const auto env = lipschitz_envelope(oracle_lookup("taxi"), pairs, kUnit);
        CHECK(env.c_est >= 1.0 - 1e-12);
        CHECK(env.big_c_est <= std::sqrt(2.0) + 1e-12);
        CHECK(env.big_c_est >= std::sqrt(2.0) - 1e-3);  // attained near diagonal pairs
    }
    SUBCASE("h_n stays above its infimum") {
        const WarpProfile h5 = family_member(Family::H, 5);
        PairSampler adv{PairSampler::Mode::Adversarial, 2, 250, 9};
        const auto env = lipschitz_envelope(candidate_handle(h5), adv.pairs(kUnit, &h5), kUnit);
        CHECK(env.c_est >= 0.2 - 1e-9);
        CHECK(env.big_c_est <= std::sqrt(2.0) + 1e-9);
    }
}

TEST_CASE("almost lipschitz offset") {
    PairSampler adv{PairSampler::Mode::Adversarial, 3, 300, 9};
    SUBCASE("euclid needs no slack") {
        const auto pairs = adv.pairs(kUnit);
        CHECK(almost_lipschitz_offset(oracle_lookup("euclid"), 1.0, pairs, kUnit) == 0.0);
    }
    SUBCASE("k_n slack is bounded by twice the covering radius") {
        const WarpProfile k10 = family_member(Family::K, 10, 1.0);
        const auto pairs = adv.pairs(kUnit, &k10);
        CHECK(almost_lipschitz_offset(candidate_handle(k10), 1.0, pairs, kUnit) <=
              2.0 / 10 + 1e-6);
    }
    SUBCASE("k_n alpha=2 slack is positive and decreasing in n") {
        double prev = 1e9;
        for (int n : {4, 8, 16, 32}) {
            const WarpProfile kn = family_member(Family::K, n, 2.0);
            const auto pairs = adv.pairs(kUnit, &kn);
            const double offset = almost_lipschitz_offset(candidate_handle(kn), 1.0, pairs, kUnit);
            CHECK(offset <= 2.0 / n + 1e-6);
            CHECK(offset < prev);
            prev = offset;
        }
        CHECK(prev > 0.0);
    }
}

TEST_CASE("equicontinuity modulus") {
    PairSampler adv{PairSampler::Mode::Adversarial, 4, 150, 9};
    const std::vector<double> deltas{0.005, 0.01, 0.02};
    SUBCASE("euclid obeys the triangle bound") {
        const auto pairs = adv.pairs(kUnit);
        for (auto [delta, omega] :
             equicontinuity_modulus(oracle_lookup("euclid"), deltas, pairs, kUnit))
            CHECK(omega <= 2.0 * delta);
    }
    SUBCASE("h_n inherits the dense-bound Lipschitz modulus") {
        const WarpProfile h20 = family_member(Family::H, 20);
        const auto pairs = adv.pairs(kUnit, &h20);
        const auto table =
            equicontinuity_modulus(candidate_handle(h20), {0.01}, pairs, kUnit);
        CHECK(table[0].second <= 2.0 * std::sqrt(2.0) * 0.01 + 1e-6);
    }
    SUBCASE("k_n at the matched index escapes the euclid modulus, then relaxes") {
        // with n tied to 1/delta the thin strip contributes an additive 2/n
        // term, pushing the modulus visibly above any fixed-Lipschitz bound
        const double delta = 0.01;
        const WarpProfile k_tight = family_member(Family::K, 400, 1.0);
        const auto pairs = adv.pairs(kUnit, &k_tight);
        const auto tight =
            equicontinuity_modulus(candidate_handle(k_tight), {delta}, pairs, kUnit);
        CHECK(tight[0].second > 1.8 * delta);
        const WarpProfile k_loose = family_member(Family::K, 4000, 1.0);
        const auto pairs2 = adv.pairs(kUnit, &k_loose);
        const auto loose =
            equicontinuity_modulus(candidate_handle(k_loose), {delta}, pairs2, kUnit);
        CHECK(loose[0].second < tight[0].second);
    }
    SUBCASE("bad deltas") {
        const auto pairs = adv.pairs(kUnit);
        CHECK_THROWS_AS(
            equicontinuity_modulus(oracle_lookup("euclid"), {0.02, 0.01}, pairs, kUnit),
            std::invalid_argument);
    }
}

TEST_CASE("covering radius") {
    CHECK(covering_radius({0.0, 0.25, 0.5, 0.75, 1.0}, 0.0, 1.0) == doctest::Approx(0.125));
    CHECK(covering_radius({0.5}, 0.0, 1.0) == doctest::Approx(0.5));
    // k_10 strips restricted to [0.1, 1] at step 0.01 leave the blow-up strip bare
    std::vector<double> q;
    for (double x = 0.1; x <= 1.0 + 1e-12; x += 0.01) q.push_back(x);
    CHECK(covering_radius(q, 0.0, 1.0) == doctest::Approx(0.1).epsilon(1e-9));
    CHECK_THROWS_AS(covering_radius({}, 0.0, 1.0), std::invalid_argument);

    const DenseSubset dense = make_dense_subset({0.0, 0.5, 1.0}, 0.0, 1.0);
    CHECK(dense.claimed_radius == doctest::Approx(0.25));
}

TEST_CASE("monotonicity check") {
    PairSampler rnd{PairSampler::Mode::Random, 8, 100, 9};
    const auto pairs = rnd.pairs(kUnit);
    SUBCASE("k_n dominates the constant profile") {
        const auto rep = monotonicity_check(family_member(Family::K, 5, 1.0),
                                            family_member(Family::Constant, 1), pairs, kUnit);
        CHECK(rep.pass);
        CHECK(rep.worst_margin >= -2e-9);
    }
    SUBCASE("equal profiles sit at the margin") {
        const auto rep = monotonicity_check(family_member(Family::H, 6),
                                            family_member(Family::H, 6), pairs, kUnit);
        CHECK(rep.pass);
        CHECK(rep.worst_margin == doctest::Approx(0.0).epsilon(1e-9));
    }
    SUBCASE("constant profiles scale fiber-only pairs exactly") {
        const WarpProfile two({0.0, 1.0}, {2.0});
        const WarpProfile one({0.0, 1.0}, {1.0});
        for (double y : {0.2, 0.5, 0.9}) {
            const double df = distance_candidates(two, {0.3, 0.0}, {0.3, y}, kUnit).value;
            const double dg = distance_candidates(one, {0.3, 0.0}, {0.3, y}, kUnit).value;
            CHECK(df == doctest::Approx(2.0 * dg).epsilon(1e-12));
        }
        // closed form sqrt(dx^2 + 4 dy^2) for the doubled profile
        const double d = distance_candidates(two, {0.1, 0.1}, {0.5, 0.4}, kUnit).value;
        CHECK(d == doctest::Approx(std::sqrt(0.16 + 4.0 * 0.09)).epsilon(1e-12));
    }
    SUBCASE("violated hypothesis is a usage error") {
        CHECK_THROWS_AS(monotonicity_check(family_member(Family::Constant, 1),
                                           family_member(Family::K, 5, 1.0), pairs, kUnit),
                        std::invalid_argument);
    }
}

TEST_CASE("convergence report for k_n") {
    PairSampler adv{PairSampler::Mode::Adversarial, 6, 220, 9};
    const auto report = convergence_report(Family::K, {10, 50, 100}, 1.0,
                                           oracle_lookup("euclid"), adv);
    REQUIRE(report.records.size() == 3);
    CHECK(report.all_pass());
    CHECK(report.records[0].sup_diff <= 0.2 + 1e-6);
    CHECK(report.records[1].sup_diff <= 0.04 + 1e-6);
    CHECK(report.records[2].sup_diff <= 0.02 + 1e-6);
    CHECK(report.records[0].sup_diff > report.records[1].sup_diff);
    CHECK(report.records[1].sup_diff > report.records[2].sup_diff);
    REQUIRE(report.fitted_exponent.has_value());
    CHECK(*report.fitted_exponent == doctest::Approx(-1.0).epsilon(0.15));
}

TEST_CASE("convergence report for the constant family is flat") {
    PairSampler adv{PairSampler::Mode::Adversarial, 6, 150, 9};
    const auto report = convergence_report(Family::Constant, {1, 2}, 1.0,
                                           oracle_lookup("euclid"), adv);
    CHECK(report.all_pass());
    for (const auto& r : report.records) CHECK(r.sup_diff <= 1e-9);
    CHECK_FALSE(report.fitted_exponent.has_value());
}

TEST_CASE("convergence report for h_n against the quotient oracle") {
    PairSampler adv{PairSampler::Mode::Adversarial, 6, 200, 9};
    const auto report =
        convergence_report(Family::H, {20, 80}, 1.0, oracle_lookup("quotient"), adv);
    REQUIRE(report.records.size() == 2);
    CHECK(report.all_pass());
    CHECK(report.records[0].sup_diff <= 4.0 / 20 + 1e-6);
    CHECK(report.records[1].sup_diff <= 4.0 / 80 + 1e-6);
    CHECK(report.records[1].sup_diff < report.records[0].sup_diff);
}

TEST_CASE("lipschitz counterexample ratios") {
    SUBCASE("paper pair at n=4") {
        const auto res = lipschitz_counterexample(4, 1.0);
        CHECK(res.warped == doctest::Approx(1.0 / 6).epsilon(1e-9));
        CHECK(res.euclid == doctest::Approx(1.0 / 24).epsilon(1e-12));
        CHECK(res.ratio == doctest::Approx(4.0).epsilon(1e-6));
    }
    SUBCASE("n=8 cross-checked by the grid solver") {
        const auto res = lipschitz_counterexample(8, 1.0);
        CHECK(res.warped == doctest::Approx(1.0 / 28).epsilon(1e-9));
        CHECK(res.ratio == doctest::Approx(8.0).epsilon(1e-6));
        const WarpProfile k8 = family_member(Family::K, 8, 1.0);
        const auto grid = distance_grid(k8, res.p, res.q, kUnit, GridOptions{1.0 / 1024});
        CHECK(std::fabs(grid.value - res.warped) <= grid.error_bound);
    }
    SUBCASE("alpha=2 squares the ratio") {
        const auto res = lipschitz_counterexample(4, 2.0);
        CHECK(res.ratio == doctest::Approx(16.0).epsilon(1e-6));
        const WarpProfile k4 = family_member(Family::K, 4, 2.0);
        const auto grid = distance_grid(k4, res.p, res.q, kUnit, GridOptions{1.0 / 1024});
        CHECK(std::fabs(grid.value - res.warped) <= grid.error_bound);
    }
    SUBCASE("degenerate arguments") {
        CHECK_THROWS_AS(lipschitz_counterexample(1, 1.0), std::invalid_argument);
        CHECK_THROWS_AS(lipschitz_counterexample(4, 1e-12), std::invalid_argument);
    }
}

TEST_CASE("envelope constants of k_n grow without bound in n") {
    PairSampler adv{PairSampler::Mode::Adversarial, 11, 260, 9};
    for (int n : {4, 8}) {
        const WarpProfile kn = family_member(Family::K, n, 1.0);
        const auto env = lipschitz_envelope(candidate_handle(kn), adv.pairs(kUnit, &kn), kUnit);
        CHECK(env.big_c_est >= n - 1e-6);
    }
}
