#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "warpdist/oracles.hpp"
#include "warpdist/profile.hpp"

namespace warpdist {

using PointPair = std::pair<SpacePoint, SpacePoint>;

/// Deterministic pair generators that discretize "for all p, q".
///
/// Adversarial mode always includes boundary pairs (x in {t0, t1}),
/// pure-fiber pairs at every structurally special abscissa (breakpoints,
/// override keys, strip interiors) across a spread of fiber separations,
/// and seeded random fill. Uniform sampling alone misses the thin-strip
/// counterexample pairs with overwhelming probability.
struct PairSampler {
    enum class Mode { Grid, Random, Adversarial };

    Mode mode = Mode::Random;
    std::uint64_t seed = 1;
    std::size_t count = 256;  // random / adversarial target size
    int grid_res = 9;         // points per factor in grid mode

    std::vector<PointPair> pairs(const ProductSpec& spec,
                                 const WarpProfile* profile = nullptr) const;
};

struct SupDifference {
    double value = 0.0;
    PointPair witness;
};

/// Max of |a - b| over the sampled pairs; a lower bound on the true sup.
SupDifference sup_difference(const MetricHandle& a, const MetricHandle& b,
                             std::span<const PointPair> pairs);

struct LipschitzEnvelope {
    double c_est = 0.0;
    double big_c_est = 0.0;
    std::size_t skipped = 0;  // coincident pairs encountered and dropped
};

/// Min and max of m(p,q) / d(p,q) over the sample.
LipschitzEnvelope lipschitz_envelope(const MetricHandle& m, std::span<const PointPair> pairs,
                                     const ProductSpec& spec);

/// Smallest additive slack making m <= sqrt(2) C d + slack hold on the sample.
double almost_lipschitz_offset(const MetricHandle& m, double big_c,
                               std::span<const PointPair> pairs, const ProductSpec& spec);

/// For each delta: max |m(p,q) - m(p',q')| over sampled tuples with
/// pair_distance((p,q),(p',q')) < delta.
std::vector<std::pair<double, double>> equicontinuity_modulus(const MetricHandle& m,
                                                              std::span<const double> deltas,
                                                              std::span<const PointPair> pairs,
                                                              const ProductSpec& spec);

/// max over x in [t0,t1] of the distance to the set.
double covering_radius(std::vector<double> points, double t0, double t1);

/// Bundles points with their computed covering radius.
DenseSubset make_dense_subset(std::vector<double> points, double t0, double t1);

struct MonotonicityReport {
    double worst_margin = 0.0;  // min over pairs of d_f - d_g
    PointPair witness;
    bool pass = false;
};

/// Verifies f >= g pointwise, then checks d_f >= d_g - 2 tol on the sample.
MonotonicityReport monotonicity_check(const WarpProfile& f, const WarpProfile& g,
                                      std::span<const PointPair> pairs, const ProductSpec& spec,
                                      const CandidateOptions& opt = {});

struct ConvergenceRecord {
    int n = 0;
    double sup_diff = 0.0;
    PointPair witness;
    double c_est = 0.0;
    double big_c_est = 0.0;
    double offset = 0.0;
    double budget = 0.0;
    bool pass = false;
};

struct ConvergenceReport {
    std::string family;
    double alpha = 1.0;
    std::string limit;
    std::vector<ConvergenceRecord> records;
    std::optional<double> fitted_exponent;  // empty: insufficient data

    bool all_pass() const;
};

struct FamilyLimitRule {
    std::string limit;                      // oracle name
    std::optional<double> bound_scale;      // sup_diff <= scale / n (+ budget)
    bool decreasing_only = false;           // pass = nonincreasing along the sweep
};

/// Which limit each family converges to, and the per-n acceptance rule.
FamilyLimitRule registry_limit(Family f);

ConvergenceReport convergence_report(Family family, const std::vector<int>& n_list, double alpha,
                                     const MetricHandle& limit, const PairSampler& sampler,
                                     const SolverParams& params = {});

/// Least-squares slope of log(sup_diff) against log(n). Empty when fewer
/// than three usable points remain.
std::optional<double> fit_decay_exponent(const std::vector<ConvergenceRecord>& records,
                                         double floor);

struct CounterexampleResult {
    SpacePoint p, q;
    double warped = 0.0;
    double euclid = 0.0;
    double ratio = 0.0;
};

/// The no-Lipschitz witness pair for k_n: a pure-fiber pair at x = 0 with
/// separation 2 / (n^(a+1) (n^a - 1)), whose distance ratio equals n^a.
CounterexampleResult lipschitz_counterexample(int n, double alpha,
                                              const CandidateOptions& opt = {});

}  // namespace warpdist
