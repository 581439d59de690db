#include "warpdist/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <set>
#include <stdexcept>

namespace warpdist {

namespace {

double clampd(double v, double lo, double hi) { return std::min(std::max(v, lo), hi); }

}  // namespace

std::vector<PointPair> PairSampler::pairs(const ProductSpec& spec,
                                          const WarpProfile* profile) const {
    std::vector<PointPair> out;
    const double t0 = spec.t0, t1 = spec.t1, L = spec.base.extent;
    const bool circle = spec.base.kind == BaseKind::Circle;
    auto pt = [&](double x, double y) {
        return spec.make_point(clampd(x, t0, t1), circle ? y : clampd(y, 0.0, L));
    };

    if (mode == Mode::Grid) {
        std::vector<SpacePoint> nodes;
        const int r = std::max(grid_res, 2);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < r; ++j)
                nodes.push_back(pt(t0 + (t1 - t0) * i / (r - 1), L * j / (r - 1)));
        for (const auto& a : nodes)
            for (const auto& b : nodes) out.emplace_back(a, b);
        return out;
    }

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> ux(t0, t1), uy(0.0, L);
    auto random_pair = [&] { return PointPair{pt(ux(rng), uy(rng)), pt(ux(rng), uy(rng))}; };

    if (mode == Mode::Adversarial) {
        std::vector<double> special_x = {t0, t1};
        if (profile) {
            for (double b : profile->breakpoints()) special_x.push_back(b);
            for (const auto& [x, v] : profile->overrides()) special_x.push_back(x);
            for (std::size_t i = 0; i < profile->strip_count(); ++i)
                special_x.push_back(0.5 * (profile->strip_lo(i) + profile->strip_hi(i)));
        }
        std::sort(special_x.begin(), special_x.end());
        special_x.erase(std::unique(special_x.begin(), special_x.end()), special_x.end());

        const double seps[] = {0.0,      1e-4 * L, 1e-3 * L, 0.01 * L,
                               0.1 * L,  0.25 * L, 0.5 * L,  0.9 * L};
        for (double sx : special_x) {
            for (double y0 : {0.0, 0.25 * L, 0.5 * L}) {
                for (double dy : seps) {
                    if (!circle && y0 + dy > L) continue;
                    out.emplace_back(pt(sx, y0), pt(sx, y0 + dy));  // pure-fiber pair
                }
            }
        }
        // boundary and corner pairs
        for (double ya : {0.0, 0.5 * L, L * (circle ? 0.75 : 1.0)})
            for (double yb : {0.0, 0.5 * L, L * (circle ? 0.75 : 1.0)}) {
                out.emplace_back(pt(t0, ya), pt(t1, yb));
                out.emplace_back(pt(t0, ya), pt(t0 + 0.37 * (t1 - t0), yb));
                out.emplace_back(pt(t1, ya), pt(t0 + 0.61 * (t1 - t0), yb));
            }
        // near-breakpoint straddles
        if (profile) {
            for (double b : profile->breakpoints()) {
                const double eps = 1e-3 * (t1 - t0);
                out.emplace_back(pt(b - eps, 0.2 * L), pt(b + eps, 0.8 * L));
            }
        }
        while (out.size() < count) out.push_back(random_pair());
        return out;
    }

    out.reserve(count);
    while (out.size() < count) out.push_back(random_pair());
    return out;
}

SupDifference sup_difference(const MetricHandle& a, const MetricHandle& b,
                             std::span<const PointPair> pairs) {
    if (pairs.empty()) throw std::invalid_argument("sup_difference needs a nonempty sample");
    SupDifference best;
    best.value = -1.0;
    for (const auto& [p, q] : pairs) {
        const double diff = std::fabs(a(p, q) - b(p, q));
        if (diff > best.value) {
            best.value = diff;
            best.witness = {p, q};
        }
    }
    return best;
}

LipschitzEnvelope lipschitz_envelope(const MetricHandle& m, std::span<const PointPair> pairs,
                                     const ProductSpec& spec) {
    LipschitzEnvelope env;
    bool seen = false;
    for (const auto& [p, q] : pairs) {
        const double d = product_distance(p, q, spec);
        if (d < 1e-15) {
            ++env.skipped;
            continue;
        }
        const double r = m(p, q) / d;
        if (!seen) {
            env.c_est = env.big_c_est = r;
            seen = true;
        } else {
            env.c_est = std::min(env.c_est, r);
            env.big_c_est = std::max(env.big_c_est, r);
        }
    }
    if (!seen) throw std::invalid_argument("lipschitz_envelope needs at least one distinct pair");
    return env;
}

double almost_lipschitz_offset(const MetricHandle& m, double big_c,
                               std::span<const PointPair> pairs, const ProductSpec& spec) {
    double worst = 0.0;
    const double root2 = std::sqrt(2.0);
    for (const auto& [p, q] : pairs)
        worst = std::max(worst, m(p, q) - root2 * big_c * product_distance(p, q, spec));
    return worst;
}

std::vector<std::pair<double, double>> equicontinuity_modulus(const MetricHandle& m,
                                                              std::span<const double> deltas,
                                                              std::span<const PointPair> pairs,
                                                              const ProductSpec& spec) {
    for (std::size_t i = 1; i < deltas.size(); ++i)
        if (!(deltas[i] > deltas[i - 1]))
            throw std::invalid_argument("deltas must be positive and increasing");
    if (!deltas.empty() && !(deltas.front() > 0.0))
        throw std::invalid_argument("deltas must be positive and increasing");

    const double t0 = spec.t0, t1 = spec.t1, L = spec.base.extent;
    const bool circle = spec.base.kind == BaseKind::Circle;
    auto pt = [&](double x, double y) {
        return spec.make_point(clampd(x, t0, t1), circle ? y : clampd(y, 0.0, L));
    };
    // perturbation templates: (dxp, dyp, dxq, dyq) scaled so the tuple
    // distance stays below delta
    constexpr double kTemplates[][4] = {
        {0.0, 0.0, 0.0, 0.99},  {0.0, 0.0, 0.99, 0.0},  {0.0, 0.69, 0.0, 0.69},
        {0.69, 0.0, -0.69, 0.0}, {0.0, -0.69, 0.0, 0.69}, {0.49, 0.49, -0.49, 0.49},
        {0.0, 0.0, 0.69, 0.69},
    };
    std::vector<std::pair<double, double>> table;
    for (double delta : deltas) {
        double omega = 0.0;
        for (const auto& [p, q] : pairs) {
            const double base = m(p, q);
            for (const auto& t : kTemplates) {
                const SpacePoint p2 = pt(p.x + t[0] * delta, p.fiber + t[1] * delta);
                const SpacePoint q2 = pt(q.x + t[2] * delta, q.fiber + t[3] * delta);
                if (pair_distance(p, q, p2, q2, spec) >= delta) continue;
                omega = std::max(omega, std::fabs(base - m(p2, q2)));
            }
        }
        table.emplace_back(delta, omega);
    }
    return table;
}

double covering_radius(std::vector<double> points, double t0, double t1) {
    if (points.empty()) throw std::invalid_argument("covering_radius needs a nonempty set");
    std::sort(points.begin(), points.end());
    double worst = std::max(points.front() - t0, t1 - points.back());
    for (std::size_t i = 1; i < points.size(); ++i)
        worst = std::max(worst, 0.5 * (points[i] - points[i - 1]));
    return std::max(worst, 0.0);
}

DenseSubset make_dense_subset(std::vector<double> points, double t0, double t1) {
    DenseSubset q;
    q.claimed_radius = covering_radius(points, t0, t1);
    std::sort(points.begin(), points.end());
    q.points = std::move(points);
    return q;
}

namespace {

// pointwise f >= g, checked on the merged strip partition and at overrides
void require_dominates(const WarpProfile& f, const WarpProfile& g) {
    std::set<double> cuts(f.breakpoints().begin(), f.breakpoints().end());
    cuts.insert(g.breakpoints().begin(), g.breakpoints().end());
    std::vector<double> xs(cuts.begin(), cuts.end());
    for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
        const double mid = 0.5 * (xs[i] + xs[i + 1]);
        if (f.evaluate(mid) < g.evaluate(mid))
            throw std::invalid_argument("monotonicity hypothesis violated at x = " +
                                        std::to_string(mid));
    }
    auto check_point = [&](double x) {
        if (f.evaluate(x) < g.evaluate(x))
            throw std::invalid_argument("monotonicity hypothesis violated at x = " +
                                        std::to_string(x));
    };
    for (double x : xs) check_point(x);
    for (const auto& [x, v] : f.overrides()) check_point(x);
    for (const auto& [x, v] : g.overrides()) check_point(x);
}

}  // namespace

MonotonicityReport monotonicity_check(const WarpProfile& f, const WarpProfile& g,
                                      std::span<const PointPair> pairs, const ProductSpec& spec,
                                      const CandidateOptions& opt) {
    require_dominates(f, g);
    MonotonicityReport rep;
    bool first = true;
    for (const auto& [p, q] : pairs) {
        const double df = distance_candidates(f, p, q, spec, opt).value;
        const double dg = distance_candidates(g, p, q, spec, opt).value;
        const double margin = df - dg;
        if (first || margin < rep.worst_margin) {
            rep.worst_margin = margin;
            rep.witness = {p, q};
            first = false;
        }
    }
    rep.pass = !first && rep.worst_margin >= -2.0 * opt.tol;
    return rep;
}

bool ConvergenceReport::all_pass() const {
    for (const auto& r : records)
        if (!r.pass) return false;
    return !records.empty();
}

FamilyLimitRule registry_limit(Family f) {
    switch (f) {
        case Family::Constant: return {"euclid", 0.0, false};
        case Family::S: return {"quotient", 4.0, false};
        case Family::H: return {"quotient", 4.0, false};
        case Family::Z: return {"quotient", 2.0, false};
        case Family::K: return {"euclid", 2.0, false};
        case Family::W: return {"euclid", 2.0, false};
        case Family::V: return {"blowup", std::nullopt, true};
    }
    throw std::invalid_argument("unknown warping family");
}

std::optional<double> fit_decay_exponent(const std::vector<ConvergenceRecord>& records,
                                         double floor) {
    std::vector<std::pair<double, double>> pts;
    for (const auto& r : records)
        if (r.sup_diff > floor && r.n > 0) pts.emplace_back(std::log(r.n), std::log(r.sup_diff));
    if (pts.size() < 3) return std::nullopt;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (auto [x, y] : pts) {
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double n = static_cast<double>(pts.size());
    const double denom = n * sxx - sx * sx;
    if (std::fabs(denom) < 1e-12) return std::nullopt;
    return (n * sxy - sx * sy) / denom;
}

ConvergenceReport convergence_report(Family family, const std::vector<int>& n_list, double alpha,
                                     const MetricHandle& limit, const PairSampler& sampler,
                                     const SolverParams& params) {
    const FamilyLimitRule rule = registry_limit(family);
    ConvergenceReport report;
    report.family = family_name(family);
    report.alpha = alpha;
    report.limit = limit.name;

    double prev_sup = std::numeric_limits<double>::infinity();
    for (int n : n_list) {
        ConvergenceRecord rec;
        rec.n = n;
        try {
            const WarpProfile profile = family_member(family, n, alpha);
            const MetricHandle handle = metric_handle_from_profile(
                profile, SolverKind::Candidate, limit.domain, params);
            const auto pair_set = sampler.pairs(limit.domain, &profile);
            const auto sup = sup_difference(handle, limit, pair_set);
            const auto env = lipschitz_envelope(handle, pair_set, limit.domain);
            rec.sup_diff = sup.value;
            rec.witness = sup.witness;
            rec.c_est = env.c_est;
            rec.big_c_est = env.big_c_est;
            rec.offset = almost_lipschitz_offset(handle, 1.0, pair_set, limit.domain);
            rec.budget = handle.error_budget + limit.error_budget;
            if (rule.bound_scale.has_value())
                rec.pass = rec.sup_diff <= *rule.bound_scale / n + rec.budget;
            else
                rec.pass = rec.sup_diff <= prev_sup + rec.budget;
            prev_sup = rec.sup_diff;
        } catch (const resource_error&) {
            rec.pass = false;  // keep the sweep going; the record stays marked
        }
        report.records.push_back(rec);
    }
    double floor = 0.0;
    for (const auto& r : report.records) floor = std::max(floor, 4.0 * r.budget);
    report.fitted_exponent = fit_decay_exponent(report.records, std::max(floor, 1e-12));
    return report;
}

CounterexampleResult lipschitz_counterexample(int n, double alpha, const CandidateOptions& opt) {
    if (n < 2) throw std::invalid_argument("counterexample needs n >= 2");
    const double rate = std::pow(static_cast<double>(n), alpha);
    if (!(rate > 1.0 + 1e-9))
        throw std::invalid_argument("counterexample needs n^alpha > 1");
    const double sep = 2.0 / (std::pow(static_cast<double>(n), alpha + 1.0) * (rate - 1.0));
    if (sep > 0.5) throw std::invalid_argument("counterexample separation leaves the fiber");

    const ProductSpec unit = ProductSpec::unit_square();
    CounterexampleResult res;
    res.p = SpacePoint{0.0, 0.25};
    res.q = SpacePoint{0.0, 0.25 + sep};
    const WarpProfile profile = family_member(Family::K, n, alpha);
    res.warped = distance_candidates(profile, res.p, res.q, unit, opt).value;
    res.euclid = product_distance(res.p, res.q, unit);
    res.ratio = res.warped / res.euclid;
    return res;
}

}  // namespace warpdist
