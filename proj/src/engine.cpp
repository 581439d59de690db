#include "warpdist/engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace warpdist {

namespace {

void require_consistent(const WarpProfile& profile, const ProductSpec& spec) {
    if (std::fabs(profile.t0() - spec.t0) > kDomainEps ||
        std::fabs(profile.t1() - spec.t1) > kDomainEps)
        throw std::domain_error("profile and product domains disagree");
}

double segment_length(const WarpProfile& profile, const ProductSpec& spec, double xa, double ya,
                      double xb, double yb) {
    if (xa == xb) return profile.evaluate(xa) * spec.base.distance(ya, yb);
    const double lo = std::min(xa, xb), hi = std::max(xa, xb);
    const double dy = spec.base.distance(ya, yb);
    const double inv_dx = 1.0 / (hi - lo);
    const auto& bps = profile.breakpoints();
    double total = 0.0;
    double cur = lo;
    auto piece = [&](double to) {
        const double w = to - cur;
        const double v = profile.strip_value(profile.strip_index(0.5 * (cur + to)));
        const double fiber = v * dy * w * inv_dx;
        total += std::sqrt(w * w + fiber * fiber);
        cur = to;
    };
    for (auto it = std::upper_bound(bps.begin(), bps.end(), lo); it != bps.end() && *it < hi; ++it)
        piece(*it);
    piece(hi);
    return total;
}

}  // namespace

double polyline_length(const WarpProfile& profile, const CurvePolyline& curve,
                       const ProductSpec& spec) {
    require_consistent(profile, spec);
    for (const auto& v : curve.vertices) spec.require(v);
    double total = 0.0;
    for (std::size_t i = 1; i < curve.vertices.size(); ++i) {
        const auto& a = curve.vertices[i - 1];
        const auto& b = curve.vertices[i];
        total += segment_length(profile, spec, a.x, a.fiber, b.x, b.fiber);
    }
    return total;
}

namespace {

// ----------------------------------------------------------------------
// Candidate solver internals. All fiber coordinates below live in the
// universal cover (plain reals); circle queries enumerate the two arc lifts.
// ----------------------------------------------------------------------

// One cost term sqrt(dx^2 + (v dy)^2); dx == 0 marks a vertical run v*|dy|.
struct Edge {
    double dx;
    double v;
};

inline double edge_cost(const Edge& e, double dy) {
    if (e.dx == 0.0) return e.v * std::fabs(dy);
    const double s = e.v * dy;
    return std::sqrt(e.dx * e.dx + s * s);
}

// Chain of edges with fixed first/last fiber and free interior fibers.
struct ChainProblem {
    std::vector<Edge> edges;
    double y_front = 0.0;
    double y_back = 0.0;
    double ylo = 0.0;
    double yhi = 0.0;
};

double chain_cost(const ChainProblem& pb, const std::vector<double>& ys) {
    double total = 0.0;
    for (std::size_t i = 0; i < pb.edges.size(); ++i)
        total += edge_cost(pb.edges[i], ys[i + 1] - ys[i]);
    return total;
}

template <class F>
double ternary_min(F&& f, double lo, double hi, double width) {
    while (hi - lo > width) {
        const double m1 = lo + (hi - lo) / 3.0;
        const double m2 = hi - (hi - lo) / 3.0;
        if (f(m1) <= f(m2))
            hi = m2;
        else
            lo = m1;
    }
    return 0.5 * (lo + hi);
}

// Cyclic coordinate descent with exact 1-D ternary searches. Every 1-D slice
// is convex (a sum of two terms of the edge form). A joint line search that
// shifts all free fibers together closes the cycle: the kink term |y_b - y_a|
// of a vertical run is constant along that direction, which plain
// per-coordinate descent cannot exploit when it stalls at y_a == y_b.
double solve_chain(const ChainProblem& pb, std::vector<double>& ys, const CandidateOptions& opt,
                   const std::vector<double>* warm = nullptr) {
    const std::size_t k = pb.edges.size();
    if (warm && warm->size() == k + 1) {
        ys = *warm;
        for (std::size_t i = 1; i < k; ++i) ys[i] = std::clamp(ys[i], pb.ylo, pb.yhi);
    } else {
        ys.assign(k + 1, 0.0);
        double total_dx = 0.0;
        for (const auto& e : pb.edges) total_dx += e.dx;
        double acc = 0.0;
        for (std::size_t i = 1; i < k; ++i) {
            acc += pb.edges[i - 1].dx;
            const double t = total_dx > 0.0 ? acc / total_dx : static_cast<double>(i) / k;
            ys[i] = pb.y_front + t * (pb.y_back - pb.y_front);
        }
    }
    ys.front() = pb.y_front;
    ys.back() = pb.y_back;
    if (k <= 1) return chain_cost(pb, ys);
    const double width = opt.tol / 10.0;
    if (pb.yhi - pb.ylo <= width) {
        for (std::size_t i = 1; i < k; ++i) ys[i] = pb.y_front;
        ys.back() = pb.y_back;
        return chain_cost(pb, ys);
    }
    double cost = chain_cost(pb, ys);
    for (int sweep = 0; sweep < opt.max_sweeps; ++sweep) {
        for (std::size_t i = 1; i < k; ++i) {
            const Edge& a = pb.edges[i - 1];
            const Edge& b = pb.edges[i];
            const double yl = ys[i - 1], yr = ys[i + 1];
            ys[i] = ternary_min(
                [&](double y) { return edge_cost(a, y - yl) + edge_cost(b, yr - y); }, pb.ylo,
                pb.yhi, width);
        }
        double mn = ys[1], mx = ys[1];
        for (std::size_t i = 1; i < k; ++i) {
            mn = std::min(mn, ys[i]);
            mx = std::max(mx, ys[i]);
        }
        const double tlo = pb.ylo - mn, thi = pb.yhi - mx;
        if (thi - tlo > width) {
            const Edge& first = pb.edges.front();
            const Edge& last = pb.edges.back();
            const double y1 = ys[1], yk = ys[k - 1];
            const double t = ternary_min(
                [&](double s) {
                    return edge_cost(first, y1 + s - pb.y_front) +
                           edge_cost(last, pb.y_back - yk - s);
                },
                tlo, thi, width);
            if (t != 0.0)
                for (std::size_t i = 1; i < k; ++i) ys[i] += t;
        }
        const double next = chain_cost(pb, ys);
        const double gain = cost - next;
        cost = next;
        if (gain < opt.tol / 10.0) break;
    }
    return cost;
}

// Crossed-strip structure of an x-monotone leg from xa to xb (xa != xb).
struct Leg {
    std::vector<double> xs;    // xa, interior breakpoints, xb (travel order)
    std::vector<double> vals;  // per piece
};

Leg make_leg(const WarpProfile& profile, double xa, double xb) {
    Leg leg;
    const double lo = std::min(xa, xb), hi = std::max(xa, xb);
    leg.xs.push_back(lo);
    const auto& bps = profile.breakpoints();
    for (auto it = std::upper_bound(bps.begin(), bps.end(), lo); it != bps.end() && *it < hi; ++it)
        leg.xs.push_back(*it);
    leg.xs.push_back(hi);
    for (std::size_t i = 0; i + 1 < leg.xs.size(); ++i)
        leg.vals.push_back(
            profile.strip_value(profile.strip_index(0.5 * (leg.xs[i] + leg.xs[i + 1]))));
    if (xa > xb) {
        std::reverse(leg.xs.begin(), leg.xs.end());
        std::reverse(leg.vals.begin(), leg.vals.end());
    }
    return leg;
}

struct LiftedQuery {
    double xa, ya, xb, yb;  // fibers in the cover
    double ylo, yhi;
};

// A solved candidate; node arrays are aligned (one fiber per abscissa).
struct Solved {
    double value = std::numeric_limits<double>::infinity();
    std::vector<double> node_x;
    std::vector<double> node_y;
    std::size_t vars = 0;
    bool eps = false;
};

// Class A (has_run == false) or class B composite with one vertical run of
// cost rate v_run at abscissa x_run. `warm` seeds and receives the fiber
// solution so neighboring abscissa probes converge in a sweep or two.
Solved solve_composite(const WarpProfile& profile, const LiftedQuery& q, bool has_run,
                       double x_run, double v_run, const CandidateOptions& opt,
                       std::vector<double>* warm = nullptr) {
    Solved out;
    if (!has_run && q.xa == q.xb) {
        out.value = profile.evaluate(q.xa) * std::fabs(q.yb - q.ya);
        out.node_x = {q.xa, q.xb};
        out.node_y = {q.ya, q.yb};
        return out;
    }
    ChainProblem pb;
    pb.y_front = q.ya;
    pb.y_back = q.yb;
    pb.ylo = q.ylo;
    pb.yhi = q.yhi;
    out.node_x.push_back(q.xa);
    auto add_leg = [&](double from, double to) {
        const Leg leg = make_leg(profile, from, to);
        for (std::size_t i = 0; i + 1 < leg.xs.size(); ++i) {
            pb.edges.push_back(Edge{std::fabs(leg.xs[i + 1] - leg.xs[i]), leg.vals[i]});
            out.node_x.push_back(leg.xs[i + 1]);
        }
    };
    if (!has_run) {
        add_leg(q.xa, q.xb);
    } else {
        if (q.xa != x_run) add_leg(q.xa, x_run);
        pb.edges.push_back(Edge{0.0, v_run});
        out.node_x.push_back(x_run);
        if (x_run != q.xb) add_leg(x_run, q.xb);
    }
    out.vars = pb.edges.size() >= 2 ? pb.edges.size() - 1 : 0;
    out.value = solve_chain(pb, out.node_y, opt);
    return out;
}

// Candidate abscissae for the vertical run of class B.
struct RunCandidate {
    double lo, hi;   // search interval (lo == hi: pointwise)
    double v;        // vertical-run cost rate
    bool pointwise;  // cost is the pointwise value at lo
};

std::vector<RunCandidate> run_candidates(const WarpProfile& profile, double xa, double xb) {
    std::vector<RunCandidate> out;
    for (double b : profile.breakpoints())
        out.push_back(RunCandidate{b, b, profile.evaluate(b), true});
    for (const auto& [x, v] : profile.overrides())
        out.push_back(RunCandidate{x, x, v, true});
    for (std::size_t i = 0; i < profile.strip_count(); ++i) {
        // split the closed strip at the query abscissae so every search
        // interval has a fixed crossing structure
        std::vector<double> cuts{profile.strip_lo(i), profile.strip_hi(i)};
        for (double c : {xa, xb})
            if (c > cuts.front() && c < cuts.back()) cuts.push_back(c);
        std::sort(cuts.begin(), cuts.end());
        for (std::size_t j = 0; j + 1 < cuts.size(); ++j)
            if (cuts[j] < cuts[j + 1])
                out.push_back(RunCandidate{cuts[j], cuts[j + 1], profile.strip_value(i), false});
    }
    return out;
}

// Snap an interior ternary minimum onto a nearby structural abscissa so the
// attainment test sees the exact endpoint.
double snap_abscissa(double x, const RunCandidate& c, const WarpProfile& profile, double window) {
    if (x - c.lo < window) return c.lo;
    if (c.hi - x < window) return c.hi;
    auto it = profile.overrides().lower_bound(x - window);
    if (it != profile.overrides().end() && std::fabs(it->first - x) <= window) return it->first;
    return x;
}

Solved solve_lift(const WarpProfile& profile, const LiftedQuery& q, const CandidateOptions& opt) {
    Solved best = solve_composite(profile, q, false, 0.0, 0.0, opt);

    for (const RunCandidate& c : run_candidates(profile, q.xa, q.xb)) {
        if (c.pointwise) {
            Solved s = solve_composite(profile, q, true, c.lo, c.v, opt);
            if (s.value < best.value) best = std::move(s);
            continue;
        }
        const double width = std::max(opt.tol / 10.0, (c.hi - c.lo) * 1e-14);
        const double xhat_raw = ternary_min(
            [&](double x) { return solve_composite(profile, q, true, x, c.v, opt).value; }, c.lo,
            c.hi, width);
        const double window = std::max(1e-7, 100.0 * width);
        const double xhat = snap_abscissa(xhat_raw, c, profile, window);
        Solved s = solve_composite(profile, q, true, xhat, c.v, opt);
        s.vars += 1;  // the optimized abscissa
        if (profile.evaluate(xhat) > c.v * (1.0 + 1e-12)) {
            // infimum only: the approach cost minimizes onto an abscissa whose
            // pointwise value exceeds the strip value
            double x_eps = xhat;
            if (xhat <= c.lo)
                x_eps = c.lo + 1e-9;
            else if (xhat >= c.hi)
                x_eps = c.hi - 1e-9;
            else
                x_eps = xhat + (c.hi - xhat > xhat - c.lo ? 1e-9 : -1e-9);
            Solved shifted = solve_composite(profile, q, true, x_eps, c.v, opt);
            shifted.value = s.value;  // report the infimum; the path sits at the offset
            shifted.vars = s.vars;
            shifted.eps = true;
            if (shifted.value < best.value) best = std::move(shifted);
        } else {
            if (s.value < best.value) best = std::move(s);
        }
    }
    return best;
}

CurvePolyline build_path(const Solved& s, const ProductSpec& spec) {
    CurvePolyline path;
    const double L = spec.base.extent;
    const bool circle = spec.base.kind == BaseKind::Circle;
    path.vertices.push_back(SpacePoint{s.node_x.front(), spec.base.reduce(s.node_y.front())});
    for (std::size_t i = 1; i < s.node_x.size(); ++i) {
        const double x0 = s.node_x[i - 1], y0 = s.node_y[i - 1];
        const double x1 = s.node_x[i], y1 = s.node_y[i];
        if (x0 == x1 && y0 == y1) continue;
        if (circle && std::fabs(y1 - y0) > 0.49 * L) {
            // keep each rendered segment on an unambiguous arc
            const int pieces = static_cast<int>(std::ceil(std::fabs(y1 - y0) / (0.49 * L)));
            for (int p = 1; p < pieces; ++p) {
                const double t = static_cast<double>(p) / pieces;
                path.vertices.push_back(
                    SpacePoint{x0 + t * (x1 - x0), spec.base.reduce(y0 + t * (y1 - y0))});
            }
        }
        path.vertices.push_back(SpacePoint{x1, spec.base.reduce(y1)});
    }
    return path;
}

}  // namespace

DistanceResult distance_candidates(const WarpProfile& profile, SpacePoint p, SpacePoint q,
                                   const ProductSpec& spec, const CandidateOptions& opt) {
    require_consistent(profile, spec);
    spec.require(p);
    spec.require(q);
    if (!(opt.tol > 0.0)) throw std::invalid_argument("candidate solver needs tol > 0");

    DistanceResult res;
    res.solver = DistanceResult::Solver::Candidate;
    if (p.x == q.x && spec.base.distance(p.fiber, q.fiber) == 0.0) {
        res.value = 0.0;
        res.path.vertices = {p};
        return res;
    }

    // lifts of the target fiber: the short arc and, on the circle, the long one
    std::vector<double> lifts;
    const double delta = spec.base.geodesic_delta(p.fiber, q.fiber);
    lifts.push_back(p.fiber + delta);
    if (spec.base.kind == BaseKind::Circle && delta != 0.0)
        lifts.push_back(p.fiber + delta - std::copysign(spec.base.extent, delta));

    Solved best;
    for (double yb : lifts) {
        LiftedQuery lq{p.x, p.fiber, q.x, yb, std::min(p.fiber, yb), std::max(p.fiber, yb)};
        Solved s = solve_lift(profile, lq, opt);
        if (s.value < best.value) best = std::move(s);
    }

    res.path = build_path(best, spec);
    res.epsilon_realizing = best.eps;
    if (best.eps) {
        res.value = best.value;
    } else {
        // re-measure the reconstructed path so value and path agree exactly
        res.value = std::min(best.value, polyline_length(profile, res.path, spec));
    }
    res.error_bound = opt.tol * static_cast<double>(std::max<std::size_t>(best.vars, 1));
    return res;
}

}  // namespace warpdist
