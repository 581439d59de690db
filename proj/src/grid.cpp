#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <queue>
#include <vector>

#include "warpdist/engine.hpp"

namespace warpdist {

namespace {

// Sorted lattice lines: multiples of h spanning [lo, hi] plus extra values.
std::vector<double> lattice_lines(double lo, double hi, double h, std::vector<double> extra,
                                  bool include_hi) {
    std::vector<double> lines;
    const auto steps = static_cast<long long>(std::floor((hi - lo) / h + 1e-9));
    for (long long k = 0; k <= steps; ++k) {
        double x = lo + static_cast<double>(k) * h;
        if (x > hi) break;
        lines.push_back(x);
    }
    if (include_hi && (lines.empty() || lines.back() < hi)) lines.push_back(hi);
    for (double e : extra)
        if (e >= lo && e <= hi) lines.push_back(e);
    std::sort(lines.begin(), lines.end());
    lines.erase(std::unique(lines.begin(), lines.end(),
                            [](double a, double b) { return std::fabs(a - b) < 1e-13; }),
                lines.end());
    return lines;
}

std::size_t nearest_index(const std::vector<double>& lines, double x) {
    auto it = std::lower_bound(lines.begin(), lines.end(), x);
    if (it == lines.end()) return lines.size() - 1;
    if (it == lines.begin()) return 0;
    const std::size_t hi = static_cast<std::size_t>(it - lines.begin());
    return (x - lines[hi - 1] <= lines[hi] - x) ? hi - 1 : hi;
}

constexpr int kStencil[16][2] = {{1, 0},  {-1, 0}, {0, 1},  {0, -1}, {1, 1},  {1, -1},
                                 {-1, 1}, {-1, -1}, {1, 2},  {1, -2}, {-1, 2}, {-1, -2},
                                 {2, 1},  {2, -1}, {-2, 1}, {-2, -1}};

struct QueueEntry {
    double dist;
    std::uint32_t node;
    bool operator>(const QueueEntry& o) const { return dist > o.dist; }
};

}  // namespace

double grid_direction_overhead(const WarpProfile& profile) {
    double worst = 0.0;
    for (std::size_t i = 0; i < profile.strip_count(); ++i) {
        const double v = profile.strip_value(i);
        // stencil directions under the strip's fiber scaling
        const double ang[5] = {0.0, std::atan(0.5 * v), std::atan(v), std::atan(2.0 * v),
                               std::numbers::pi / 2.0};
        double gap = 0.0;
        for (int j = 0; j < 4; ++j) gap = std::max(gap, ang[j + 1] - ang[j]);
        worst = std::max(worst, 1.0 / std::cos(gap / 2.0) - 1.0);
    }
    return worst;
}

DistanceResult distance_grid(const WarpProfile& profile, SpacePoint p, SpacePoint q,
                             const ProductSpec& spec, const GridOptions& opt) {
    if (std::fabs(profile.t0() - spec.t0) > kDomainEps ||
        std::fabs(profile.t1() - spec.t1) > kDomainEps)
        throw std::domain_error("profile and product domains disagree");
    spec.require(p);
    spec.require(q);
    if (!(opt.h > 0.0)) throw std::invalid_argument("grid solver needs h > 0");

    const bool circle = spec.base.kind == BaseKind::Circle;
    std::vector<double> xextra = profile.breakpoints();
    for (const auto& [x, v] : profile.overrides()) xextra.push_back(x);
    xextra.push_back(p.x);
    xextra.push_back(q.x);
    const std::vector<double> xs = lattice_lines(spec.t0, spec.t1, opt.h, std::move(xextra), true);

    const double yp = spec.base.reduce(p.fiber), yq = spec.base.reduce(q.fiber);
    std::vector<double> ys;
    if (circle) {
        // wrap line at extent is the line at 0
        ys = lattice_lines(0.0, spec.base.extent * (1.0 - 1e-12), opt.h, {yp, yq}, false);
    } else {
        ys = lattice_lines(0.0, spec.base.extent, opt.h, {yp, yq}, true);
    }

    const std::size_t nx = xs.size(), ny = ys.size();
    if (nx * ny > opt.node_cap)
        throw resource_error("grid of " + std::to_string(nx * ny) + " nodes exceeds the cap of " +
                             std::to_string(opt.node_cap));

    const auto node_id = [&](std::size_t ix, std::size_t iy) {
        return static_cast<std::uint32_t>(ix * ny + iy);
    };
    const std::uint32_t start = node_id(nearest_index(xs, p.x), nearest_index(ys, yp));
    const std::uint32_t goal = node_id(nearest_index(xs, q.x), nearest_index(ys, yq));

    std::vector<double> dist(nx * ny, std::numeric_limits<double>::infinity());
    std::vector<std::uint32_t> prev(nx * ny, std::numeric_limits<std::uint32_t>::max());
    std::priority_queue<QueueEntry, std::vector<QueueEntry>, std::greater<>> heap;
    dist[start] = 0.0;
    heap.push({0.0, start});

    CurvePolyline probe;
    probe.vertices.resize(2);
    while (!heap.empty()) {
        const auto [d, u] = heap.top();
        heap.pop();
        if (d > dist[u]) continue;
        if (u == goal) break;
        const std::size_t ix = u / ny, iy = u % ny;
        for (const auto& mv : kStencil) {
            const long long jx = static_cast<long long>(ix) + mv[0];
            long long jy = static_cast<long long>(iy) + mv[1];
            if (jx < 0 || jx >= static_cast<long long>(nx)) continue;
            if (circle) {
                jy = (jy % static_cast<long long>(ny) + static_cast<long long>(ny)) %
                     static_cast<long long>(ny);
            } else if (jy < 0 || jy >= static_cast<long long>(ny)) {
                continue;
            }
            const std::uint32_t w = node_id(static_cast<std::size_t>(jx),
                                            static_cast<std::size_t>(jy));
            probe.vertices[0] = SpacePoint{xs[ix], ys[iy]};
            probe.vertices[1] = SpacePoint{xs[static_cast<std::size_t>(jx)],
                                           ys[static_cast<std::size_t>(jy)]};
            const double cost =
                d + polyline_length(profile, probe, spec);
            if (cost < dist[w]) {
                dist[w] = cost;
                prev[w] = u;
                heap.push({cost, w});
            }
        }
    }

    DistanceResult res;
    res.solver = DistanceResult::Solver::Grid;
    res.value = dist[goal];
    std::vector<SpacePoint> trace;
    for (std::uint32_t u = goal;; u = prev[u]) {
        trace.push_back(SpacePoint{xs[u / ny], ys[u % ny]});
        if (u == start) break;
        if (prev[u] == std::numeric_limits<std::uint32_t>::max()) break;
    }
    std::reverse(trace.begin(), trace.end());
    // merge collinear steps to keep reported paths compact
    res.path.vertices.push_back(trace.front());
    for (std::size_t i = 1; i < trace.size(); ++i) {
        if (i + 1 < trace.size()) {
            const auto& a = res.path.vertices.back();
            const auto& b = trace[i];
            const auto& c = trace[i + 1];
            const double cross =
                (b.x - a.x) * (c.fiber - b.fiber) - (b.fiber - a.fiber) * (c.x - b.x);
            if (!circle && std::fabs(cross) < 1e-15) continue;
        }
        res.path.vertices.push_back(trace[i]);
    }
    const double sup = profile.global_bounds().second;
    res.error_bound = grid_direction_overhead(profile) * res.value + 2.0 * opt.h * sup;
    res.epsilon_realizing = false;
    return res;
}

}  // namespace warpdist
