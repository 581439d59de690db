#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "warpdist/engine.hpp"
#include "warpdist/geometry.hpp"
#include "warpdist/profile.hpp"

namespace testsupport {

// Independent length oracle: midpoint-rule quadrature of the warped length
// integrand along a polyline, never touching the engine's strip splitting.
inline double quadrature_length(const warpdist::WarpProfile& profile,
                                const warpdist::CurvePolyline& curve,
                                const warpdist::ProductSpec& spec, int samples_per_segment) {
    double total = 0.0;
    for (std::size_t s = 1; s < curve.vertices.size(); ++s) {
        const auto& a = curve.vertices[s - 1];
        const auto& b = curve.vertices[s];
        const double dx = b.x - a.x;
        const double dy = spec.base.geodesic_delta(a.fiber, b.fiber);
        const int n = samples_per_segment;
        double acc = 0.0;
        for (int i = 0; i < n; ++i) {
            const double t = (i + 0.5) / n;
            const double f = profile.evaluate(a.x + t * dx);
            acc += std::sqrt(dx * dx + f * f * dy * dy);
        }
        total += acc / n;
    }
    return total;
}

// Seeded profile generator: up to max_strips strips, values inside [vlo, vhi].
inline warpdist::WarpProfile random_strip_profile(std::mt19937_64& rng, int max_strips,
                                                  double vlo, double vhi) {
    std::uniform_int_distribution<int> nstrips(1, max_strips);
    std::uniform_real_distribution<double> ux(0.05, 0.95);
    std::uniform_real_distribution<double> ulog(std::log(vlo), std::log(vhi));
    const int m = nstrips(rng);
    std::vector<double> bps{0.0, 1.0};
    for (int i = 1; i < m; ++i) bps.push_back(ux(rng));
    std::sort(bps.begin(), bps.end());
    bps.erase(std::unique(bps.begin(), bps.end(),
                          [](double a, double b) { return std::fabs(a - b) < 1e-3; }),
              bps.end());
    std::vector<double> vals;
    for (std::size_t i = 0; i + 1 < bps.size(); ++i) vals.push_back(std::exp(ulog(rng)));
    return warpdist::WarpProfile(std::move(bps), std::move(vals));
}

inline warpdist::SpacePoint random_point(std::mt19937_64& rng, const warpdist::ProductSpec& spec) {
    std::uniform_real_distribution<double> ux(spec.t0, spec.t1);
    std::uniform_real_distribution<double> uy(0.0, spec.base.extent);
    return spec.make_point(ux(rng), uy(rng));
}

}  // namespace testsupport
