#include "warpdist/oracles.hpp"

#include <cmath>
#include <stdexcept>

namespace warpdist {

namespace {

void require_unit_square(SpacePoint p, SpacePoint q) {
    static const ProductSpec unit = ProductSpec::unit_square();
    unit.require(p);
    unit.require(q);
}

double euclid(SpacePoint p, SpacePoint q) {
    const double dx = q.x - p.x, dy = q.fiber - p.fiber;
    return std::sqrt(dx * dx + dy * dy);
}

}  // namespace

double oracle_quotient(SpacePoint p, SpacePoint q) {
    require_unit_square(p, q);
    // the line through the collapsed point meets x = 0 in measure zero, so
    // its limit length stays Euclidean; the detour through the point costs
    // the horizontal travel only
    return std::min(euclid(p, q), p.x + q.x);
}

double oracle_blowup(SpacePoint p, SpacePoint q) {
    require_unit_square(p, q);
    const double x1 = p.x, y1 = p.fiber, x2 = q.x, y2 = q.fiber;
    const bool left1 = x1 < 0.5, left2 = x2 < 0.5;
    if (left1 && left2) {
        if (y1 == y2) return std::fabs(x2 - x1);
        return (0.5 - x1) + std::fabs(y2 - y1) + (0.5 - x2);
    }
    if (left1) return (0.5 - x1) + euclid(SpacePoint{0.5, y1}, q);
    if (left2) return (0.5 - x2) + euclid(p, SpacePoint{0.5, y2});
    return euclid(p, q);
}

MetricHandle oracle_lookup(std::string_view name) {
    const ProductSpec unit = ProductSpec::unit_square();
    MetricHandle h;
    h.domain = unit;
    h.exactness = MetricHandle::Exactness::ClosedForm;
    h.error_budget = 0.0;
    if (name == "euclid") {
        h.name = "euclid";
        h.eval = [unit](SpacePoint p, SpacePoint q) { return product_distance(p, q, unit); };
    } else if (name == "taxi") {
        h.name = "taxi";
        h.eval = [unit](SpacePoint p, SpacePoint q) { return taxi_distance(p, q, unit); };
    } else if (name == "quotient") {
        h.name = "quotient";
        h.eval = [](SpacePoint p, SpacePoint q) { return oracle_quotient(p, q); };
    } else if (name == "blowup") {
        h.name = "blowup";
        h.eval = [](SpacePoint p, SpacePoint q) { return oracle_blowup(p, q); };
    } else {
        throw std::invalid_argument("unknown oracle metric: " + std::string(name));
    }
    return h;
}

MetricHandle metric_handle_from_profile(const WarpProfile& profile, SolverKind solver,
                                        const ProductSpec& spec, const SolverParams& params) {
    MetricHandle h;
    h.domain = spec;
    h.exactness = MetricHandle::Exactness::SolverBacked;
    if (solver == SolverKind::Candidate) {
        h.name = profile.label().empty() ? "candidate" : profile.label() + ":candidate";
        h.error_budget =
            params.candidate.tol * static_cast<double>(2 * profile.strip_count() + 4);
        h.eval = [profile, spec, opt = params.candidate](SpacePoint p, SpacePoint q) {
            return distance_candidates(profile, p, q, spec, opt).value;
        };
    } else {
        h.name = profile.label().empty() ? "grid" : profile.label() + ":grid";
        const double sup = profile.global_bounds().second;
        const double diam = taxi_distance(SpacePoint{spec.t0, 0.0},
                                          SpacePoint{spec.t1, spec.base.extent / 2.0}, spec);
        h.error_budget = grid_direction_overhead(profile) * sup * diam +
                         2.0 * params.grid.h * sup;
        h.eval = [profile, spec, opt = params.grid](SpacePoint p, SpacePoint q) {
            return distance_grid(profile, p, q, spec, opt).value;
        };
    }
    return h;
}

}  // namespace warpdist
