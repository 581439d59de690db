#include "warpdist/geometry.hpp"

#include <cmath>

namespace warpdist {

BaseSpec BaseSpec::interval(double length) {
    if (!(length > 0.0) || !std::isfinite(length))
        throw std::invalid_argument("interval base needs a positive finite length");
    return BaseSpec{BaseKind::Interval, length};
}

BaseSpec BaseSpec::circle(double circumference) {
    if (!(circumference > 0.0) || !std::isfinite(circumference))
        throw std::invalid_argument("circle base needs a positive finite circumference");
    return BaseSpec{BaseKind::Circle, circumference};
}

bool BaseSpec::contains(double y) const {
    if (kind == BaseKind::Interval)
        return y >= -kDomainEps && y <= extent + kDomainEps;
    return std::isfinite(y);
}

double BaseSpec::reduce(double y) const {
    if (kind == BaseKind::Interval) return y;
    double r = std::fmod(y, extent);
    if (r < 0.0) r += extent;
    if (r >= extent) r = 0.0;
    return r;
}

double BaseSpec::geodesic_delta(double a, double b) const {
    if (kind == BaseKind::Interval) return b - a;
    double r = std::fmod(b - a, extent);
    if (r < 0.0) r += extent;  // r in [0, extent)
    if (r > extent / 2.0) r -= extent;
    // r in (-extent/2, extent/2]; tie at extent/2 points toward increasing coordinate
    return r;
}

double BaseSpec::distance(double a, double b) const {
    if (!contains(a) || !contains(b))
        throw std::domain_error("fiber coordinate out of range");
    return std::fabs(geodesic_delta(a, b));
}

ProductSpec ProductSpec::unit_square() {
    return ProductSpec{0.0, 1.0, BaseSpec::interval(1.0)};
}

bool ProductSpec::contains(SpacePoint p) const {
    return p.x >= t0 - kDomainEps && p.x <= t1 + kDomainEps && base.contains(p.fiber);
}

void ProductSpec::require(SpacePoint p) const {
    if (!contains(p)) throw std::domain_error("point outside product domain");
}

SpacePoint ProductSpec::make_point(double x, double fiber) const {
    SpacePoint p{x, base.reduce(fiber)};
    require(p);
    return p;
}

double base_distance(double a, double b, const BaseSpec& base) {
    return base.distance(a, b);
}

double product_distance(SpacePoint p, SpacePoint q, const ProductSpec& spec) {
    spec.require(p);
    spec.require(q);
    const double dx = q.x - p.x;
    const double dy = spec.base.distance(p.fiber, q.fiber);
    return std::sqrt(dx * dx + dy * dy);
}

double taxi_distance(SpacePoint p, SpacePoint q, const ProductSpec& spec) {
    spec.require(p);
    spec.require(q);
    return std::fabs(q.x - p.x) + spec.base.distance(p.fiber, q.fiber);
}

double pair_distance(SpacePoint p, SpacePoint q, SpacePoint p2, SpacePoint q2,
                     const ProductSpec& spec) {
    const double a = product_distance(p, p2, spec);
    const double b = product_distance(q, q2, spec);
    return std::sqrt(a * a + b * b);
}

CurvePolyline generalized_line(SpacePoint p, SpacePoint q, const ProductSpec& spec) {
    spec.require(p);
    spec.require(q);
    if (p.x == q.x && spec.base.distance(p.fiber, q.fiber) == 0.0)
        return CurvePolyline{{p}};
    return CurvePolyline{{p, q}};
}

double euclidean_length(const CurvePolyline& curve, const ProductSpec& spec) {
    double total = 0.0;
    for (std::size_t i = 1; i < curve.vertices.size(); ++i)
        total += product_distance(curve.vertices[i - 1], curve.vertices[i], spec);
    return total;
}

}  // namespace warpdist
