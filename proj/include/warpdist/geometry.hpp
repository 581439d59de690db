#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace warpdist {

/// Tolerance used for domain-membership checks on coordinates.
inline constexpr double kDomainEps = 1e-12;

enum class BaseKind { Interval, Circle };

/// One-dimensional base fiber: either the segment [0, extent] or a circle of
/// circumference `extent`, with its intrinsic geodesic distance.
struct BaseSpec {
    BaseKind kind = BaseKind::Interval;
    double extent = 1.0;

    static BaseSpec interval(double length);
    static BaseSpec circle(double circumference);

    bool contains(double y) const;

    /// Circle coordinates are wrapped into [0, extent); interval coordinates
    /// are returned unchanged.
    double reduce(double y) const;

    /// Geodesic distance between two fiber coordinates. Never exceeds
    /// extent/2 on the circle.
    double distance(double a, double b) const;

    /// Signed displacement of the shorter arc from a to b. Antipodal ties on
    /// the circle resolve toward increasing coordinate (+extent/2).
    double geodesic_delta(double a, double b) const;
};

/// Point p = (x, fiber) of the product [t0,t1] x base.
struct SpacePoint {
    double x = 0.0;
    double fiber = 0.0;
};

struct ProductSpec {
    double t0 = 0.0;
    double t1 = 1.0;
    BaseSpec base;

    /// [0,1] x [0,1] with interval base, the domain of all bundled examples.
    static ProductSpec unit_square();

    bool contains(SpacePoint p) const;
    void require(SpacePoint p) const;  // throws std::domain_error

    /// Validates x and wraps circle fibers.
    SpacePoint make_point(double x, double fiber) const;
};

/// Piecewise path: consecutive vertices are joined by a segment that is
/// linear in x and follows the base geodesic in the fiber.
struct CurvePolyline {
    std::vector<SpacePoint> vertices;

    bool degenerate() const { return vertices.size() < 2; }
};

double base_distance(double a, double b, const BaseSpec& base);

/// Generalized Euclidean distance sqrt(dx^2 + d_base^2).
double product_distance(SpacePoint p, SpacePoint q, const ProductSpec& spec);

/// Taxi distance |dx| + d_base. Satisfies d <= d_taxi <= sqrt(2) d.
double taxi_distance(SpacePoint p, SpacePoint q, const ProductSpec& spec);

/// Product metric on pairs: sqrt(d(p,p')^2 + d(q,q')^2).
double pair_distance(SpacePoint p, SpacePoint q, SpacePoint p2, SpacePoint q2,
                     const ProductSpec& spec);

/// Straight generalized line from p to q (single segment).
CurvePolyline generalized_line(SpacePoint p, SpacePoint q, const ProductSpec& spec);

/// Length of a polyline under the unwarped product metric.
double euclidean_length(const CurvePolyline& curve, const ProductSpec& spec);

}  // namespace warpdist
