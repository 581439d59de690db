#pragma once

#include <cstddef>
#include <stdexcept>

#include "warpdist/geometry.hpp"
#include "warpdist/profile.hpp"

namespace warpdist {

/// Raised when a solver would exceed its configured resource budget.
class resource_error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct DistanceResult {
    enum class Solver { Candidate, Grid };

    double value = 0.0;
    CurvePolyline path;  // realizing, or epsilon-realizing when flagged
    Solver solver = Solver::Candidate;
    double error_bound = 0.0;

    /// True when the optimum is an infimum over vertical runs approaching an
    /// open strip endpoint; `value` is then the infimum, not the path length.
    bool epsilon_realizing = false;
};

/// Exact warped length of a polyline: each segment is split at the profile
/// breakpoints its x-range crosses; a sub-segment of x-extent w inside a
/// strip of value v contributes w*sqrt(1 + (v*slope)^2); a purely vertical
/// segment at abscissa x contributes evaluate(x)*|dy|.
double polyline_length(const WarpProfile& profile, const CurvePolyline& curve,
                       const ProductSpec& spec);

struct CandidateOptions {
    double tol = 1e-9;
    int max_sweeps = 200;
};

/// Candidate-class solver for the warped distance. Minimizes over
///   (A) x-monotone refracted paths with free crossing fibers,
///   (B) detours with one vertical run at a candidate abscissa (breakpoints,
///       override keys, and per-strip optimized abscissae), and
///   (C) the generalized line.
/// Exact for the bundled example families; the grid solver cross-checks the
/// general case.
DistanceResult distance_candidates(const WarpProfile& profile, SpacePoint p, SpacePoint q,
                                   const ProductSpec& spec, const CandidateOptions& opt = {});

struct GridOptions {
    double h = 1.0 / 256;
    std::size_t node_cap = 4'000'000;
};

/// Dijkstra over a lattice with a 16-neighbor stencil (king + knight moves).
/// Lattice lines include every breakpoint and override abscissa plus the
/// query coordinates, so endpoints are hit exactly. Edge weights are exact
/// warped segment lengths, so the value always overestimates the distance.
DistanceResult distance_grid(const WarpProfile& profile, SpacePoint p, SpacePoint q,
                             const ProductSpec& spec, const GridOptions& opt = {});

/// Worst-case relative overhead of approximating a straight segment by
/// stencil moves, maximized over the profile's strips (strip value v scales
/// the fiber axis and reshapes the stencil's angular gaps).
double grid_direction_overhead(const WarpProfile& profile);

}  // namespace warpdist
