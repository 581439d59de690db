#pragma once

#include <functional>
#include <string>
#include <string_view>

#include "warpdist/engine.hpp"
#include "warpdist/geometry.hpp"
#include "warpdist/profile.hpp"

namespace warpdist {

/// Uniform two-point metric interface over engine-backed metrics and
/// closed-form limit metrics.
struct MetricHandle {
    enum class Exactness { ClosedForm, SolverBacked };

    std::string name;
    std::function<double(SpacePoint, SpacePoint)> eval;
    Exactness exactness = Exactness::ClosedForm;
    double error_budget = 0.0;  // additive slack of a single evaluation
    ProductSpec domain = ProductSpec::unit_square();

    double operator()(SpacePoint p, SpacePoint q) const { return eval(p, q); }
};

/// Quotient limit metric on the unit square: the line x = 0 collapses to one
/// point, so d(p,q) competes with travelling through it at cost x(p) + x(q).
double oracle_quotient(SpacePoint p, SpacePoint q);

/// Blow-up limit metric on the unit square: no fiber motion where x < 1/2.
double oracle_blowup(SpacePoint p, SpacePoint q);

/// Closed-form handles: "euclid", "taxi", "quotient", "blowup".
MetricHandle oracle_lookup(std::string_view name);

enum class SolverKind { Candidate, Grid };

struct SolverParams {
    CandidateOptions candidate;
    GridOptions grid;
};

/// Wraps a solver over a fixed profile as a two-point metric evaluator.
MetricHandle metric_handle_from_profile(const WarpProfile& profile, SolverKind solver,
                                        const ProductSpec& spec, const SolverParams& params = {});

}  // namespace warpdist
