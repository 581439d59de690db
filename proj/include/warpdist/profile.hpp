#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace warpdist {

/// Bounded positive warping function on [t0,t1], represented as a
/// piecewise-constant function on half-open strips [b_i, b_{i+1}) (the last
/// strip is closed at t1) plus finitely many single-point value overrides.
///
/// Overrides have measure zero: they never affect the length of a sloped
/// segment, only purely vertical segments pinned at the override abscissa.
class WarpProfile {
  public:
    WarpProfile(std::vector<double> breakpoints, std::vector<double> strip_values,
                std::map<double, double> point_overrides = {}, std::string label = "");

    double t0() const { return breakpoints_.front(); }
    double t1() const { return breakpoints_.back(); }

    std::size_t strip_count() const { return strip_values_.size(); }
    double strip_value(std::size_t i) const { return strip_values_[i]; }
    double strip_lo(std::size_t i) const { return breakpoints_[i]; }
    double strip_hi(std::size_t i) const { return breakpoints_[i + 1]; }

    /// Index of the strip whose half-open interval contains x.
    std::size_t strip_index(double x) const;

    /// Pointwise value: the override at x if present, else the strip value.
    double evaluate(double x) const;

    /// Pointwise infimum over the closed interval [a, b], override-aware.
    double infimum_on(double a, double b) const;

    /// Exact pointwise (inf, sup) over [t0, t1].
    std::pair<double, double> global_bounds() const;

    const std::vector<double>& breakpoints() const { return breakpoints_; }
    const std::map<double, double>& overrides() const { return overrides_; }
    const std::string& label() const { return label_; }

  private:
    std::vector<double> breakpoints_;
    std::vector<double> strip_values_;
    std::map<double, double> overrides_;
    std::string label_;
};

/// The example families, all defined on the unit square.
enum class Family { Constant, S, H, Z, K, W, V };

Family family_from_name(std::string_view name);  // "constant", "s_n", ..., "v_n"
std::string family_name(Family f);
const std::vector<Family>& family_registry();

/// Exact family member: s_n, h_n collapse strips; z_n, w_n are encoded as a
/// point override at x = 0; k_n, v_n blow up with rate n^alpha.
/// alpha is ignored for s_n, h_n, z_n and the constant family.
WarpProfile family_member(Family f, int n, double alpha = 1.0);

/// Finite subset of [t0,t1] together with the radius within which it covers
/// the whole interval.
struct DenseSubset {
    std::vector<double> points;
    double claimed_radius = 0.0;
};

/// max f over the points of Q.
double supremum_on_set(const WarpProfile& profile, const DenseSubset& q);

/// Line-oriented profile literal:
///   breakpoints = 0,0.2,0.4,1
///   values = 1,0.2,1
///   override 0 = 0.25
///   label = h_5        (optional)
WarpProfile parse_profile(const std::string& text);
std::string format_profile(const WarpProfile& profile);

}  // namespace warpdist
