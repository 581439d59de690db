#include "warpdist/profile.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "warpdist/geometry.hpp"

namespace warpdist {

WarpProfile::WarpProfile(std::vector<double> breakpoints, std::vector<double> strip_values,
                         std::map<double, double> point_overrides, std::string label)
    : breakpoints_(std::move(breakpoints)),
      strip_values_(std::move(strip_values)),
      overrides_(std::move(point_overrides)),
      label_(std::move(label)) {
    if (breakpoints_.size() < 2)
        throw std::invalid_argument("profile needs at least two breakpoints");
    if (strip_values_.size() + 1 != breakpoints_.size())
        throw std::invalid_argument("profile needs one value per strip");
    for (std::size_t i = 1; i < breakpoints_.size(); ++i) {
        if (!(breakpoints_[i - 1] < breakpoints_[i]))
            throw std::invalid_argument("profile breakpoints must be strictly increasing");
        if (!std::isfinite(breakpoints_[i]))
            throw std::invalid_argument("profile breakpoints must be finite");
    }
    for (double v : strip_values_)
        if (!(v > 0.0) || !std::isfinite(v))
            throw std::invalid_argument("strip values must be positive and finite");
    for (const auto& [x, v] : overrides_) {
        if (x < t0() || x > t1())
            throw std::invalid_argument("override abscissa outside [t0,t1]");
        if (!(v > 0.0) || !std::isfinite(v))
            throw std::invalid_argument("override values must be positive and finite");
    }
}

std::size_t WarpProfile::strip_index(double x) const {
    if (x < t0() - kDomainEps || x > t1() + kDomainEps)
        throw std::domain_error("abscissa outside profile domain");
    if (x >= breakpoints_.back()) return strip_count() - 1;
    auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), x);
    if (it == breakpoints_.begin()) return 0;
    return static_cast<std::size_t>(it - breakpoints_.begin()) - 1;
}

double WarpProfile::evaluate(double x) const {
    if (x < t0() - kDomainEps || x > t1() + kDomainEps)
        throw std::domain_error("abscissa outside profile domain");
    auto it = overrides_.find(x);
    if (it != overrides_.end()) return it->second;
    return strip_values_[strip_index(x)];
}

double WarpProfile::infimum_on(double a, double b) const {
    if (a > b) throw std::domain_error("empty interval");
    double lo = std::min(evaluate(a), evaluate(b));
    for (std::size_t i = 0; i < strip_count(); ++i) {
        if (std::max(a, strip_lo(i)) < std::min(b, strip_hi(i)))
            lo = std::min(lo, strip_values_[i]);
    }
    for (auto it = overrides_.lower_bound(a); it != overrides_.end() && it->first <= b; ++it)
        lo = std::min(lo, it->second);
    return lo;
}

std::pair<double, double> WarpProfile::global_bounds() const {
    double lo = strip_values_.front(), hi = lo;
    for (double v : strip_values_) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    for (const auto& [x, v] : overrides_) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    return {lo, hi};
}

Family family_from_name(std::string_view name) {
    if (name == "constant") return Family::Constant;
    if (name == "s_n" || name == "s") return Family::S;
    if (name == "h_n" || name == "h") return Family::H;
    if (name == "z_n" || name == "z") return Family::Z;
    if (name == "k_n" || name == "k") return Family::K;
    if (name == "w_n" || name == "w") return Family::W;
    if (name == "v_n" || name == "v") return Family::V;
    throw std::invalid_argument("unknown warping family: " + std::string(name));
}

std::string family_name(Family f) {
    switch (f) {
        case Family::Constant: return "constant";
        case Family::S: return "s_n";
        case Family::H: return "h_n";
        case Family::Z: return "z_n";
        case Family::K: return "k_n";
        case Family::W: return "w_n";
        case Family::V: return "v_n";
    }
    throw std::invalid_argument("unknown warping family");
}

const std::vector<Family>& family_registry() {
    static const std::vector<Family> all = {Family::Constant, Family::S, Family::H, Family::Z,
                                            Family::K,        Family::W, Family::V};
    return all;
}

namespace {

// Builds a profile from a raw case list, dropping empty strips and merging
// adjacent strips with equal values (needed for small n where 1/n hits 1).
WarpProfile strips(std::vector<std::pair<double, double>> edges_and_values,
                   std::map<double, double> overrides, std::string label) {
    std::vector<double> bps{0.0};
    std::vector<double> vals;
    for (auto& [hi, v] : edges_and_values) {
        double clipped = std::min(hi, 1.0);
        if (clipped <= bps.back()) continue;
        if (!vals.empty() && vals.back() == v) {
            bps.back() = clipped;
        } else {
            bps.push_back(clipped);
            vals.push_back(v);
        }
    }
    if (bps.back() < 1.0) {
        if (!vals.empty()) bps.back() = 1.0;
        else { bps.push_back(1.0); vals.push_back(1.0); }
    }
    return WarpProfile(std::move(bps), std::move(vals), std::move(overrides), std::move(label));
}

std::string member_label(Family f, int n, double alpha) {
    char buf[64];
    if (f == Family::K || f == Family::W || f == Family::V)
        std::snprintf(buf, sizeof buf, "%s(n=%d,alpha=%g)", family_name(f).c_str(), n, alpha);
    else
        std::snprintf(buf, sizeof buf, "%s(n=%d)", family_name(f).c_str(), n);
    return buf;
}

}  // namespace

WarpProfile family_member(Family f, int n, double alpha) {
    if (n < 1) throw std::invalid_argument("family index n must be >= 1");
    const bool uses_alpha = f == Family::K || f == Family::W || f == Family::V;
    if (uses_alpha && !(alpha > 0.0))
        throw std::invalid_argument("blow-up rate alpha must be positive");
    const double inv = 1.0 / n;
    const double rate = std::pow(static_cast<double>(n), alpha);
    const std::string label = member_label(f, n, alpha);
    switch (f) {
        case Family::Constant:
            return strips({{1.0, 1.0}}, {}, "constant");
        case Family::S:
            return strips({{inv, inv}, {1.0, 1.0}}, {}, label);
        case Family::H:
            return strips({{inv, 1.0}, {2.0 * inv, inv}, {1.0, 1.0}}, {}, label);
        case Family::Z:
            return strips({{1.0, 1.0}}, {{0.0, inv}}, label);
        case Family::K:
            return strips({{inv, rate}, {1.0, 1.0}}, {}, label);
        case Family::W:
            return strips({{1.0, 1.0}}, {{0.0, rate}}, label);
        case Family::V:
            return strips({{0.5, rate}, {1.0, 1.0}}, {}, label);
    }
    throw std::invalid_argument("unknown warping family");
}

double supremum_on_set(const WarpProfile& profile, const DenseSubset& q) {
    if (q.points.empty()) throw std::invalid_argument("dense subset is empty");
    double hi = 0.0;
    for (double x : q.points) {
        if (x < profile.t0() - kDomainEps || x > profile.t1() + kDomainEps)
            throw std::domain_error("dense subset point outside [t0,t1]");
        hi = std::max(hi, profile.evaluate(x));
    }
    return hi;
}

namespace {

std::vector<double> parse_number_list(const std::string& text, int line_no) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            double v = std::stod(item, &used);
            while (used < item.size() && std::isspace(static_cast<unsigned char>(item[used])))
                ++used;
            if (used != item.size()) throw std::invalid_argument("trailing junk");
            out.push_back(v);
        } catch (const std::exception&) {
            throw std::invalid_argument("profile line " + std::to_string(line_no) +
                                        ": bad number '" + item + "'");
        }
    }
    if (out.empty())
        throw std::invalid_argument("profile line " + std::to_string(line_no) + ": empty list");
    return out;
}

std::string trim(std::string s) {
    auto issp = [](unsigned char c) { return std::isspace(c) != 0; };
    while (!s.empty() && issp(s.front())) s.erase(s.begin());
    while (!s.empty() && issp(s.back())) s.pop_back();
    return s;
}

}  // namespace

WarpProfile parse_profile(const std::string& text) {
    std::vector<double> bps, vals;
    std::map<double, double> ovr;
    std::string label;
    std::stringstream ss(text);
    std::string line;
    int line_no = 0;
    while (std::getline(ss, line)) {
        ++line_no;
        line = trim(line);
        if (line.empty() || line[0] == '#') continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("profile line " + std::to_string(line_no) +
                                        ": expected 'key = value'");
        std::string key = trim(line.substr(0, eq));
        std::string rest = trim(line.substr(eq + 1));
        if (key == "breakpoints") {
            bps = parse_number_list(rest, line_no);
        } else if (key == "values") {
            vals = parse_number_list(rest, line_no);
        } else if (key == "label") {
            label = rest;
        } else if (key.rfind("override", 0) == 0) {
            std::string at = trim(key.substr(8));
            auto xs = parse_number_list(at, line_no);
            auto vs = parse_number_list(rest, line_no);
            if (xs.size() != 1 || vs.size() != 1)
                throw std::invalid_argument("profile line " + std::to_string(line_no) +
                                            ": override takes one abscissa and one value");
            ovr[xs[0]] = vs[0];
        } else {
            throw std::invalid_argument("profile line " + std::to_string(line_no) +
                                        ": unknown key '" + key + "'");
        }
    }
    if (bps.empty() || vals.empty())
        throw std::invalid_argument("profile needs both a breakpoints and a values line");
    return WarpProfile(std::move(bps), std::move(vals), std::move(ovr), std::move(label));
}

std::string format_profile(const WarpProfile& profile) {
    auto num = [](double v) {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.17g", v);
        return std::string(buf);
    };
    std::string out = "breakpoints = ";
    for (std::size_t i = 0; i < profile.breakpoints().size(); ++i)
        out += (i ? "," : "") + num(profile.breakpoints()[i]);
    out += "\nvalues = ";
    for (std::size_t i = 0; i < profile.strip_count(); ++i)
        out += (i ? "," : "") + num(profile.strip_value(i));
    out += "\n";
    for (const auto& [x, v] : profile.overrides())
        out += "override " + num(x) + " = " + num(v) + "\n";
    if (!profile.label().empty()) out += "label = " + profile.label() + "\n";
    return out;
}

}  // namespace warpdist
