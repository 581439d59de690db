#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "warpdist/analysis.hpp"
#include "warpdist/engine.hpp"
#include "warpdist/oracles.hpp"
#include "warpdist/report_io.hpp"

namespace {

using namespace warpdist;

constexpr int kExitOk = 0;
constexpr int kExitInvariant = 1;
constexpr int kExitUsage = 2;
constexpr int kExitResource = 3;

struct ProfileSource {
    std::string family;
    int n = 10;
    double alpha = 1.0;
    std::string file;

    bool from_file() const { return !file.empty(); }

    WarpProfile load() const {
        if (from_file()) {
            std::ifstream in(file);
            if (!in) throw resource_error("cannot read profile file '" + file + "'");
            std::stringstream ss;
            ss << in.rdbuf();
            return parse_profile(ss.str());
        }
        return family_member(family_from_name(family), n, alpha);
    }
};

SpacePoint parse_point(const std::string& text, const ProductSpec& spec) {
    const auto comma = text.find(',');
    if (comma == std::string::npos)
        throw std::invalid_argument("point '" + text + "' is not of the form x,fiber");
    std::size_t ux = 0, uy = 0;
    const std::string xs = text.substr(0, comma), ys = text.substr(comma + 1);
    const double x = std::stod(xs, &ux);
    const double y = std::stod(ys, &uy);
    if (ux != xs.size() || uy != ys.size())
        throw std::invalid_argument("point '" + text + "' is not of the form x,fiber");
    return spec.make_point(x, y);
}

std::string output_dir(const std::string& flag_value) {
    if (!flag_value.empty()) return flag_value;
    if (const char* env = std::getenv("WARPDIST_OUTDIR")) return env;
    return ".";
}

std::string point_str(const SpacePoint& p) {
    return format_number(p.x) + "," + format_number(p.fiber);
}

void add_profile_flags(CLI::App* cmd, ProfileSource& src) {
    auto* fam = cmd->add_option("--family", src.family,
                                "warping family: constant, s_n, h_n, z_n, k_n, w_n, v_n");
    cmd->add_option("--n", src.n, "family index n");
    cmd->add_option("--alpha", src.alpha, "blow-up rate for k_n, w_n, v_n");
    auto* file = cmd->add_option("--profile", src.file, "profile literal file");
    fam->excludes(file);
    file->excludes(fam);
}

// ---------------------------------------------------------------- dist ----

struct DistConfig {
    ProfileSource src;
    std::string p_text, q_text;
    std::string solver = "candidate";
    double tol = 1e-9;
    double h = 1.0 / 256;
    std::string base = "interval";
    double fiber_extent = 1.0;
};

int run_dist(const DistConfig& cfg) {
    if (!(cfg.tol > 0.0)) throw std::invalid_argument("tol must be positive");
    if (!(cfg.h > 0.0)) throw std::invalid_argument("h must be positive");
    const WarpProfile profile = cfg.src.load();
    BaseSpec base = cfg.base == "circle" ? BaseSpec::circle(cfg.fiber_extent)
                                         : BaseSpec::interval(cfg.fiber_extent);
    const ProductSpec spec{profile.t0(), profile.t1(), base};
    const SpacePoint p = parse_point(cfg.p_text, spec);
    const SpacePoint q = parse_point(cfg.q_text, spec);

    DistanceResult res;
    if (cfg.solver == "candidate") {
        res = distance_candidates(profile, p, q, spec, CandidateOptions{cfg.tol});
    } else if (cfg.solver == "grid") {
        res = distance_grid(profile, p, q, spec, GridOptions{cfg.h});
    } else {
        throw std::invalid_argument("unknown solver '" + cfg.solver + "'");
    }

    std::cout << "value " << format_number(res.value) << "\n";
    std::cout << "solver " << (res.solver == DistanceResult::Solver::Candidate ? "candidate" : "grid")
              << "\n";
    std::cout << "error_bound " << format_number(res.error_bound) << "\n";
    std::cout << "epsilon_realizing " << (res.epsilon_realizing ? "true" : "false") << "\n";
    std::cout << "path";
    for (const auto& v : res.path.vertices) std::cout << " " << point_str(v);
    std::cout << "\n";
    return kExitOk;
}

// --------------------------------------------------------------- sweep ----

struct SweepConfig {
    ProfileSource src;
    std::string n_text = "10,20,40";
    std::string limit;
    std::string sampler = "adversarial";
    std::size_t pairs = 500;
    std::uint64_t seed = 1;
    std::string format = "json";
    std::string out;
    std::string outdir;
    double tol = 1e-9;
};

std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(std::stoi(item));
    if (out.empty()) throw std::invalid_argument("empty n list");
    return out;
}

int run_sweep(const SweepConfig& cfg) {
    if (!(cfg.tol > 0.0)) throw std::invalid_argument("tol must be positive");
    if (cfg.src.from_file())
        throw std::invalid_argument("sweep needs a --family source");
    const Family family = family_from_name(cfg.src.family);
    const FamilyLimitRule rule = registry_limit(family);
    const std::string limit_name = cfg.limit.empty() ? rule.limit : cfg.limit;
    const MetricHandle limit = oracle_lookup(limit_name);

    PairSampler sampler;
    sampler.count = cfg.pairs;
    sampler.seed = cfg.seed;
    if (cfg.sampler == "adversarial") sampler.mode = PairSampler::Mode::Adversarial;
    else if (cfg.sampler == "random") sampler.mode = PairSampler::Mode::Random;
    else if (cfg.sampler == "grid") sampler.mode = PairSampler::Mode::Grid;
    else throw std::invalid_argument("unknown sampler '" + cfg.sampler + "'");

    SolverParams params;
    params.candidate.tol = cfg.tol;
    const ConvergenceReport report =
        convergence_report(family, parse_int_list(cfg.n_text), cfg.src.alpha, limit, sampler, params);

    std::string path = cfg.out;
    if (path.empty())
        path = output_dir(cfg.outdir) + "/sweep_" + report.family + "." +
               (cfg.format == "csv" ? "csv" : "json");
    write_text_file(path, cfg.format == "csv" ? report_to_csv(report) : report_to_json(report));

    for (const auto& r : report.records)
        std::cout << "n=" << r.n << " sup_diff=" << format_number(r.sup_diff)
                  << " pass=" << (r.pass ? "true" : "false") << "\n";
    std::cout << "report " << path << "\n";
    return report.all_pass() ? kExitOk : kExitInvariant;
}

// --------------------------------------------------------------- check ----

struct CheckConfig {
    ProfileSource src;
    bool has_source = false;
    std::string suite = "all";
    std::uint64_t seed = 1;
    double tol = 1e-9;
    std::size_t pairs = 120;
};

struct SuiteOutcome {
    int failures = 0;

    void record(const std::string& suite, bool ok, const std::string& detail) {
        if (ok) {
            std::cout << "PASS " << suite << "\n";
        } else {
            ++failures;
            std::cout << "FAIL " << suite << " " << detail << "\n";
        }
    }
};

std::string fail_json(const std::string& kind, const PointPair& w, double margin) {
    nlohmann::ordered_json j;
    j["kind"] = kind;
    j["witness"] = {{w.first.x, w.first.fiber}, {w.second.x, w.second.fiber}};
    j["margin"] = margin;
    return j.dump();
}

std::vector<std::pair<std::string, WarpProfile>> default_check_profiles() {
    return {
        {"constant", family_member(Family::Constant, 1)},
        {"s_20", family_member(Family::S, 20)},
        {"h_20", family_member(Family::H, 20)},
        {"z_10", family_member(Family::Z, 10)},
        {"k_10", family_member(Family::K, 10, 1.0)},
        {"w_5", family_member(Family::W, 5, 1.0)},
        {"v_6", family_member(Family::V, 6, 1.0)},
    };
}

int run_check(const CheckConfig& cfg) {
    if (!(cfg.tol > 0.0)) throw std::invalid_argument("tol must be positive");
    const ProductSpec unit = ProductSpec::unit_square();
    const CandidateOptions opt{cfg.tol};
    SuiteOutcome outcome;

    std::vector<std::pair<std::string, WarpProfile>> profiles;
    if (cfg.has_source)
        profiles.emplace_back("config", cfg.src.load());
    else
        profiles = default_check_profiles();

    auto want = [&](const std::string& name) { return cfg.suite == "all" || cfg.suite == name; };

    if (want("axioms")) {
        bool ok = true;
        std::string detail;
        for (const auto& [name, profile] : profiles) {
            PairSampler sampler{PairSampler::Mode::Adversarial, cfg.seed, cfg.pairs, 9};
            const auto ps = sampler.pairs(unit, &profile);
            const MetricHandle m = metric_handle_from_profile(profile, SolverKind::Candidate,
                                                              unit, SolverParams{opt, {}});
            for (std::size_t i = 0; i + 2 < ps.size() && ok; i += 3) {
                const SpacePoint a = ps[i].first, b = ps[i].second, c = ps[i + 1].second;
                const double ab = m(a, b), ba = m(b, a), bc = m(b, c), ac = m(a, c);
                if (std::fabs(ab - ba) > 3.0 * opt.tol) {
                    ok = false;
                    detail = fail_json("symmetry:" + name, {a, b}, std::fabs(ab - ba));
                } else if (m(a, a) > 3.0 * opt.tol) {
                    ok = false;
                    detail = fail_json("identity:" + name, {a, a}, m(a, a));
                } else if (ac > ab + bc + 3.0 * opt.tol) {
                    ok = false;
                    detail = fail_json("triangle:" + name, {a, c}, ac - ab - bc);
                }
            }
            if (!ok) break;
        }
        outcome.record("axioms", ok, detail);
    }

    if (want("sandwich")) {
        bool ok = true;
        std::string detail;
        PairSampler sampler{PairSampler::Mode::Grid, cfg.seed, 0, 17};
        const MetricHandle de = oracle_lookup("euclid"), dt = oracle_lookup("taxi");
        for (const auto& [p, q] : sampler.pairs(unit)) {
            const double d = de(p, q), taxi = dt(p, q);
            if (d > taxi + 1e-12 || taxi > std::sqrt(2.0) * d + 1e-12) {
                ok = false;
                detail = fail_json("sandwich", {p, q}, taxi - std::sqrt(2.0) * d);
                break;
            }
        }
        outcome.record("sandwich", ok, detail);
    }

    if (want("monotonicity")) {
        bool ok = true;
        std::string detail;
        std::mt19937_64 rng(cfg.seed);
        std::uniform_real_distribution<double> uval(0.5, 3.0), ufac(0.05, 1.0), ux(0.0, 1.0);
        for (int rep = 0; rep < 10 && ok; ++rep) {
            std::vector<double> bps{0.0, 1.0};
            std::uniform_int_distribution<int> nstrips(1, 5);
            const int m = nstrips(rng);
            for (int i = 1; i < m; ++i) bps.push_back(ux(rng));
            std::sort(bps.begin(), bps.end());
            bps.erase(std::unique(bps.begin(), bps.end()), bps.end());
            std::vector<double> vf, vg;
            for (std::size_t i = 0; i + 1 < bps.size(); ++i) {
                vf.push_back(uval(rng));
                vg.push_back(vf.back() * ufac(rng));
            }
            const WarpProfile f(bps, vf), g(bps, vg);
            PairSampler sampler{PairSampler::Mode::Random, cfg.seed + rep, 50, 9};
            const auto rep_result = monotonicity_check(f, g, sampler.pairs(unit, &f), unit, opt);
            if (!rep_result.pass) {
                ok = false;
                detail = fail_json("monotonicity", rep_result.witness, rep_result.worst_margin);
            }
        }
        outcome.record("monotonicity", ok, detail);
    }

    if (want("bounds")) {
        bool ok = true;
        std::string detail;
        const MetricHandle dt = oracle_lookup("taxi");
        for (const auto& [name, profile] : profiles) {
            const auto [inf_f, sup_f] = profile.global_bounds();
            PairSampler sampler{PairSampler::Mode::Adversarial, cfg.seed, cfg.pairs, 9};
            const auto ps = sampler.pairs(unit, &profile);
            const MetricHandle m = metric_handle_from_profile(profile, SolverKind::Candidate,
                                                              unit, SolverParams{opt, {}});
            const auto env = lipschitz_envelope(m, ps, unit);
            if (env.c_est < std::min(1.0, inf_f) - m.error_budget) {
                ok = false;
                detail = fail_json("lower_bound:" + name, ps.front(),
                                   env.c_est - std::min(1.0, inf_f));
                break;
            }
            for (const auto& [p, q] : ps) {
                if (m(p, q) > sup_f * dt(p, q) + m.error_budget) {
                    ok = false;
                    detail = fail_json("taxi_bound:" + name, {p, q},
                                       m(p, q) - sup_f * dt(p, q));
                    break;
                }
            }
            if (!ok) break;
        }
        outcome.record("bounds", ok, detail);
    }

    if (want("counterexample")) {
        bool ok = true;
        std::string detail;
        for (int n : {4, 8, 16}) {
            const double alpha = cfg.has_source ? cfg.src.alpha : 1.0;
            const auto res = lipschitz_counterexample(n, alpha, opt);
            const double target = std::pow(n, alpha);
            if (std::fabs(res.ratio - target) > 1e-6 * target) {
                ok = false;
                detail = fail_json("counterexample", {res.p, res.q}, res.ratio - target);
                break;
            }
        }
        outcome.record("counterexample", ok, detail);
    }

    return outcome.failures == 0 ? kExitOk : kExitInvariant;
}

// ------------------------------------------------------------- gallery ----

struct GalleryConfig {
    std::string outdir;
    std::size_t pairs = 160;
    std::uint64_t seed = 1;
    double tol = 1e-9;
};

int run_gallery(const GalleryConfig& cfg) {
    const ProductSpec unit = ProductSpec::unit_square();
    const std::string dir = output_dir(cfg.outdir);
    SolverParams params;
    params.candidate.tol = cfg.tol;

    struct Canonical {
        int trace_n;
        SpacePoint p, q;
    };
    auto canonical = [](Family f) -> Canonical {
        switch (f) {
            case Family::H: return {10, {0.1, 0.0}, {0.1, 1.0}};
            case Family::K: return {10, {0.0, 0.25}, {0.0, 0.3}};
            case Family::W: return {5, {0.0, 0.1}, {0.0, 0.9}};
            case Family::V: return {6, {0.2, 0.3}, {0.4, 0.7}};
            default: return {10, {0.3, 0.1}, {0.4, 0.9}};
        }
    };

    for (Family f : family_registry()) {
        const FamilyLimitRule rule = registry_limit(f);
        const MetricHandle limit = oracle_lookup(rule.limit);
        PairSampler sampler{PairSampler::Mode::Adversarial, cfg.seed, cfg.pairs, 9};
        const std::vector<int> ns = {5, 10, 20, 40};
        const ConvergenceReport report = convergence_report(f, ns, 1.0, limit, sampler, params);

        std::string dat = "# n sup_diff bound\n";
        for (const auto& r : report.records) {
            const double bound = rule.bound_scale ? *rule.bound_scale / r.n : 0.0;
            dat += std::to_string(r.n) + " " + format_number(r.sup_diff) + " " +
                   format_number(bound) + "\n";
        }
        write_text_file(dir + "/gallery_" + report.family + "_supdiff.dat", dat);

        const Canonical c = canonical(f);
        const WarpProfile profile = family_member(f, c.trace_n, 1.0);
        const auto res = distance_candidates(profile, c.p, c.q, unit, params.candidate);
        std::string trace = "# x fiber\n";
        for (const auto& v : res.path.vertices)
            trace += format_number(v.x) + " " + format_number(v.fiber) + "\n";
        write_text_file(dir + "/gallery_" + report.family + "_trace.dat", trace);
        std::cout << "gallery " << report.family << "\n";
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"distance engine for warped product length spaces"};
    app.require_subcommand(1);

    DistConfig dist_cfg;
    auto* dist = app.add_subcommand("dist", "compute one warped distance");
    add_profile_flags(dist, dist_cfg.src);
    dist->add_option("--p", dist_cfg.p_text, "first point x,fiber")->required();
    dist->add_option("--q", dist_cfg.q_text, "second point x,fiber")->required();
    dist->add_option("--solver", dist_cfg.solver, "candidate | grid");
    dist->add_option("--tol", dist_cfg.tol, "candidate solver tolerance");
    dist->add_option("--h", dist_cfg.h, "grid step");
    dist->add_option("--base", dist_cfg.base, "interval | circle");
    dist->add_option("--fiber", dist_cfg.fiber_extent, "fiber length / circumference");

    SweepConfig sweep_cfg;
    auto* sweep = app.add_subcommand("sweep", "convergence sweep over a family");
    add_profile_flags(sweep, sweep_cfg.src);
    sweep->add_option("--n", sweep_cfg.n_text, "comma-separated n list")->required();
    sweep->add_option("--limit", sweep_cfg.limit, "limit oracle (default: family registry)");
    sweep->add_option("--sampler", sweep_cfg.sampler, "adversarial | random | grid");
    sweep->add_option("--pairs", sweep_cfg.pairs, "sample size");
    sweep->add_option("--seed", sweep_cfg.seed, "sampler seed");
    sweep->add_option("--format", sweep_cfg.format, "json | csv");
    sweep->add_option("--out", sweep_cfg.out, "report path");
    sweep->add_option("--outdir", sweep_cfg.outdir, "output directory");
    sweep->add_option("--tol", sweep_cfg.tol, "candidate solver tolerance");

    CheckConfig check_cfg;
    auto* check = app.add_subcommand("check", "run the invariant suites");
    add_profile_flags(check, check_cfg.src);
    check->add_option("--suite", check_cfg.suite,
                      "all | axioms | sandwich | monotonicity | bounds | counterexample");
    check->add_option("--seed", check_cfg.seed, "sampler seed");
    check->add_option("--tol", check_cfg.tol, "candidate solver tolerance");
    check->add_option("--pairs", check_cfg.pairs, "pairs per suite");

    GalleryConfig gallery_cfg;
    auto* gallery = app.add_subcommand("gallery", "emit plot data for every family");
    gallery->add_option("--outdir", gallery_cfg.outdir, "output directory");
    gallery->add_option("--pairs", gallery_cfg.pairs, "sample size per sweep point");
    gallery->add_option("--seed", gallery_cfg.seed, "sampler seed");
    gallery->add_option("--tol", gallery_cfg.tol, "candidate solver tolerance");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (dist->parsed()) return run_dist(dist_cfg);
        if (sweep->parsed()) return run_sweep(sweep_cfg);
        if (check->parsed()) {
            check_cfg.has_source = !check_cfg.src.family.empty() || check_cfg.src.from_file();
            return run_check(check_cfg);
        }
        if (gallery->parsed()) return run_gallery(gallery_cfg);
    } catch (const resource_error& e) {
        std::cerr << "resource error: " << e.what() << "\n";
        return kExitResource;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::domain_error& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
