// bcmc: mean-field Blume-Capel experiments from the command line.
//
// Subcommands sweep the phase diagram, trace the critical curves, compute
// exact lumped-chain mixing times and bottleneck bounds, run Monte Carlo
// coupling experiments, and fit scaling laws to the results. Every output
// file starts with a '#'-prefixed JSON metadata line and is a pure
// function of (config, seed).

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "bcmc/chain.hpp"
#include "bcmc/coupling.hpp"
#include "bcmc/free_energy.hpp"
#include "bcmc/lumped.hpp"
#include "bcmc/scaling.hpp"
#include "bcmc/serialize.hpp"
#include "bcmc/spin_config.hpp"

namespace {

constexpr const char* kVersion = "1.0.0";

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitSolver = 3;
constexpr int kExitCap = 4;

using bcmc::json;

struct GlobalOpts {
    std::uint64_t seed = 0;
    int threads = 0;
    std::string out;
    bool json_lines = false;
    double tol = 1e-8;
};

// Grid strings: "v", "start:stop:step", or "start:stop:*factor" (geometric).
std::vector<double> parse_grid(const std::string& spec) {
    std::vector<double> out;
    auto c1 = spec.find(':');
    if (c1 == std::string::npos) {
        out.push_back(std::stod(spec));
        return out;
    }
    auto c2 = spec.find(':', c1 + 1);
    if (c2 == std::string::npos)
        throw CLI::ValidationError("grid", "expected start:stop:step in '" + spec + "'");
    double start = std::stod(spec.substr(0, c1));
    double stop = std::stod(spec.substr(c1 + 1, c2 - c1 - 1));
    std::string step = spec.substr(c2 + 1);
    if (!step.empty() && step[0] == '*') {
        double factor = std::stod(step.substr(1));
        if (!(factor > 1.0) || !(start > 0.0))
            throw CLI::ValidationError("grid", "geometric grid needs factor > 1 and start > 0");
        for (double v = start; v <= stop * (1.0 + 1e-12); v *= factor) out.push_back(v);
    } else {
        double h = std::stod(step);
        if (!(h > 0.0)) throw CLI::ValidationError("grid", "step must be positive");
        for (double v = start; v <= stop + 1e-12 * h; v += h) out.push_back(v);
    }
    if (out.empty()) throw CLI::ValidationError("grid", "empty grid '" + spec + "'");
    return out;
}

std::vector<int> parse_int_grid(const std::string& spec) {
    std::vector<int> out;
    for (double v : parse_grid(spec)) out.push_back(static_cast<int>(std::llround(v)));
    return out;
}

// K values are either plain numbers or curve-relative specs like "0.9*k1";
// curves resolve at the given beta and are recomputed per call.
double resolve_k(const std::string& spec, double beta, double tol) {
    auto star = spec.find('*');
    std::string factor_str = "1", curve = spec;
    if (star != std::string::npos) {
        factor_str = spec.substr(0, star);
        curve = spec.substr(star + 1);
    }
    if (curve == "kc2") return std::stod(factor_str) * bcmc::kc2(beta);
    if (curve == "k1") return std::stod(factor_str) * bcmc::k1(beta, tol);
    if (curve == "kc1") return std::stod(factor_str) * bcmc::kc1(beta, std::min(tol, 1e-9));
    return std::stod(spec);  // plain number
}

void apply_threads(int threads) {
#ifdef _OPENMP
    if (threads > 0) omp_set_num_threads(threads);
#else
    (void)threads;
#endif
}

json base_metadata(const GlobalOpts& g, const std::string& experiment) {
    return json{{"tool", "bcmc"},
                {"version", kVersion},
                {"experiment", experiment},
                {"seed", g.seed},
                {"tol", g.tol}};
}

void emit(const GlobalOpts& g, const json& metadata,
          const std::vector<std::string>& columns,
          const std::vector<std::vector<std::string>>& rows,
          const std::vector<std::string>& trailers = {}) {
    auto write = [&](std::ostream& os) {
        bcmc::write_csv(os, metadata, columns, rows, g.json_lines);
        for (const auto& t : trailers) os << t << "\n";
    };
    if (g.out.empty()) {
        write(std::cout);
    } else {
        std::ofstream f(g.out, std::ios::binary);
        if (!f) throw CLI::ValidationError("--out", "cannot open '" + g.out + "'");
        write(f);
    }
}

std::string fmt(double v) { return bcmc::format_double(v); }

// ---------------------------------------------------------------- commands

int run_phase_diagram(const GlobalOpts& g, const std::string& beta_spec,
                      const std::string& k_spec) {
    auto betas = parse_grid(beta_spec);
    auto ks = parse_grid(k_spec);

    std::vector<std::vector<std::string>> rows(betas.size() * ks.size());
#pragma omp parallel for schedule(dynamic)
    for (std::size_t bi = 0; bi < betas.size(); ++bi) {
        auto curves = bcmc::critical_curves(betas[bi], g.tol);
        for (std::size_t ki = 0; ki < ks.size(); ++ki) {
            auto rep = bcmc::classify(betas[bi], ks[ki], g.tol, curves);
            rows[bi * ks.size() + ki] = {fmt(betas[bi]), fmt(ks[ki]),
                                         bcmc::to_string(rep.phase),
                                         bcmc::to_string(rep.mixing_prediction)};
        }
    }
    auto meta = base_metadata(g, "phase-diagram");
    meta["beta_grid"] = beta_spec;
    meta["k_grid"] = k_spec;
    emit(g, meta, {"beta", "k", "phase", "mixing_prediction"}, rows);
    return kExitOk;
}

int run_critical_curves(const GlobalOpts& g, const std::string& beta_spec) {
    auto betas = parse_grid(beta_spec);
    std::vector<std::vector<std::string>> rows(betas.size());
#pragma omp parallel for schedule(dynamic)
    for (std::size_t i = 0; i < betas.size(); ++i) {
        auto curves = bcmc::critical_curves(betas[i], g.tol);
        rows[i] = {fmt(betas[i]), curves.kc2 ? fmt(*curves.kc2) : "",
                   curves.k1 ? fmt(*curves.k1) : "", curves.kc1 ? fmt(*curves.kc1) : "",
                   curves.wc ? fmt(*curves.wc) : ""};
    }
    auto meta = base_metadata(g, "critical-curves");
    meta["beta_grid"] = beta_spec;
    emit(g, meta, {"beta", "kc2", "k1", "kc1", "wc"}, rows);
    return kExitOk;
}

int run_mix_exact(const GlobalOpts& g, const std::string& n_spec, double beta,
                  const std::string& k_spec, double eps, std::int64_t tmax_override,
                  bool all_starts) {
    auto ns = parse_int_grid(n_spec);
    double k = resolve_k(k_spec, beta, g.tol);
    auto curves = bcmc::critical_curves(beta, g.tol);
    bool rapid = bcmc::classify(beta, ns.front() ? k : k, g.tol, curves).mixing_prediction ==
                 bcmc::MixingPrediction::Rapid;

    std::vector<std::vector<std::string>> rows;
    std::vector<std::pair<double, double>> fit_points;
    bool cap_hit = false;
    for (int n : ns) {
        bcmc::ModelParams params(n, beta, k);
        bool attempt = rapid || n <= 60;
        std::string tmix_str, mixed_str = "false", last_d_str, lower_str;
        if (attempt) {
            auto cap = tmax_override > 0 ? tmax_override
                                         : bcmc::default_tmix_cap(params, rapid);
            std::vector<bcmc::LumpedState> starts;
            if (all_starts) starts = bcmc::LumpedStateSpace(n).states();
            else starts = bcmc::default_tmix_starts(n);
            auto res = bcmc::t_mix_exact(params, eps, starts, cap);
            mixed_str = res.mixed ? "true" : "false";
            last_d_str = fmt(res.last_d);
            if (res.mixed) {
                tmix_str = std::to_string(res.t);
                fit_points.emplace_back(n, static_cast<double>(res.t));
            } else {
                cap_hit = true;
            }
        } else {
            // slow region at large n: the bottleneck lower bound stands in
            lower_str = fmt(bcmc::bottleneck(params, 0.0).tmix_lower);
        }
        rows.push_back({std::to_string(n), fmt(beta), fmt(k), fmt(eps), tmix_str,
                        mixed_str, last_d_str, lower_str});
    }

    std::vector<std::string> trailers;
    if (fit_points.size() >= 4) {
        auto fit = bcmc::fit_scaling(fit_points, bcmc::ScalingModel::PolyNLogN);
        trailers.push_back("#fit " + bcmc::to_json(fit).dump());
    }
    auto meta = base_metadata(g, "mix-exact");
    meta["n_grid"] = n_spec;
    meta["beta"] = beta;
    meta["k_spec"] = k_spec;
    meta["k"] = k;
    meta["eps"] = eps;
    meta["all_starts"] = all_starts;
    emit(g, meta,
         {"n", "beta", "k", "eps", "t_mix", "mixed", "last_d", "tmix_lower_bottleneck"},
         rows, trailers);
    return cap_hit ? kExitCap : kExitOk;
}

int run_mix_couple(const GlobalOpts& g, int n, double beta, const std::string& k_spec,
                   std::int64_t replicas, const std::string& tgrid_spec,
                   const std::string& start) {
    double k = resolve_k(k_spec, beta, g.tol);
    bcmc::ModelParams params(n, beta, k);

    std::vector<std::int64_t> t_grid;
    for (double v : parse_grid(tgrid_spec))
        t_grid.push_back(static_cast<std::int64_t>(std::llround(v)));

    std::int8_t value = start == "all-minus" ? -1 : (start == "all-zero" ? 0 : +1);
    auto x0 = bcmc::SpinConfiguration::constant(n, value);

    auto curve = bcmc::tv_upper_via_coupling(params, x0, replicas, t_grid,
                                             bcmc::RngStream(g.seed, 0));
    std::vector<std::vector<std::string>> rows;
    for (const auto& p : curve.points)
        rows.push_back({std::to_string(p.t), fmt(p.estimate), fmt(p.stderr_)});

    auto meta = base_metadata(g, "mix-couple");
    meta["n"] = n;
    meta["beta"] = beta;
    meta["k_spec"] = k_spec;
    meta["k"] = k;
    meta["replicas"] = replicas;
    meta["start"] = start;
    meta["exact_stationary"] = curve.exact_stationary;
    emit(g, meta, {"t", "p_not_coalesced", "stderr"}, rows);
    return kExitOk;
}

int run_coupling_contraction(const GlobalOpts& g, int n, double beta,
                             const std::string& k_spec, const std::string& mode,
                             std::int64_t m, const std::string& sn_spec,
                             const std::string& grid_spec) {
    double k = resolve_k(k_spec, beta, g.tol);
    auto meta = base_metadata(g, "coupling-contraction");
    meta["n"] = n;
    meta["beta"] = beta;
    meta["k_spec"] = k_spec;
    meta["k"] = k;
    meta["mode"] = mode;

    if (mode == "analytic") {
        auto grid = parse_grid(grid_spec);
        auto prof = bcmc::contraction_profile(beta, k, grid);
        std::vector<std::vector<std::string>> rows;
        for (const auto& p : prof)
            rows.push_back({fmt(p.z), fmt(p.local), fmt(p.aggregate),
                            p.local_gt_one ? "true" : "false",
                            p.aggregate_lt_one ? "true" : "false"});
        emit(g, meta, {"z", "local", "aggregate", "local_gt_one", "aggregate_lt_one"},
             rows);
        return kExitOk;
    }

    // empirical: one-step mean coupling distance at chosen magnetizations
    bcmc::ModelParams params(n, beta, k);
    std::vector<std::vector<std::string>> rows;
    std::uint64_t stream = 0;
    for (double sv : parse_grid(sn_spec)) {
        long s = std::lround(sv);
        std::vector<std::int8_t> sp(n, 0);
        for (long i = 0; i < s; ++i) sp[i] = 1;
        bcmc::SpinConfiguration sigma(sp);
        auto tau = sigma;
        tau.set_spin(n - 1, +1);
        auto est = bcmc::empirical_mean_step_distance(params, sigma, tau, m,
                                                      bcmc::RngStream(g.seed, stream++));
        double lemma = (n - 1.0) / n +
                       (n - 1.0) / n * (bcmc::phi_fn(params, s + 1) - bcmc::phi_fn(params, s));
        rows.push_back({std::to_string(s), fmt(est.estimate), fmt(est.stderr_), fmt(lemma),
                        fmt(std::fabs(est.estimate - lemma))});
    }
    meta["m"] = m;
    emit(g, meta, {"s_sigma", "estimate", "stderr", "lemma_formula", "abs_diff"}, rows);
    return kExitOk;
}

int run_bottleneck(const GlobalOpts& g, const std::string& n_spec, double beta,
                   const std::string& k_spec, double zprime, bool do_fit) {
    auto ns = parse_int_grid(n_spec);
    double k = resolve_k(k_spec, beta, g.tol);

    std::vector<bcmc::BottleneckReport> reps(ns.size());
#pragma omp parallel for schedule(dynamic)
    for (std::size_t i = 0; i < ns.size(); ++i)
        reps[i] = bcmc::bottleneck(bcmc::ModelParams(ns[i], beta, k), zprime);

    std::vector<std::vector<std::string>> rows;
    std::vector<std::pair<double, double>> fit_points;
    for (std::size_t i = 0; i < ns.size(); ++i) {
        rows.push_back({std::to_string(ns[i]), fmt(beta), fmt(k), fmt(reps[i].zprime),
                        fmt(reps[i].phi), fmt(reps[i].phi_star), fmt(reps[i].tmix_lower),
                        fmt(reps[i].zprime_star)});
        fit_points.emplace_back(ns[i], 1.0 / reps[i].phi_star);
    }
    std::vector<std::string> trailers;
    if (do_fit && fit_points.size() >= 4) {
        auto fit = bcmc::fit_scaling(fit_points, bcmc::ScalingModel::Exponential);
        trailers.push_back("#fit " + bcmc::to_json(fit).dump());
    }
    auto meta = base_metadata(g, "bottleneck");
    meta["n_grid"] = n_spec;
    meta["beta"] = beta;
    meta["k_spec"] = k_spec;
    meta["k"] = k;
    meta["zprime_requested"] = zprime;
    emit(g, meta,
         {"n", "beta", "k", "zprime", "phi", "phi_star", "tmix_lower", "zprime_star"},
         rows, trailers);
    return kExitOk;
}

int run_scaling_fit(const GlobalOpts& g, const std::string& input,
                    const std::string& model_str, const std::string& xcol,
                    const std::string& ycol) {
    std::ifstream f(input);
    if (!f) throw CLI::ValidationError("--input", "cannot open '" + input + "'");

    std::string line;
    std::vector<std::string> header;
    std::vector<std::pair<double, double>> points;
    int xi = -1, yi = -1;
    while (std::getline(f, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        if (header.empty()) {
            header = cells;
            for (std::size_t i = 0; i < header.size(); ++i) {
                if (header[i] == xcol) xi = static_cast<int>(i);
                if (header[i] == ycol) yi = static_cast<int>(i);
            }
            if (xi < 0 || yi < 0)
                throw CLI::ValidationError("--xcol/--ycol", "column not found in header");
            continue;
        }
        if (static_cast<int>(cells.size()) <= std::max(xi, yi)) continue;
        if (cells[xi].empty() || cells[yi].empty()) continue;
        points.emplace_back(std::stod(cells[xi]), std::stod(cells[yi]));
    }
    auto fit = bcmc::fit_scaling(points, bcmc::scaling_model_from_string(model_str));

    auto meta = base_metadata(g, "scaling-fit");
    meta["input"] = input;
    meta["model"] = model_str;
    std::vector<std::vector<std::string>> rows{{bcmc::to_json(fit).dump()}};
    emit(g, meta, {"fit"}, rows);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"mean-field Blume-Capel mixing-time experiments"};
    app.set_version_flag("--version", kVersion);
    app.set_config("--config")->description("flat TOML file mirroring the flags");
    app.require_subcommand(1);

    GlobalOpts g;
    app.add_option("--seed", g.seed, "base RNG seed")->capture_default_str();
    app.add_option("--threads", g.threads, "worker threads (0 = library default)")
        ->capture_default_str();
    app.add_option("--out", g.out, "output file (default stdout)");
    app.add_flag("--json", g.json_lines, "emit line-delimited JSON rows instead of CSV");
    app.add_option("--tol", g.tol, "solver tolerance")->capture_default_str();

    // phase-diagram
    std::string pd_beta = "0.2:3.0:0.05", pd_k = "0.3:2.0:0.05";
    auto* pd = app.add_subcommand("phase-diagram", "phase and mixing labels over a grid");
    pd->add_option("--beta", pd_beta, "beta grid")->capture_default_str();
    pd->add_option("--k", pd_k, "K grid")->capture_default_str();

    // critical-curves
    std::string cc_beta = "0.2:3.0:0.01";
    auto* cc = app.add_subcommand("critical-curves", "kc2, k1, kc1, wc along beta");
    cc->add_option("--beta", cc_beta, "beta grid")->capture_default_str();

    // mix-exact
    std::string me_n = "20:320:*2", me_k = "0.8";
    double me_beta = 1.0, me_eps = 0.25;
    std::int64_t me_tmax = 0;
    bool me_all_starts = false;
    auto* me = app.add_subcommand("mix-exact", "exact lumped-chain mixing times");
    me->add_option("--n", me_n, "system-size grid")->capture_default_str();
    me->add_option("--beta", me_beta, "inverse temperature")->capture_default_str();
    me->add_option("--k", me_k, "K (number or factor*curve, e.g. 0.9*k1)")
        ->capture_default_str();
    me->add_option("--eps", me_eps, "TV threshold")->capture_default_str();
    me->add_option("--tmax", me_tmax, "iteration cap override (0 = default)")
        ->capture_default_str();
    me->add_flag("--all-starts", me_all_starts, "maximize over every lumped start");

    // mix-couple
    int mc_n = 1000;
    double mc_beta = 1.0;
    std::string mc_k = "0.8", mc_tgrid = "0:100000:10000", mc_start = "all-plus";
    std::int64_t mc_replicas = 200;
    auto* mc = app.add_subcommand("mix-couple",
                                  "coupling-based TV upper bound from a stationary start");
    mc->add_option("--n", mc_n, "system size")->capture_default_str();
    mc->add_option("--beta", mc_beta, "inverse temperature")->capture_default_str();
    mc->add_option("--k", mc_k, "K spec")->capture_default_str();
    mc->add_option("--replicas", mc_replicas, "independent coupled pairs")
        ->capture_default_str();
    mc->add_option("--tgrid", mc_tgrid, "time grid")->capture_default_str();
    mc->add_option("--start", mc_start, "all-plus | all-minus | all-zero")
        ->capture_default_str();

    // coupling-contraction
    int ct_n = 200;
    double ct_beta = 2.0;
    std::string ct_k = "0.98*k1", ct_mode = "analytic", ct_sn = "0,0,0";
    std::string ct_grid = "0.002:1.0:0.002";
    std::int64_t ct_m = 200000;
    auto* ct = app.add_subcommand("coupling-contraction",
                                  "contraction coefficients or one-step coupling means");
    ct->add_option("--n", ct_n, "system size")->capture_default_str();
    ct->add_option("--beta", ct_beta, "inverse temperature")->capture_default_str();
    ct->add_option("--k", ct_k, "K spec")->capture_default_str();
    ct->add_option("--mode", ct_mode, "analytic | empirical")->capture_default_str();
    ct->add_option("--m", ct_m, "replicas per point (empirical mode)")
        ->capture_default_str();
    ct->add_option("--sn", ct_sn, "sigma magnetizations (empirical mode), grid syntax")
        ->capture_default_str();
    ct->add_option("--grid", ct_grid, "z grid (analytic mode)")->capture_default_str();

    // bottleneck
    std::string bn_n = "20:120:10", bn_k = "1.6";
    double bn_beta = 1.0, bn_zprime = 0.0;
    bool bn_fit = false;
    auto* bn = app.add_subcommand("bottleneck", "exact bottleneck ratios and lower bounds");
    bn->add_option("--n", bn_n, "system-size grid")->capture_default_str();
    bn->add_option("--beta", bn_beta, "inverse temperature")->capture_default_str();
    bn->add_option("--k", bn_k, "K spec")->capture_default_str();
    bn->add_option("--zprime", bn_zprime, "cut location in [0, 1)")->capture_default_str();
    bn->add_flag("--fit", bn_fit, "append an exponential fit of 1/phi_star");

    // scaling-fit
    std::string sf_input, sf_model = "poly_nlogn", sf_x = "n", sf_y = "t_mix";
    auto* sf = app.add_subcommand("scaling-fit", "fit a scaling law to a produced CSV");
    sf->add_option("--input", sf_input, "input CSV")->required();
    sf->add_option("--model", sf_model, "poly_nlogn | exponential")->capture_default_str();
    sf->add_option("--xcol", sf_x, "x column name")->capture_default_str();
    sf->add_option("--ycol", sf_y, "y column name")->capture_default_str();

    for (auto* sub : app.get_subcommands([](const CLI::App*) { return true; }))
        sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help / --version
        app.exit(e);
        return kExitConfig;
    }

    apply_threads(g.threads);
    try {
        if (pd->parsed()) return run_phase_diagram(g, pd_beta, pd_k);
        if (cc->parsed()) return run_critical_curves(g, cc_beta);
        if (me->parsed())
            return run_mix_exact(g, me_n, me_beta, me_k, me_eps, me_tmax, me_all_starts);
        if (mc->parsed())
            return run_mix_couple(g, mc_n, mc_beta, mc_k, mc_replicas, mc_tgrid, mc_start);
        if (ct->parsed())
            return run_coupling_contraction(g, ct_n, ct_beta, ct_k, ct_mode, ct_m, ct_sn,
                                            ct_grid);
        if (bn->parsed()) return run_bottleneck(g, bn_n, bn_beta, bn_k, bn_zprime, bn_fit);
        if (sf->parsed()) return run_scaling_fit(g, sf_input, sf_model, sf_x, sf_y);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const bcmc::solver_error& e) {
        std::cerr << "solver failure: " << e.what() << "\n";
        return kExitSolver;
    } catch (const std::domain_error& e) {
        std::cerr << "solver failure: " << e.what() << "\n";
        return kExitSolver;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitSolver;
    }
    return kExitConfig;
}
