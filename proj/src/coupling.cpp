#include "bcmc/coupling.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bcmc {

CouplingTrajectory coupling_time(const ModelParams& params, const SpinConfiguration& x0,
                                 const SpinConfiguration& y0, std::int64_t cap,
                                 RngStream rng) {
    if (x0.n() != y0.n() || x0.n() != params.n)
        throw std::domain_error("coupling_time: size mismatch");
    if (cap < 0 || cap > coupling_step_guard)
        throw std::domain_error("coupling_time: cap outside [0, 1e9]");

    CouplingTrajectory traj;
    traj.seed = rng.seed();
    traj.stream_id = rng.stream_id();

    SpinConfiguration x = x0, y = y0;
    long rho = hamming(x, y);
    traj.records.push_back({0, rho, x.total_spin(), y.total_spin()});
    if (rho == 0) {
        traj.coalesced_at = 0;
        return traj;
    }
    for (std::int64_t t = 1; t <= cap; ++t) {
        rho += coupled_step(params, x, y, rng).drho;
        if (rho == 0) {
            traj.records.push_back({t, 0, x.total_spin(), y.total_spin()});
            traj.coalesced_at = t;
            return traj;
        }
        if (t % params.n == 0)
            traj.records.push_back({t, rho, x.total_spin(), y.total_spin()});
    }
    return traj;
}

MeanStepDistance empirical_mean_step_distance(const ModelParams& params,
                                              const SpinConfiguration& sigma,
                                              const SpinConfiguration& tau,
                                              std::int64_t m, RngStream rng) {
    if (hamming(sigma, tau) != 1)
        throw std::domain_error("empirical_mean_step_distance: pair must be neighbors");
    if (m < 10'000)
        throw std::domain_error("empirical_mean_step_distance: m must be >= 1e4");

    // rho after one step from a neighboring pair is 0, 1 or 2; exact
    // integer tallies keep the aggregation deterministic under OpenMP.
    std::int64_t count0 = 0, count2 = 0;
#pragma omp parallel for schedule(static) reduction(+ : count0, count2)
    for (std::int64_t r = 0; r < m; ++r) {
        RngStream stream = rng.substream(static_cast<std::uint64_t>(r));
        SpinConfiguration x = sigma, y = tau;
        long rho = 1 + coupled_step(params, x, y, stream).drho;
        if (rho == 0) ++count0;
        else if (rho == 2) ++count2;
    }
    double p0 = static_cast<double>(count0) / m;
    double p2 = static_cast<double>(count2) / m;
    double mean = (1.0 - p0 - p2) + 2.0 * p2;
    double second = (1.0 - p0 - p2) + 4.0 * p2;
    double var = std::max(0.0, second - mean * mean);
    return {mean, std::sqrt(var / m), m};
}

StationaryCountSampler::StationaryCountSampler(const ModelParams& params)
    : params_(params), space_(params.n) {
    auto dist = gibbs_stationary(params);
    cdf_.resize(dist.probs.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < dist.probs.size(); ++i) {
        acc += dist.probs[i];
        cdf_[i] = acc;
    }
    cdf_.back() = 1.0;
}

LumpedState StationaryCountSampler::sample_counts(RngStream& rng) const {
    double u = rng.next_double();
    auto it = std::lower_bound(cdf_.begin(), cdf_.end(), u);
    auto idx = static_cast<std::int64_t>(it - cdf_.begin());
    return space_.state(std::min(idx, space_.size() - 1));
}

SpinConfiguration StationaryCountSampler::sample(RngStream& rng) const {
    LumpedState counts = sample_counts(rng);
    return SpinConfiguration::from_counts(
        counts.n_minus, params_.n - counts.n_minus - counts.n_plus, counts.n_plus, rng);
}

StationarySample sample_stationary_config(const ModelParams& params, RngStream& rng) {
    if (params.n <= max_lumped_n) {
        StationaryCountSampler sampler(params);
        return {sampler.sample(rng), true};
    }
    auto config = SpinConfiguration::constant(params.n, 0);
    auto burn_in = static_cast<std::int64_t>(
        std::ceil(100.0 * params.n * std::log(params.n)));
    for (std::int64_t t = 0; t < burn_in; ++t) glauber_step(params, config, rng);
    return {std::move(config), false};
}

namespace {

// Coalescence time of one coupled pair (cap+1 if the cap ran out).
std::int64_t run_one_coupling(const ModelParams& params, SpinConfiguration x,
                              SpinConfiguration y, std::int64_t cap, RngStream& rng) {
    long rho = hamming(x, y);
    if (rho == 0) return 0;
    for (std::int64_t t = 1; t <= cap; ++t) {
        rho += coupled_step(params, x, y, rng).drho;
        if (rho == 0) return t;
    }
    return cap + 1;
}

}  // namespace

std::vector<std::int64_t> coupling_times_from_stationary(const ModelParams& params,
                                                         const SpinConfiguration& x0,
                                                         std::int64_t replicas,
                                                         std::int64_t cap, RngStream rng) {
    if (cap < 0 || cap > coupling_step_guard)
        throw std::domain_error("coupling_times_from_stationary: cap outside [0, 1e9]");
    const bool exact = params.n <= max_lumped_n;
    std::optional<StationaryCountSampler> sampler;
    if (exact) sampler.emplace(params);
    std::vector<std::int64_t> times(replicas);
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t r = 0; r < replicas; ++r) {
        RngStream stream = rng.substream(static_cast<std::uint64_t>(r));
        SpinConfiguration y = exact ? sampler->sample(stream)
                                    : sample_stationary_config(params, stream).config;
        times[r] = run_one_coupling(params, x0, y, cap, stream);
    }
    return times;
}

TvUpperCurve tv_upper_via_coupling(const ModelParams& params, const SpinConfiguration& x0,
                                   std::int64_t replicas,
                                   const std::vector<std::int64_t>& t_grid,
                                   RngStream rng) {
    if (replicas < 100)
        throw std::domain_error("tv_upper_via_coupling: need at least 100 replicas");
    if (t_grid.empty()) throw std::domain_error("tv_upper_via_coupling: empty time grid");

    std::int64_t cap = *std::max_element(t_grid.begin(), t_grid.end());
    TvUpperCurve curve;
    curve.replicas = replicas;
    curve.exact_stationary = params.n <= max_lumped_n;

    auto times = coupling_times_from_stationary(params, x0, replicas, cap, rng);
    for (auto t : t_grid) {
        std::int64_t not_met = 0;
        for (auto tau : times) not_met += tau > t;
        double p = static_cast<double>(not_met) / replicas;
        curve.points.push_back({t, p, std::sqrt(p * (1.0 - p) / replicas)});
    }
    return curve;
}

}  // namespace bcmc
