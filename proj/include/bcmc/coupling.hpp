#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "bcmc/lumped.hpp"
#include "bcmc/params.hpp"
#include "bcmc/rng.hpp"
#include "bcmc/spin_config.hpp"

namespace bcmc {

inline constexpr std::int64_t coupling_step_guard = 1'000'000'000;

/// Per-step trajectory sample of a coupled pair.
struct CouplingRecord {
    std::int64_t t = 0;
    long rho = 0;  // Hamming distance
    long sx = 0;   // magnetization of X
    long sy = 0;   // magnetization of Y
};

struct CouplingTrajectory {
    std::vector<CouplingRecord> records;  // subsampled every n steps
    std::optional<std::int64_t> coalesced_at;
    std::uint64_t seed = 0;
    std::uint64_t stream_id = 0;
};

/// Runs the coupling from (x0, y0) until the chains meet or `cap` steps
/// elapse. A cap that runs out leaves coalesced_at empty; it is a result,
/// not an error.
CouplingTrajectory coupling_time(const ModelParams& params, const SpinConfiguration& x0,
                                 const SpinConfiguration& y0, std::int64_t cap,
                                 RngStream rng);

struct MeanStepDistance {
    double estimate = 0.0;
    double stderr_ = 0.0;
    std::int64_t replicas = 0;
};

/// Monte Carlo mean of rho(X, Y) after one coupled step from a fixed
/// neighboring pair (rho(sigma, tau) = 1), over m independent replicas on
/// substreams of `rng`. Counts are aggregated exactly, so the result is
/// identical for any thread count.
MeanStepDistance empirical_mean_step_distance(const ModelParams& params,
                                              const SpinConfiguration& sigma,
                                              const SpinConfiguration& tau,
                                              std::int64_t m, RngStream rng);

/// Inverse-CDF sampler of the exact stationary count distribution, built
/// once per (n, beta, K); usable from many threads via distinct streams.
class StationaryCountSampler {
public:
    explicit StationaryCountSampler(const ModelParams& params);
    LumpedState sample_counts(RngStream& rng) const;
    SpinConfiguration sample(RngStream& rng) const;

private:
    ModelParams params_;
    LumpedStateSpace space_;
    std::vector<double> cdf_;
};

struct StationarySample {
    SpinConfiguration config;
    bool exact_stationary = false;
};

/// Stationary-start sampler. For n <= max_lumped_n the counts are drawn
/// exactly from the Gibbs distribution and spins placed exchangeably; for
/// larger n a Glauber burn-in of 100 n log n steps from all-zero stands in
/// and is flagged approximate.
StationarySample sample_stationary_config(const ModelParams& params, RngStream& rng);

struct TvUpperPoint {
    std::int64_t t = 0;
    double estimate = 0.0;  // fraction of replicas not yet coalesced
    double stderr_ = 0.0;   // binomial standard error
};

struct TvUpperCurve {
    std::vector<TvUpperPoint> points;
    bool exact_stationary = false;
    std::int64_t replicas = 0;
};

/// Coupling upper bound on the worst-start TV distance: Y starts from a
/// (near-)stationary sample, X from x0, and P(X_t != Y_t) is estimated on
/// the given time grid over independent replicas.
TvUpperCurve tv_upper_via_coupling(const ModelParams& params, const SpinConfiguration& x0,
                                   std::int64_t replicas,
                                   const std::vector<std::int64_t>& t_grid, RngStream rng);

/// Coalescence times of `replicas` independent couplings of (x0, stationary
/// start), capped at `cap`; entry is cap+1 when a pair never met.
std::vector<std::int64_t> coupling_times_from_stationary(const ModelParams& params,
                                                         const SpinConfiguration& x0,
                                                         std::int64_t replicas,
                                                         std::int64_t cap, RngStream rng);

}  // namespace bcmc
