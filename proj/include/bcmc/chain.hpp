#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "bcmc/lumped.hpp"
#include "bcmc/params.hpp"

namespace bcmc {

/// Row-stochastic sparse transition matrix of the lumped Glauber chain.
/// Stored CSR by source row (at most 7 nonzeros per row: six neighbor
/// moves plus the aggregated self-loop) together with the incoming-edge
/// transpose used by the propagation kernel.
struct TransitionMatrix {
    int n = 0;
    double beta = 0.0;
    double k = 0.0;

    std::vector<std::int64_t> row_ptr;
    std::vector<std::int32_t> col;
    std::vector<double> val;

    // transpose (gather) layout: for each destination, its incoming arcs
    std::vector<std::int64_t> in_ptr;
    std::vector<std::int32_t> in_src;
    std::vector<double> in_val;

    std::int64_t size() const { return static_cast<std::int64_t>(row_ptr.size()) - 1; }
};

/// Build the lumped transition matrix. Rows are independent, so the build
/// is parallelized over rows.
TransitionMatrix glauber_lumped_matrix(const ModelParams& params);

/// Straightforward single-threaded reference build, kept for testing the
/// parallel kernel against.
TransitionMatrix glauber_lumped_matrix_serial(const ModelParams& params);

/// One step of the distribution: out[j] = sum_i mu[i] P[i][j], computed by
/// gathering over incoming arcs (deterministic for any thread count).
void propagate(const TransitionMatrix& P, const std::vector<double>& mu,
               std::vector<double>& out);

/// Reference scatter implementation of the same product.
void propagate_serial(const TransitionMatrix& P, const std::vector<double>& mu,
                      std::vector<double>& out);

/// Gather product with 128-bit accumulators, for small-n cross-checks of
/// the double-precision kernel.
void propagate_extended(const TransitionMatrix& P, const std::vector<double>& mu,
                        std::vector<double>& out);

double tv_distance(const std::vector<double>& mu, const std::vector<double>& nu);

struct MixingCurve {
    std::vector<std::int64_t> t;
    std::vector<double> d;
    LumpedState start;
    std::vector<std::pair<double, std::int64_t>> eps_hit;  // (eps, first t with d <= eps)
};

/// Total-variation decay curve d(t) = ||delta_start P^t - pi||_TV from one
/// lumped start. Stops early once d has fallen 1e-4 below the smallest
/// requested epsilon, or at t_max.
MixingCurve tv_curve(const ModelParams& params, LumpedState start,
                     std::int64_t t_max, const std::vector<double>& eps = {});

struct TmixResult {
    bool mixed = false;
    std::int64_t t = 0;       // mixing time if mixed, else the cap
    double last_d = 1.0;      // worst-start distance at the last step taken
};

inline constexpr std::int64_t tv_step_guard = 10'000'000;

/// Exact mixing time over the given start states: the first t at which the
/// worst of the per-start TV distances drops to eps. A cap that runs out is
/// reported in the result, not thrown.
TmixResult t_mix_exact(const ModelParams& params, double eps,
                       const std::vector<LumpedState>& starts, std::int64_t t_max);

/// The three extreme lumped starts (all-plus, all-minus, all-zero).
std::vector<LumpedState> default_tmix_starts(int n);

/// Default iteration cap: generous in predicted-rapid regions, hard guard
/// otherwise.
std::int64_t default_tmix_cap(const ModelParams& params, bool predicted_rapid);

struct BottleneckReport {
    double zprime = 0.0;       // cut actually used (S_cut / n)
    double zprime_requested = 0.0;
    double phi = 0.0;          // bottleneck ratio of the requested cut
    double zprime_star = 0.0;  // cut minimizing phi over all admissible cuts
    double phi_star = 0.0;
    double tmix_lower = 0.0;   // 1 / (4 phi_star)
};

/// Bottleneck ratios of magnetization cuts A = { S/n > z' }. The requested
/// z' is rounded to the nearest attainable cut; phi_star scans every cut
/// with z' >= 0 and stationary mass at most 1/2. Exact: a single Glauber
/// step moves S by at most 2, so only the two boundary levels can exit A.
BottleneckReport bottleneck(const ModelParams& params, double zprime);

}  // namespace bcmc
