#pragma once

#include <cstdint>
#include <vector>

#include "bcmc/params.hpp"

namespace bcmc {

/// Spin-count state (n_minus, n_plus) of a configuration on n sites;
/// n_zero = n - n_minus - n_plus. The Glauber dynamics and the Gibbs
/// measure both depend on a configuration only through these counts,
/// which is what makes the lumped chain exact.
struct LumpedState {
    int n_minus = 0;
    int n_plus = 0;

    bool operator==(const LumpedState&) const = default;
};

/// Canonical enumeration of the (n+1)(n+2)/2 count states, ordered
/// lexicographically in (n_minus, n_plus), with O(1) bijective index lookup.
class LumpedStateSpace {
public:
    explicit LumpedStateSpace(int n);

    int n() const { return n_; }
    std::int64_t size() const { return size_; }

    std::int64_t index(LumpedState s) const;
    LumpedState state(std::int64_t idx) const;

    int magnetization(LumpedState s) const { return s.n_plus - s.n_minus; }

    const std::vector<LumpedState>& states() const { return states_; }

private:
    int n_;
    std::int64_t size_;
    std::vector<LumpedState> states_;
};

/// Probability vector over the canonical LumpedState order.
struct LumpedDistribution {
    std::vector<double> probs;
    int n = 0;
};

/// Exact Gibbs stationary distribution of the count chain: the multinomial
/// coefficient times exp(-beta (n_- + n_+) + beta K S^2 / n), normalized in
/// log space so any (n, beta, K) in range is overflow-safe.
LumpedDistribution gibbs_stationary(const ModelParams& params);

/// Stationary probability of {|S/n| < window} (strict inequality).
double gibbs_mass_near_zero(const ModelParams& params, double window);

}  // namespace bcmc
