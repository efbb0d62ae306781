#pragma once

#include "bcmc/params.hpp"

namespace bcmc {

/// Single-site heat-bath update law. Given the total spin s_tilde of the
/// other n-1 sites, the chosen site becomes -1, 0 or +1 with these
/// probabilities. The cumulative thresholds (p_minus, p_minus + p_zero)
/// are strictly decreasing in s_tilde, which is what makes the shared-
/// uniform threshold coupling monotone.
struct UpdateDistribution {
    double p_minus = 0.0;
    double p_zero = 0.0;
    double p_plus = 0.0;
};

/// Exact evaluation of the three update weights
///   e^{-2 beta K s~/n} : e^{beta - beta K/n} : e^{+2 beta K s~/n},
/// normalized after subtracting the maximal exponent.
UpdateDistribution update_probs(const ModelParams& params, long s_tilde);

}  // namespace bcmc
