#include "bcmc/glauber.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bcmc {

UpdateDistribution update_probs(const ModelParams& params, long s_tilde) {
    if (std::labs(s_tilde) > params.n - 1)
        throw std::domain_error("update_probs: |s_tilde| must be <= n - 1");
    const double n = params.n;
    double e_plus = 2.0 * params.beta * params.k * s_tilde / n;
    double e_zero = params.beta - params.beta * params.k / n;
    double e_minus = -e_plus;
    double m = std::max({e_plus, e_zero, e_minus});
    double w_minus = std::exp(e_minus - m);
    double w_zero = std::exp(e_zero - m);
    double w_plus = std::exp(e_plus - m);
    double total = w_minus + w_zero + w_plus;
    return {w_minus / total, w_zero / total, w_plus / total};
}

}  // namespace bcmc
