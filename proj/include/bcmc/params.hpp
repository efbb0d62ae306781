#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace bcmc {

/// Inverse temperature at which the second-order critical curve ends
/// and the first-order regime begins: beta_c = log 4.
inline constexpr double beta_critical = 1.3862943611198906;

/// Largest system size for which the lumped count chain may be enumerated.
inline constexpr int max_lumped_n = 2000;

class solver_error : public std::runtime_error {
public:
    explicit solver_error(const std::string& what) : std::runtime_error(what) {}
};

inline void require_model(double beta, double k) {
    if (!std::isfinite(beta) || beta <= 0.0)
        throw std::domain_error("beta must be finite and positive");
    if (!std::isfinite(k) || k <= 0.0)
        throw std::domain_error("k must be finite and positive");
}

/// System size plus the (beta, K) pair every computation is conditioned on.
struct ModelParams {
    int n;
    double beta;
    double k;

    ModelParams(int n_, double beta_, double k_) : n(n_), beta(beta_), k(k_) {
        if (n < 1) throw std::domain_error("n must be >= 1");
        require_model(beta, k);
    }
};

}  // namespace bcmc
