#include "bcmc/lumped.hpp"

#include <cmath>
#include <stdexcept>

namespace bcmc {

LumpedStateSpace::LumpedStateSpace(int n) : n_(n) {
    if (n < 1 || n > max_lumped_n)
        throw std::length_error("LumpedStateSpace: n out of range [1, 2000]");
    size_ = static_cast<std::int64_t>(n + 1) * (n + 2) / 2;
    states_.reserve(size_);
    for (int nm = 0; nm <= n; ++nm)
        for (int np = 0; np <= n - nm; ++np) states_.push_back({nm, np});
}

std::int64_t LumpedStateSpace::index(LumpedState s) const {
    if (s.n_minus < 0 || s.n_plus < 0 || s.n_minus + s.n_plus > n_)
        throw std::out_of_range("LumpedState outside the simplex");
    // rows of decreasing length: row nm holds n - nm + 1 entries
    std::int64_t nm = s.n_minus;
    return nm * (n_ + 1) - nm * (nm - 1) / 2 + s.n_plus;
}

LumpedState LumpedStateSpace::state(std::int64_t idx) const {
    if (idx < 0 || idx >= size_) throw std::out_of_range("state index out of range");
    return states_[static_cast<std::size_t>(idx)];
}

LumpedDistribution gibbs_stationary(const ModelParams& params) {
    LumpedStateSpace space(params.n);
    const int n = params.n;
    const double beta = params.beta, k = params.k;

    std::vector<double> logw(space.size());
    const double lgn = std::lgamma(n + 1.0);
    double max_lw = -1e300;
    for (std::int64_t i = 0; i < space.size(); ++i) {
        auto s = space.state(i);
        int n0 = n - s.n_minus - s.n_plus;
        double S = s.n_plus - s.n_minus;
        double lw = lgn - std::lgamma(s.n_minus + 1.0) - std::lgamma(n0 + 1.0) -
                    std::lgamma(s.n_plus + 1.0) - beta * (s.n_minus + s.n_plus) +
                    beta * k * S * S / n;
        logw[i] = lw;
        if (lw > max_lw) max_lw = lw;
    }
    double total = 0.0;
    for (auto& lw : logw) {
        lw = std::exp(lw - max_lw);
        total += lw;
    }
    LumpedDistribution dist;
    dist.n = n;
    dist.probs.resize(logw.size());
    for (std::size_t i = 0; i < logw.size(); ++i) dist.probs[i] = logw[i] / total;
    return dist;
}

double gibbs_mass_near_zero(const ModelParams& params, double window) {
    LumpedStateSpace space(params.n);
    auto dist = gibbs_stationary(params);
    double mass = 0.0;
    for (std::int64_t i = 0; i < space.size(); ++i) {
        double m = static_cast<double>(space.magnetization(space.state(i))) / params.n;
        if (std::fabs(m) < window) mass += dist.probs[i];
    }
    return mass;
}

}  // namespace bcmc
