#include "bcmc/spin_config.hpp"

#include <cmath>
#include <stdexcept>

namespace bcmc {

SpinConfiguration::SpinConfiguration(std::vector<std::int8_t> spins)
    : spins_(std::move(spins)) {
    if (spins_.empty()) throw std::domain_error("SpinConfiguration: empty spin vector");
    for (auto s : spins_) {
        if (s < -1 || s > 1) throw std::domain_error("spins must lie in {-1, 0, +1}");
        total_spin_ += s;
        ++counts_[s + 1];
    }
}

SpinConfiguration SpinConfiguration::constant(int n, std::int8_t value) {
    return SpinConfiguration(std::vector<std::int8_t>(n, value));
}

SpinConfiguration SpinConfiguration::from_counts(int n_minus, int n_zero, int n_plus,
                                                 RngStream& rng) {
    if (n_minus < 0 || n_zero < 0 || n_plus < 0)
        throw std::domain_error("from_counts: negative count");
    std::vector<std::int8_t> spins;
    spins.reserve(n_minus + n_zero + n_plus);
    spins.insert(spins.end(), n_minus, -1);
    spins.insert(spins.end(), n_zero, 0);
    spins.insert(spins.end(), n_plus, +1);
    // Fisher-Yates
    for (std::size_t i = spins.size(); i > 1; --i) {
        auto j = rng.next_index(i);
        std::swap(spins[i - 1], spins[j]);
    }
    return SpinConfiguration(std::move(spins));
}

void SpinConfiguration::set_spin(int site, std::int8_t value) {
    std::int8_t old = spins_[site];
    if (old == value) return;
    spins_[site] = value;
    total_spin_ += value - old;
    --counts_[old + 1];
    ++counts_[value + 1];
#ifndef NDEBUG
    check_caches();
#endif
}

#ifndef NDEBUG
void SpinConfiguration::check_caches() const {
    long total = 0;
    std::array<long, 3> counts{};
    for (auto s : spins_) {
        total += s;
        ++counts[s + 1];
    }
    assert(total == total_spin_);
    assert(counts == counts_);
}
#endif

namespace {

inline std::int8_t threshold_sample(const UpdateDistribution& p, double u) {
    if (u < p.p_minus) return -1;
    if (u < p.p_minus + p.p_zero) return 0;
    return +1;
}

}  // namespace

void glauber_step(const ModelParams& params, SpinConfiguration& config, RngStream& rng) {
    const int site = static_cast<int>(rng.next_index(config.n()));
    const double u = rng.next_double();
    long s_tilde = config.total_spin() - config.spin(site);
    config.set_spin(site, threshold_sample(update_probs(params, s_tilde), u));
}

CoupledDelta coupled_step(const ModelParams& params, SpinConfiguration& x,
                          SpinConfiguration& y, RngStream& rng) {
    if (x.n() != y.n()) throw std::domain_error("coupled_step: size mismatch");
    const int site = static_cast<int>(rng.next_index(x.n()));
    const double u = rng.next_double();

    const bool differed = x.spin(site) != y.spin(site);
    std::int8_t nx = threshold_sample(
        update_probs(params, x.total_spin() - x.spin(site)), u);
    std::int8_t ny = threshold_sample(
        update_probs(params, y.total_spin() - y.spin(site)), u);
    x.set_spin(site, nx);
    y.set_spin(site, ny);

    const bool differs = nx != ny;
    return {site, static_cast<int>(differs) - static_cast<int>(differed)};
}

double phi_fn(const ModelParams& params, long x) {
    if (std::labs(x) > params.n) throw std::domain_error("phi_fn: |x| must be <= n");
    double a = 2.0 * params.beta * params.k * x / params.n;
    double mid = std::exp(params.beta - params.beta * params.k / params.n);
    return 2.0 * std::sinh(a) / (2.0 * std::cosh(a) + mid);
}

long hamming(const SpinConfiguration& x, const SpinConfiguration& y) {
    if (x.n() != y.n()) throw std::domain_error("hamming: size mismatch");
    long d = 0;
    for (int i = 0; i < x.n(); ++i) d += x.spin(i) != y.spin(i);
    return d;
}

}  // namespace bcmc
