#pragma once

#include <array>
#include <cassert>
#include <cstdint>
#include <vector>

#include "bcmc/glauber.hpp"
#include "bcmc/params.hpp"
#include "bcmc/rng.hpp"

namespace bcmc {

/// Microstate for Monte Carlo: n spins in {-1, 0, +1} with the total spin
/// and the per-value counts kept incrementally.
class SpinConfiguration {
public:
    explicit SpinConfiguration(std::vector<std::int8_t> spins);

    /// All sites set to the same spin value.
    static SpinConfiguration constant(int n, std::int8_t value);

    /// Build from counts, assigning spin values to sites uniformly at
    /// random (exchangeable placement).
    static SpinConfiguration from_counts(int n_minus, int n_zero, int n_plus,
                                         RngStream& rng);

    int n() const { return static_cast<int>(spins_.size()); }
    std::int8_t spin(int site) const { return spins_[site]; }
    long total_spin() const { return total_spin_; }
    long count(std::int8_t value) const { return counts_[value + 1]; }
    const std::vector<std::int8_t>& spins() const { return spins_; }

    void set_spin(int site, std::int8_t value);

    bool operator==(const SpinConfiguration&) const = default;

#ifndef NDEBUG
    void check_caches() const;
#endif

private:
    std::vector<std::int8_t> spins_;
    long total_spin_ = 0;
    std::array<long, 3> counts_{};  // indexed by value + 1
};

/// One heat-bath update: site chosen uniformly, then resampled through the
/// threshold rule [p_minus | p_zero | p_plus] with a single uniform draw.
/// Consumes exactly two RNG draws, vertex first.
void glauber_step(const ModelParams& params, SpinConfiguration& config, RngStream& rng);

struct CoupledDelta {
    int site = 0;
    int drho = 0;  // change in the Hamming distance at this step
};

/// One step of the shared-noise coupling: the same vertex and the same
/// uniform drive both chains through their own thresholds. Preserves
/// coordinatewise order and never updates equal chains apart.
CoupledDelta coupled_step(const ModelParams& params, SpinConfiguration& x,
                          SpinConfiguration& y, RngStream& rng);

/// Mean-drift kernel phi(x) = 2 sinh(2 beta K x / n) /
/// (2 cosh(2 beta K x / n) + e^{beta - beta K / n}); odd in x.
double phi_fn(const ModelParams& params, long x);

long hamming(const SpinConfiguration& x, const SpinConfiguration& y);

}  // namespace bcmc
