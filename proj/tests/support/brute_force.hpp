#pragma once

// Brute-force oracles over the full 3^n configuration space. Only usable
// for tiny n; these are the independent ground truth the lumped chain is
// checked against.

#include <cmath>
#include <cstdint>
#include <vector>

#include "bcmc/glauber.hpp"
#include "bcmc/lumped.hpp"
#include "bcmc/params.hpp"

namespace bcmc::testing {

inline std::int64_t pow3(int n) {
    std::int64_t p = 1;
    for (int i = 0; i < n; ++i) p *= 3;
    return p;
}

// spin of site i in configuration code c (base-3 digits, digit - 1)
inline int spin_at(std::int64_t c, int i) {
    for (int j = 0; j < i; ++j) c /= 3;
    return static_cast<int>(c % 3) - 1;
}

inline std::vector<int> spins_of(std::int64_t c, int n) {
    std::vector<int> s(n);
    for (int i = 0; i < n; ++i) {
        s[i] = static_cast<int>(c % 3) - 1;
        c /= 3;
    }
    return s;
}

inline double hamiltonian(const std::vector<int>& s, double k) {
    double sq = 0.0, total = 0.0;
    for (int v : s) {
        sq += v * v;
        total += v;
    }
    return sq - k / static_cast<double>(s.size()) * total * total;
}

// Gibbs probabilities over all 3^n configurations.
inline std::vector<double> full_gibbs(const ModelParams& params) {
    auto m = pow3(params.n);
    std::vector<double> w(m);
    double total = 0.0;
    for (std::int64_t c = 0; c < m; ++c) {
        w[c] = std::exp(-params.beta * hamiltonian(spins_of(c, params.n), params.k));
        total += w[c];
    }
    for (auto& v : w) v /= total;
    return w;
}

// Dense one-step Glauber matrix over all 3^n configurations.
inline std::vector<std::vector<double>> full_glauber_matrix(const ModelParams& params) {
    auto m = pow3(params.n);
    const int n = params.n;
    std::vector<std::vector<double>> P(m, std::vector<double>(m, 0.0));
    for (std::int64_t c = 0; c < m; ++c) {
        auto s = spins_of(c, n);
        long S = 0;
        for (int v : s) S += v;
        for (int i = 0; i < n; ++i) {
            auto p = update_probs(params, S - s[i]);
            const double ps[3] = {p.p_minus, p.p_zero, p.p_plus};
            std::int64_t base = 1;
            for (int j = 0; j < i; ++j) base *= 3;
            std::int64_t rest = c - (s[i] + 1) * base;
            for (int d = 0; d < 3; ++d)
                P[c][rest + d * base] += ps[d] / n;
        }
    }
    return P;
}

inline LumpedState counts_of(const std::vector<int>& s) {
    LumpedState st;
    for (int v : s) {
        if (v < 0) ++st.n_minus;
        if (v > 0) ++st.n_plus;
    }
    return st;
}

// Pushforward of the full Gibbs measure under the counts map.
inline std::vector<double> lumped_pushforward_gibbs(const ModelParams& params) {
    LumpedStateSpace space(params.n);
    auto pi = full_gibbs(params);
    std::vector<double> out(space.size(), 0.0);
    for (std::int64_t c = 0; c < pow3(params.n); ++c)
        out[space.index(counts_of(spins_of(c, params.n)))] += pi[c];
    return out;
}

// Row of the lumped matrix obtained by aggregating the full chain's row of
// any configuration with the given counts. Exact lumpability means the
// answer is independent of the representative.
inline std::vector<double> lumped_pushforward_row(const ModelParams& params,
                                                  std::int64_t config) {
    LumpedStateSpace space(params.n);
    auto P = full_glauber_matrix(params);
    std::vector<double> out(space.size(), 0.0);
    for (std::int64_t c = 0; c < pow3(params.n); ++c)
        out[space.index(counts_of(spins_of(c, params.n)))] += P[config][c];
    return out;
}

}  // namespace bcmc::testing
