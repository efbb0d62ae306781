#include "bcmc/chain.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

#include "bcmc/glauber.hpp"

namespace bcmc {

namespace {

struct RowEntry {
    std::int32_t col;
    double val;
};

// Builds one matrix row: pick a spin value proportionally to its count,
// then resample that site from the heat-bath law at s_tilde = S - s.
// At most 7 distinct destinations including the self-loop.
int build_row(const ModelParams& params, const LumpedStateSpace& space,
              LumpedState st, RowEntry out[7]) {
    const int n = params.n;
    const int n0 = n - st.n_minus - st.n_plus;
    const int S = st.n_plus - st.n_minus;
    const int counts[3] = {st.n_minus, n0, st.n_plus};

    std::int32_t cols[9];
    double vals[9];
    int m = 0;
    for (int si = 0; si < 3; ++si) {
        if (counts[si] == 0) continue;
        const int s = si - 1;
        const double pick = static_cast<double>(counts[si]) / n;
        UpdateDistribution p = update_probs(params, S - s);
        const double ps[3] = {p.p_minus, p.p_zero, p.p_plus};
        for (int ti = 0; ti < 3; ++ti) {
            const int sp = ti - 1;
            LumpedState dest{st.n_minus - (s == -1) + (sp == -1),
                             st.n_plus - (s == +1) + (sp == +1)};
            const auto j = static_cast<std::int32_t>(space.index(dest));
            const double w = pick * ps[ti];
            int f = 0;
            while (f < m && cols[f] != j) ++f;
            if (f == m) {
                cols[m] = j;
                vals[m] = w;
                ++m;
            } else {
                vals[f] += w;
            }
        }
    }
    // canonical column order inside the row
    int order[9];
    for (int i = 0; i < m; ++i) order[i] = i;
    std::sort(order, order + m, [&](int a, int b) { return cols[a] < cols[b]; });
    for (int i = 0; i < m; ++i) out[i] = {cols[order[i]], vals[order[i]]};
    return m;
}

void build_transpose(TransitionMatrix& P) {
    const auto nstates = P.size();
    P.in_ptr.assign(nstates + 1, 0);
    for (auto j : P.col) ++P.in_ptr[j + 1];
    for (std::int64_t j = 0; j < nstates; ++j) P.in_ptr[j + 1] += P.in_ptr[j];
    P.in_src.resize(P.col.size());
    P.in_val.resize(P.col.size());
    std::vector<std::int64_t> fill(P.in_ptr.begin(), P.in_ptr.end() - 1);
    for (std::int64_t i = 0; i < nstates; ++i) {
        for (std::int64_t e = P.row_ptr[i]; e < P.row_ptr[i + 1]; ++e) {
            auto pos = fill[P.col[e]]++;
            P.in_src[pos] = static_cast<std::int32_t>(i);
            P.in_val[pos] = P.val[e];
        }
    }
}

}  // namespace

TransitionMatrix glauber_lumped_matrix(const ModelParams& params) {
    LumpedStateSpace space(params.n);
    const auto nstates = space.size();

    TransitionMatrix P;
    P.n = params.n;
    P.beta = params.beta;
    P.k = params.k;
    P.row_ptr.resize(nstates + 1);

    std::vector<RowEntry> buf(static_cast<std::size_t>(nstates) * 7);
    std::vector<int> row_len(nstates);
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < nstates; ++i)
        row_len[i] = build_row(params, space, space.state(i), buf.data() + i * 7);

    P.row_ptr[0] = 0;
    for (std::int64_t i = 0; i < nstates; ++i)
        P.row_ptr[i + 1] = P.row_ptr[i] + row_len[i];
    const auto nnz = P.row_ptr[nstates];
    P.col.resize(nnz);
    P.val.resize(nnz);
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < nstates; ++i) {
        auto dst = P.row_ptr[i];
        for (int e = 0; e < row_len[i]; ++e) {
            P.col[dst + e] = buf[i * 7 + e].col;
            P.val[dst + e] = buf[i * 7 + e].val;
        }
    }
    build_transpose(P);
    return P;
}

TransitionMatrix glauber_lumped_matrix_serial(const ModelParams& params) {
    LumpedStateSpace space(params.n);
    const auto nstates = space.size();
    const int n = params.n;

    TransitionMatrix P;
    P.n = n;
    P.beta = params.beta;
    P.k = params.k;
    P.row_ptr.assign(nstates + 1, 0);

    for (std::int64_t i = 0; i < nstates; ++i) {
        LumpedState st = space.state(i);
        const int counts[3] = {st.n_minus, n - st.n_minus - st.n_plus, st.n_plus};
        const int S = st.n_plus - st.n_minus;
        std::map<std::int64_t, double> row;
        for (int si = 0; si < 3; ++si) {
            if (counts[si] == 0) continue;
            const int s = si - 1;
            UpdateDistribution p = update_probs(params, S - s);
            const double ps[3] = {p.p_minus, p.p_zero, p.p_plus};
            for (int ti = 0; ti < 3; ++ti) {
                const int sp = ti - 1;
                LumpedState dest{st.n_minus - (s == -1) + (sp == -1),
                                 st.n_plus - (s == +1) + (sp == +1)};
                row[space.index(dest)] += static_cast<double>(counts[si]) / n * ps[ti];
            }
        }
        for (auto& [j, v] : row) {
            P.col.push_back(static_cast<std::int32_t>(j));
            P.val.push_back(v);
        }
        P.row_ptr[i + 1] = static_cast<std::int64_t>(P.col.size());
    }
    build_transpose(P);
    return P;
}

void propagate(const TransitionMatrix& P, const std::vector<double>& mu,
               std::vector<double>& out) {
    const auto nstates = P.size();
    out.resize(nstates);
#pragma omp parallel for schedule(static)
    for (std::int64_t j = 0; j < nstates; ++j) {
        double acc = 0.0;
        for (std::int64_t e = P.in_ptr[j]; e < P.in_ptr[j + 1]; ++e)
            acc += mu[P.in_src[e]] * P.in_val[e];
        out[j] = acc;
    }
}

void propagate_serial(const TransitionMatrix& P, const std::vector<double>& mu,
                      std::vector<double>& out) {
    const auto nstates = P.size();
    out.assign(nstates, 0.0);
    for (std::int64_t i = 0; i < nstates; ++i)
        for (std::int64_t e = P.row_ptr[i]; e < P.row_ptr[i + 1]; ++e)
            out[P.col[e]] += mu[i] * P.val[e];
}

void propagate_extended(const TransitionMatrix& P, const std::vector<double>& mu,
                        std::vector<double>& out) {
    const auto nstates = P.size();
    out.resize(nstates);
#pragma omp parallel for schedule(static)
    for (std::int64_t j = 0; j < nstates; ++j) {
        __float128 acc = 0;
        for (std::int64_t e = P.in_ptr[j]; e < P.in_ptr[j + 1]; ++e)
            acc += static_cast<__float128>(mu[P.in_src[e]]) * P.in_val[e];
        out[j] = static_cast<double>(acc);
    }
}

double tv_distance(const std::vector<double>& mu, const std::vector<double>& nu) {
    double acc = 0.0;
    for (std::size_t i = 0; i < mu.size(); ++i) acc += std::fabs(mu[i] - nu[i]);
    return 0.5 * acc;
}

MixingCurve tv_curve(const ModelParams& params, LumpedState start,
                     std::int64_t t_max, const std::vector<double>& eps) {
    if (t_max < 0 || t_max > tv_step_guard)
        throw std::domain_error("tv_curve: t_max outside [0, 1e7]");
    LumpedStateSpace space(params.n);
    auto pi = gibbs_stationary(params).probs;
    auto P = glauber_lumped_matrix(params);

    std::vector<double> mu(space.size(), 0.0), next(space.size());
    mu[space.index(start)] = 1.0;

    double min_eps = -std::numeric_limits<double>::infinity();
    if (!eps.empty()) min_eps = *std::min_element(eps.begin(), eps.end());

    MixingCurve curve;
    curve.start = start;
    std::vector<bool> hit(eps.size(), false);
    for (std::int64_t t = 0;; ++t) {
        double d = tv_distance(mu, pi);
        curve.t.push_back(t);
        curve.d.push_back(d);
        for (std::size_t i = 0; i < eps.size(); ++i) {
            if (!hit[i] && d <= eps[i]) {
                hit[i] = true;
                curve.eps_hit.emplace_back(eps[i], t);
            }
        }
        if (t == t_max || d < min_eps - 1e-4) break;
        propagate(P, mu, next);
        mu.swap(next);
    }
    return curve;
}

std::vector<LumpedState> default_tmix_starts(int n) {
    return {{0, n}, {n, 0}, {0, 0}};
}

std::int64_t default_tmix_cap(const ModelParams& params, bool predicted_rapid) {
    if (predicted_rapid) {
        double cap = 50.0 * params.n * std::log(std::max(2, params.n));
        return static_cast<std::int64_t>(std::ceil(cap));
    }
    return tv_step_guard;
}

TmixResult t_mix_exact(const ModelParams& params, double eps,
                       const std::vector<LumpedState>& starts, std::int64_t t_max) {
    if (!(eps > 0.0 && eps < 1.0))
        throw std::domain_error("t_mix_exact: eps must lie in (0, 1)");
    if (starts.empty()) throw std::domain_error("t_mix_exact: starts must be nonempty");
    if (t_max < 0 || t_max > tv_step_guard)
        throw std::domain_error("t_mix_exact: t_max outside [0, 1e7]");

    LumpedStateSpace space(params.n);
    auto pi = gibbs_stationary(params).probs;
    auto P = glauber_lumped_matrix(params);

    std::vector<std::vector<double>> mus;
    for (auto s : starts) {
        std::vector<double> mu(space.size(), 0.0);
        mu[space.index(s)] = 1.0;
        mus.push_back(std::move(mu));
    }
    std::vector<double> next(space.size());

    for (std::int64_t t = 0;; ++t) {
        double dmax = 0.0;
        for (const auto& mu : mus) dmax = std::max(dmax, tv_distance(mu, pi));
        if (dmax <= eps) return {true, t, dmax};
        if (t == t_max) return {false, t_max, dmax};
        for (auto& mu : mus) {
            propagate(P, mu, next);
            mu.swap(next);
        }
    }
}

BottleneckReport bottleneck(const ModelParams& params, double zprime) {
    if (!(zprime >= 0.0 && zprime < 1.0))
        throw std::domain_error("bottleneck: zprime must lie in [0, 1)");
    const int n = params.n;
    LumpedStateSpace space(params.n);
    auto pi = gibbs_stationary(params).probs;
    auto P = glauber_lumped_matrix(params);

    // states grouped by magnetization level; suffix stationary masses
    std::vector<std::vector<std::int32_t>> by_S(2 * n + 1);
    for (std::int64_t i = 0; i < space.size(); ++i) {
        int S = space.magnetization(space.state(i));
        by_S[S + n].push_back(static_cast<std::int32_t>(i));
    }
    std::vector<double> level_mass(2 * n + 1, 0.0);
    for (std::int64_t i = 0; i < space.size(); ++i)
        level_mass[space.magnetization(space.state(i)) + n] += pi[i];
    std::vector<double> suffix(2 * n + 2, 0.0);
    for (int L = 2 * n; L >= 0; --L) suffix[L] = suffix[L + 1] + level_mass[L];

    auto phi_of_cut = [&](int s_cut) -> double {
        // A = { S > s_cut }; one step changes S by at most 2, so only the
        // levels s_cut+1 and s_cut+2 can exit A
        double q = 0.0;
        for (int L = s_cut + 1; L <= std::min(s_cut + 2, n); ++L) {
            for (auto i : by_S[L + n]) {
                double exit_mass = 0.0;
                for (std::int64_t e = P.row_ptr[i]; e < P.row_ptr[i + 1]; ++e) {
                    int Sj = space.magnetization(space.state(P.col[e]));
                    if (Sj <= s_cut) exit_mass += P.val[e];
                }
                q += pi[i] * exit_mass;
            }
        }
        double pa = suffix[s_cut + 1 + n];
        return q / pa;
    };

    BottleneckReport rep;
    rep.zprime_requested = zprime;
    int s_req = std::clamp(static_cast<int>(std::llround(zprime * n)), 0, n - 1);
    rep.zprime = static_cast<double>(s_req) / n;
    rep.phi = phi_of_cut(s_req);

    double best = -1.0;
    int best_cut = 0;
    for (int s_cut = 0; s_cut < n; ++s_cut) {
        double pa = suffix[s_cut + 1 + n];
        if (!(pa > 0.0) || pa > 0.5) continue;
        double phi = phi_of_cut(s_cut);
        if (best < 0.0 || phi < best) {
            best = phi;
            best_cut = s_cut;
        }
    }
    rep.zprime_star = static_cast<double>(best_cut) / n;
    rep.phi_star = best;
    rep.tmix_lower = 0.25 / best;
    return rep;
}

}  // namespace bcmc
