#include "bcmc/free_energy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "bcmc/cgf.hpp"
#include "bcmc/params.hpp"

namespace bcmc {

double free_energy(double beta, double k, double z) {
    require_model(beta, k);
    if (!std::isfinite(z)) throw std::domain_error("z must be finite");
    return beta * k * z * z - cgf(beta, 2.0 * beta * k * z);
}

double free_energy_second(double beta, double k, double z) {
    double bk2 = 2.0 * beta * k;
    return bk2 * (1.0 - bk2 * cgf_derivs(beta, bk2 * z).second);
}

namespace {

// G'(z) / (2 beta K): critical points of G are its roots.
double crit_fn(double beta, double k, double z) {
    return z - cgf_derivs(beta, 2.0 * beta * k * z).first;
}

double bisect_root(double beta, double k, double lo, double hi, double tol) {
    double flo = crit_fn(beta, k, lo);
    for (int it = 0; it < 200 && hi - lo > tol; ++it) {
        double mid = 0.5 * (lo + hi);
        double fm = crit_fn(beta, k, mid);
        if ((flo <= 0.0) == (fm <= 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace

std::vector<CriticalPoint> critical_points(double beta, double k, double tol,
                                           double deg_tol) {
    require_model(beta, k);
    if (!(tol > 0.0) || tol > 1e-3)
        throw std::domain_error("tol must lie in (0, 1e-3]");

    std::vector<double> roots{0.0};  // z = 0 is always critical (G' odd)
    const double step = 1e-3;
    double prev = step;
    double fprev = crit_fn(beta, k, prev);
    for (double z = 2.0 * step; z <= 1.5 + 0.5 * step; z += step) {
        double f = crit_fn(beta, k, z);
        if (fprev == 0.0) {
            roots.push_back(prev);
        } else if ((fprev < 0.0) != (f < 0.0)) {
            roots.push_back(bisect_root(beta, k, prev, z, tol));
        }
        prev = z;
        fprev = f;
    }

    std::vector<CriticalPoint> out;
    out.reserve(roots.size());
    for (double z : roots) {
        double g2 = free_energy_second(beta, k, z);
        CritKind kind = CritKind::Degenerate;
        if (g2 > deg_tol) kind = CritKind::Minimum;
        else if (g2 < -deg_tol) kind = CritKind::Maximum;
        out.push_back({z, free_energy(beta, k, z), g2, kind});
    }
    return out;
}

MinimaReport minimize_g(double beta, double k, double tol) {
    auto crit = critical_points(beta, k, tol);

    MinimaReport rep;
    rep.tolerance = tol;

    // Degenerate points (G'' ~ 0, on a critical curve) are never silently
    // classified; they only enter the lists through the value comparison,
    // with the report flagged.
    std::vector<const CriticalPoint*> candidates;
    double gmin = std::numeric_limits<double>::infinity();
    for (const auto& c : crit) {
        if (c.kind == CritKind::Degenerate) rep.degenerate = true;
        if (c.kind != CritKind::Maximum) {
            candidates.push_back(&c);
            gmin = std::min(gmin, c.g);
        }
    }
    if (candidates.empty())
        throw solver_error("minimize_g: no minimum candidate found");

    for (const auto* c : candidates) {
        bool global = c->g <= gmin + 10.0 * tol;
        if (c->kind == CritKind::Degenerate && !global) continue;
        rep.local_minimizers.push_back(c->z);
        if (global) rep.global_minimizers.push_back(c->z);
    }

    // reflect to the negative axis; z = 0 stays single
    auto reflect = [](std::vector<double>& v) {
        std::vector<double> full;
        for (double z : v) {
            full.push_back(z);
            if (z > 0.0) full.push_back(-z);
        }
        std::sort(full.begin(), full.end());
        v = std::move(full);
    };
    reflect(rep.global_minimizers);
    reflect(rep.local_minimizers);
    for (double z : rep.local_minimizers) rep.g_values.push_back(free_energy(beta, k, z));
    return rep;
}

double kc2(double beta) {
    if (!std::isfinite(beta) || beta <= 0.0)
        throw std::domain_error("beta must be finite and positive");
    if (beta > beta_critical * (1.0 + 1e-12))
        throw std::domain_error("kc2 is defined only for beta <= beta_critical");
    return (std::exp(beta) + 2.0) / (4.0 * beta);
}

double wc(double beta) {
    if (!std::isfinite(beta) || beta <= 0.0)
        throw std::domain_error("beta must be finite and positive");
    double arg = 0.5 * std::exp(beta) - 4.0 * std::exp(-beta);
    if (arg < 1.0) {
        if (arg > 1.0 - 1e-12) return 0.0;
        throw std::domain_error("wc requires beta >= beta_critical");
    }
    return std::acosh(arg);
}

namespace {

// Ratio c'(x)/x, extended continuously to x = 0 by c''(0). Unimodal for
// beta > beta_critical with its maximum above w_c.
double deriv_ratio(double beta, double x) {
    if (x == 0.0) return cgf_derivs(beta, 0.0).second;
    return cgf_derivs(beta, x).first / x;
}

// Golden-section maximization of deriv_ratio over (0, hi].
double ratio_argmax(double beta, double xtol) {
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double a = 1e-9;
    double b = std::max(8.0 * beta, 50.0);
    while (b - a > xtol) {
        double d = gr * (b - a);
        double x1 = b - d, x2 = a + d;
        if (deriv_ratio(beta, x1) > deriv_ratio(beta, x2)) b = x2;
        else a = x1;
    }
    return 0.5 * (a + b);
}

}  // namespace

double k1(double beta, double tol) {
    if (!std::isfinite(beta) || beta <= 0.0)
        throw std::domain_error("beta must be finite and positive");
    if (beta <= beta_critical)
        throw std::domain_error("k1 is defined only for beta > beta_critical");

    // Variational route: 1/(2 beta K1) = sup_{x>0} c'(x)/x.
    double xvar = ratio_argmax(beta, 1e-12);
    double k_var = 1.0 / (2.0 * beta * deriv_ratio(beta, xvar));

    // Tangency route. Eliminating K from {c'(x) = x/(2bK), c''(x) = 1/(2bK)}
    // leaves h(x) = c'(x) - x c''(x) = 0 with the root above w_c(beta).
    auto h = [&](double x) {
        auto [c1v, c2v] = cgf_derivs(beta, x);
        return c1v - x * c2v;
    };
    double lo = wc(beta), hi = std::max(8.0 * beta, 50.0);
    if (!(h(lo) < 0.0 && h(hi) > 0.0)) {
        std::ostringstream os;
        os << "k1: tangency bracket failed at beta=" << beta << " [" << lo << ", "
           << hi << "] h=(" << h(lo) << ", " << h(hi) << ")";
        throw solver_error(os.str());
    }
    double x = std::clamp(xvar, lo, hi);
    for (int it = 0; it < 200; ++it) {
        double hx = h(x);
        if (hx > 0.0) hi = x; else lo = x;
        double hp = -x * cgf_third(beta, x);  // dh/dx
        double xn = (hp != 0.0) ? x - hx / hp : 0.5 * (lo + hi);
        if (!(xn > lo && xn < hi)) xn = 0.5 * (lo + hi);
        if (std::fabs(xn - x) < 1e-14 * (1.0 + std::fabs(x))) { x = xn; break; }
        x = xn;
    }
    double k_tan = 1.0 / (2.0 * beta * cgf_derivs(beta, x).second);

    if (std::fabs(k_tan - k_var) > 10.0 * tol * std::max(1.0, k_tan)) {
        std::ostringstream os;
        os << "k1: route disagreement at beta=" << beta << ": tangency=" << k_tan
           << " variational=" << k_var;
        throw solver_error(os.str());
    }
    return k_tan;
}

namespace {

// Depth of the positive local minimum of G, or +inf while none exists.
double metastable_depth(double beta, double k, double tol) {
    auto crit = critical_points(beta, k, tol);
    double zloc = -1.0;
    for (const auto& c : crit)
        if (c.kind == CritKind::Minimum && c.z > 0.0) zloc = std::max(zloc, c.z);
    if (zloc < 0.0) return std::numeric_limits<double>::infinity();
    return free_energy(beta, k, zloc);
}

}  // namespace

double kc1(double beta, double tol) {
    if (beta <= beta_critical)
        throw std::domain_error("kc1 is defined only for beta > beta_critical");
    double lo = k1(beta, std::min(tol, 1e-8));
    double hi = lo + 1.0;
    int expand = 0;
    while (metastable_depth(beta, hi, tol) > 0.0) {
        hi += 1.0;
        if (++expand > 8) {
            std::ostringstream os;
            os << "kc1: depth stayed positive up to K=" << hi << " at beta=" << beta;
            throw solver_error(os.str());
        }
    }
    while (hi - lo > tol) {
        double mid = 0.5 * (lo + hi);
        if (metastable_depth(beta, mid, tol) > 0.0) lo = mid;
        else hi = mid;
    }
    return 0.5 * (lo + hi);
}

std::vector<ContractionPoint> contraction_profile(double beta, double k,
                                                  const std::vector<double>& grid) {
    require_model(beta, k);
    std::vector<ContractionPoint> out;
    out.reserve(grid.size());
    double bk2 = 2.0 * beta * k;
    for (double z : grid) {
        if (!(z > 0.0 && z <= 1.0))
            throw std::domain_error("contraction grid points must lie in (0, 1]");
        auto [c1v, c2v] = cgf_derivs(beta, bk2 * z);
        double local = bk2 * c2v;
        double aggregate = c1v / z;
        out.push_back({z, local, aggregate, local > 1.0, aggregate < 1.0});
    }
    return out;
}

std::string to_string(Phase p) {
    switch (p) {
        case Phase::SinglePhase: return "SinglePhase";
        case Phase::SecondOrderCritical: return "SecondOrderCritical";
        case Phase::TwoPhase: return "TwoPhase";
        case Phase::MetastableSinglePhase: return "MetastableSinglePhase";
        case Phase::FirstOrderCoexistence: return "FirstOrderCoexistence";
    }
    return "?";
}

std::string to_string(MixingPrediction m) {
    switch (m) {
        case MixingPrediction::Rapid: return "Rapid";
        case MixingPrediction::Slow: return "Slow";
        case MixingPrediction::Boundary: return "Boundary";
    }
    return "?";
}

CriticalCurves critical_curves(double beta, double tol) {
    if (!std::isfinite(beta) || beta <= 0.0)
        throw std::domain_error("beta must be finite and positive");
    CriticalCurves curves;
    if (beta <= beta_critical * (1.0 + 1e-12)) {
        curves.kc2 = kc2(beta);
        if (beta >= beta_critical * (1.0 - 1e-12)) curves.wc = 0.0;
    } else {
        curves.k1 = k1(beta, std::min(tol, 1e-8));
        curves.kc1 = kc1(beta, std::min(tol, 1e-9));
        curves.wc = wc(beta);
    }
    return curves;
}

PhaseReport classify(double beta, double k, double tol) {
    return classify(beta, k, tol, critical_curves(beta, tol));
}

PhaseReport classify(double beta, double k, double tol, const CriticalCurves& curves) {
    require_model(beta, k);
    PhaseReport rep;
    rep.beta = beta;
    rep.k = k;
    rep.minima = minimize_g(beta, k, std::min(tol, 1e-3));
    rep.kc2 = curves.kc2;
    rep.k1 = curves.k1;
    rep.kc1 = curves.kc1;
    rep.wc = curves.wc;

    const double btol = std::max(10.0 * tol, 1e-12);
    if (beta <= beta_critical * (1.0 + 1e-12)) {
        double kc = *curves.kc2;
        if (k < kc - btol) {
            rep.phase = Phase::SinglePhase;
            rep.mixing_prediction = MixingPrediction::Rapid;
            rep.alpha_max = (kc - k) / kc;
        } else if (k > kc + btol) {
            rep.phase = Phase::TwoPhase;
            rep.mixing_prediction = MixingPrediction::Slow;
        } else {
            rep.phase = Phase::SecondOrderCritical;
            rep.mixing_prediction = MixingPrediction::Boundary;
        }
        return rep;
    }

    double k1v = *curves.k1;
    double kc1v = *curves.kc1;
    if (k < k1v - btol) {
        rep.phase = Phase::SinglePhase;
        rep.mixing_prediction = MixingPrediction::Rapid;
        rep.alpha_max = (k1v - k) / k1v;
    } else if (std::fabs(k - k1v) <= btol) {
        rep.phase = Phase::SinglePhase;
        rep.mixing_prediction = MixingPrediction::Boundary;
    } else if (k < kc1v - btol) {
        rep.phase = Phase::MetastableSinglePhase;
        rep.mixing_prediction = MixingPrediction::Slow;
    } else if (std::fabs(k - kc1v) <= btol) {
        rep.phase = Phase::FirstOrderCoexistence;
        rep.mixing_prediction = MixingPrediction::Slow;
    } else {
        rep.phase = Phase::TwoPhase;
        rep.mixing_prediction = MixingPrediction::Slow;
    }
    return rep;
}

RateFunction::RateFunction(double beta, double k, double tol)
    : beta_(beta), k_(k) {
    auto rep = minimize_g(beta, k, tol);
    inf_ = rep.g_values.empty() ? 0.0
                                : *std::min_element(rep.g_values.begin(), rep.g_values.end());
}

double RateFunction::operator()(double z) const {
    if (!std::isfinite(z) || std::fabs(z) > 1.0)
        throw std::domain_error("rate function requires |z| <= 1");
    return legendre(beta_, z) - beta_ * k_ * z * z - inf_;
}

double rate_function(double beta, double k, double z) {
    return RateFunction(beta, k)(z);
}

}  // namespace bcmc
