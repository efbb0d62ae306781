#include "bcmc/cgf.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "bcmc/params.hpp"

namespace bcmc {

namespace {

void require_finite(double beta, double t) {
    if (!std::isfinite(beta) || beta <= 0.0)
        throw std::domain_error("beta must be finite and positive");
    if (!std::isfinite(t)) throw std::domain_error("t must be finite");
}

double logsumexp3(double a, double b, double c) {
    double m = std::max({a, b, c});
    return m + std::log(std::exp(a - m) + std::exp(b - m) + std::exp(c - m));
}

}  // namespace

double cgf(double beta, double t) {
    require_finite(beta, t);
    double den = std::log1p(2.0 * std::exp(-beta));
    if (std::fabs(t) <= std::min(beta, 700.0)) {
        // direct form; cancels exactly against the denominator at t = 0
        return std::log1p(std::exp(-beta) * (std::exp(t) + std::exp(-t))) - den;
    }
    // log-sum-exp of the numerator exponents {0, t - beta, -t - beta}
    return logsumexp3(0.0, t - beta, -t - beta) - den;
}

std::pair<double, double> cgf_derivs(double beta, double t) {
    require_finite(beta, t);
    // c'  = (e^t - e^-t) / (e^beta + e^t + e^-t)
    // c'' = (2 e^beta cosh t + 4) / (e^beta + 2 cosh t)^2
    // Both scaled by e^-|t| so no intermediate overflows for |t| <= ~700.
    double u = std::fabs(t);
    double sign = (t >= 0.0) ? 1.0 : -1.0;
    double e2 = std::exp(-2.0 * u);  // e^{-2|t|}
    double bu = beta - u;
    if (bu > 690.0) {
        // e^{beta-|t|} would overflow; both derivatives are ~e^{|t|-beta}.
        double s = std::exp(u - beta);
        return {sign * s * (1.0 - e2), s * (1.0 + e2)};
    }
    double ebu = std::exp(bu);  // e^{beta-|t|}
    double den = ebu + 1.0 + e2;
    double c1 = sign * (1.0 - e2) / den;
    double c2 = (ebu * (1.0 + e2) + 4.0 * e2) / (den * den);
    return {c1, c2};
}

double cgf_third(double beta, double t) {
    require_finite(beta, t);
    // c''' = 2 sinh t (e^{2 beta} - 2 e^beta cosh t - 8) / (e^beta + 2 cosh t)^3
    //      = sign(t) (1 - e^{-2|t|}) N / D^3  with everything scaled by e^-|t|.
    double u = std::fabs(t);
    double sign = (t >= 0.0) ? 1.0 : -1.0;
    double e2 = std::exp(-2.0 * u);
    double bu = beta - u;
    if (bu > 340.0) {
        return sign * (1.0 - e2) * std::exp(u - beta);
    }
    double ebu = std::exp(bu);
    double den = ebu + 1.0 + e2;
    double num = ebu * ebu - ebu * (1.0 + e2) - 8.0 * e2;
    return sign * (1.0 - e2) * num / (den * den * den);
}

double inv_cgf_deriv(double beta, double z) {
    require_finite(beta, 0.0);
    if (!(std::fabs(z) < 1.0))
        throw std::domain_error("inv_cgf_deriv requires |z| < 1");
    if (z == 0.0) return 0.0;
    double sign = (z > 0.0) ? 1.0 : -1.0;
    double zz = std::fabs(z);
    // c' is strictly increasing and odd; bracket then safeguarded Newton.
    double lo = 0.0, hi = 1.0;
    while (cgf_derivs(beta, hi).first < zz) {
        hi *= 2.0;
        if (hi > 1e6) throw solver_error("inv_cgf_deriv: bracket expansion failed");
    }
    double x = std::min(hi, zz / cgf_derivs(beta, 0.0).second);
    for (int it = 0; it < 200; ++it) {
        auto [c1, c2] = cgf_derivs(beta, x);
        double f = c1 - zz;
        if (f > 0.0) hi = x; else lo = x;
        double step = f / c2;
        double xn = x - step;
        if (!(xn > lo && xn < hi)) xn = 0.5 * (lo + hi);
        if (std::fabs(xn - x) < 1e-15 * (1.0 + std::fabs(x))) { x = xn; break; }
        x = xn;
    }
    return sign * x;
}

double legendre(double beta, double z) {
    require_finite(beta, 0.0);
    if (!std::isfinite(z) || std::fabs(z) > 1.0)
        throw std::domain_error("legendre requires |z| <= 1");
    double az = std::fabs(z);
    if (az == 1.0) return beta + std::log1p(2.0 * std::exp(-beta));
    if (az == 0.0) return 0.0;
    double t = inv_cgf_deriv(beta, az);
    return t * az - cgf(beta, t);
}

}  // namespace bcmc
