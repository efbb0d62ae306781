#pragma once

#include <utility>

namespace bcmc {

/// Cumulant generating function of the single-site measure,
///   c_beta(t) = log[(1 + e^-beta (e^t + e^-t)) / (1 + 2 e^-beta)],
/// evaluated in log-sum-exp form so it stays finite for |t| up to ~700.
double cgf(double beta, double t);

/// First and second derivatives of cgf in t. The second derivative is
/// strictly positive for all finite t.
std::pair<double, double> cgf_derivs(double beta, double t);

/// Third derivative of cgf; changes sign at w_c(beta) for beta > beta_c.
double cgf_third(double beta, double t);

/// Inverse of the first derivative: the unique t with c'(t) = z, |z| < 1.
double inv_cgf_deriv(double beta, double z);

/// Legendre-Fenchel transform J(z) = sup_t { t z - cgf(t) }, finite on
/// [-1, 1]; throws std::domain_error for |z| > 1.
double legendre(double beta, double z);

}  // namespace bcmc
