#pragma once

#include <optional>
#include <string>
#include <vector>

namespace bcmc {

/// Free energy functional G(z) = beta K z^2 - cgf(beta, 2 beta K z).
/// Even in z; its global minimizers are the equilibrium magnetizations.
double free_energy(double beta, double k, double z);

/// Second derivative G''(z).
double free_energy_second(double beta, double k, double z);

enum class CritKind { Minimum, Maximum, Degenerate };

struct CriticalPoint {
    double z;       // location, z >= 0
    double g;       // G at the point
    double second;  // G'' at the point
    CritKind kind;
};

/// All nonnegative critical points of G (roots of z - c'(2 beta K z) on
/// [0, 1.5]), found by sign-change scan plus bisection and classified by
/// the sign of G''. Points with |G''| < deg_tol are flagged Degenerate.
std::vector<CriticalPoint> critical_points(double beta, double k,
                                           double tol = 1e-10,
                                           double deg_tol = 1e-8);

struct MinimaReport {
    std::vector<double> global_minimizers;  // sorted, symmetric about 0
    std::vector<double> local_minimizers;   // sorted, superset of global
    std::vector<double> g_values;           // G at each local minimizer
    double tolerance = 0.0;
    bool degenerate = false;  // a critical point sat on a classification edge
};

/// Minimizer structure of G. Global set = argmin of G over critical points
/// (ties within 10*tol count as global); every list is reflected to the
/// negative axis so it is exactly symmetric.
MinimaReport minimize_g(double beta, double k, double tol = 1e-10);

/// Second-order critical curve K = (e^beta + 2) / (4 beta), valid for
/// 0 < beta <= beta_critical.
double kc2(double beta);

/// Metastable critical value for beta > beta_critical: the K at which G
/// first develops a nonzero tangency point (G' = G'' = 0). Solved by damped
/// Newton on the tangency system, cross-checked against golden-section
/// maximization of c'(x)/x; the two routes must agree within 10*tol.
double k1(double beta, double tol = 1e-8);

/// First-order transition curve for beta > beta_critical: the unique
/// K > k1(beta) at which the positive local minimum of G reaches depth
/// G(z_loc) = 0 = G(0). Solved by bisection on the depth.
double kc1(double beta, double tol = 1e-10);

/// Concavity threshold w_c = arccosh(e^beta / 2 - 4 e^-beta), defined for
/// beta >= beta_critical (it is 0 at beta_critical).
double wc(double beta);

struct ContractionPoint {
    double z;
    double local;           // 2 beta K c''(2 beta K z)
    double aggregate;       // c'(2 beta K z) / z
    bool local_gt_one;      // single-pair contraction fails here
    bool aggregate_lt_one;  // aggregate contraction holds here
};

/// Local and aggregate contraction coefficients along a grid of
/// magnetizations in (0, 1].
std::vector<ContractionPoint> contraction_profile(double beta, double k,
                                                  const std::vector<double>& grid);

enum class Phase {
    SinglePhase,
    SecondOrderCritical,
    TwoPhase,
    MetastableSinglePhase,
    FirstOrderCoexistence,
};

enum class MixingPrediction { Rapid, Slow, Boundary };

std::string to_string(Phase p);
std::string to_string(MixingPrediction m);

struct PhaseReport {
    double beta = 0.0;
    double k = 0.0;
    MinimaReport minima;
    std::optional<double> kc2;
    std::optional<double> k1;
    std::optional<double> kc1;
    std::optional<double> wc;
    Phase phase = Phase::SinglePhase;
    MixingPrediction mixing_prediction = MixingPrediction::Rapid;
    double alpha_max = 0.0;  // largest admissible contraction exponent
};

/// Critical-curve values at one inverse temperature; fields are engaged
/// only where the curve is defined.
struct CriticalCurves {
    std::optional<double> kc2;
    std::optional<double> k1;
    std::optional<double> kc1;
    std::optional<double> wc;
};

CriticalCurves critical_curves(double beta, double tol = 1e-8);

/// Full phase/mixing classification of a parameter point. Curve values are
/// present only where defined: kc2 for beta <= beta_critical, k1/kc1/wc for
/// beta > beta_critical (wc also at beta_critical, where it is 0).
PhaseReport classify(double beta, double k, double tol = 1e-8);

/// Same classification against precomputed curves (for sweeps that hold
/// beta fixed across many K).
PhaseReport classify(double beta, double k, double tol, const CriticalCurves& curves);

/// Large-deviation rate function of the magnetization,
///   I(z) = J(z) - beta K z^2 - min_y G(y),
/// nonnegative on [-1, 1] and zero exactly on the equilibrium macrostates.
/// The subtracted minimum is computed once at construction.
class RateFunction {
public:
    RateFunction(double beta, double k, double tol = 1e-10);
    double operator()(double z) const;
    double beta() const { return beta_; }
    double k() const { return k_; }

private:
    double beta_;
    double k_;
    double inf_;
};

/// One-off evaluation of the rate function (constructs a RateFunction).
double rate_function(double beta, double k, double z);

}  // namespace bcmc
