#pragma once

#include <string>
#include <vector>

namespace bcmc {

enum class ScalingModel { PolyNLogN, Exponential };

std::string to_string(ScalingModel m);
ScalingModel scaling_model_from_string(const std::string& s);

struct ScalingFit {
    ScalingModel model = ScalingModel::PolyNLogN;
    double coefficient = 0.0;       // a in a*n*log n, or b in b*e^{r n}
    double exponent_or_rate = 0.0;  // 1 for the poly model; r for exponential
    double r_squared = 0.0;
    std::vector<double> residuals;  // in the regression space of the model
    std::vector<std::pair<double, double>> points;  // echoed inputs
};

/// Least squares of value against a*n*log(n) (poly model), or of log(value)
/// against log(b) + r*n (exponential model). Needs at least 4 points with
/// strictly increasing n; the exponential model needs positive values.
ScalingFit fit_scaling(const std::vector<std::pair<double, double>>& points,
                       ScalingModel model);

}  // namespace bcmc
