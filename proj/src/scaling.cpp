#include "bcmc/scaling.hpp"

#include <cmath>
#include <stdexcept>

namespace bcmc {

std::string to_string(ScalingModel m) {
    return m == ScalingModel::PolyNLogN ? "poly_nlogn" : "exponential";
}

ScalingModel scaling_model_from_string(const std::string& s) {
    if (s == "poly_nlogn") return ScalingModel::PolyNLogN;
    if (s == "exponential") return ScalingModel::Exponential;
    throw std::invalid_argument("unknown scaling model: " + s);
}

ScalingFit fit_scaling(const std::vector<std::pair<double, double>>& points,
                       ScalingModel model) {
    if (points.size() < 4)
        throw std::invalid_argument("fit_scaling: need at least 4 points");
    for (std::size_t i = 1; i < points.size(); ++i)
        if (!(points[i].first > points[i - 1].first))
            throw std::invalid_argument("fit_scaling: n must be strictly increasing");

    ScalingFit fit;
    fit.model = model;
    fit.points = points;

    const auto m = static_cast<double>(points.size());
    if (model == ScalingModel::PolyNLogN) {
        // one-parameter least squares through the origin in x = n log n
        double sxy = 0.0, sxx = 0.0, sy = 0.0;
        for (auto [n, v] : points) {
            double x = n * std::log(n);
            sxy += x * v;
            sxx += x * x;
            sy += v;
        }
        double a = sxy / sxx;
        double mean = sy / m, ss_res = 0.0, ss_tot = 0.0;
        for (auto [n, v] : points) {
            double r = v - a * n * std::log(n);
            fit.residuals.push_back(r);
            ss_res += r * r;
            ss_tot += (v - mean) * (v - mean);
        }
        fit.coefficient = a;
        fit.exponent_or_rate = 1.0;
        fit.r_squared = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
        return fit;
    }

    // exponential: regress log(value) on n
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (auto [n, v] : points) {
        if (!(v > 0.0))
            throw std::invalid_argument("fit_scaling: exponential model needs positive values");
        double y = std::log(v);
        sx += n;
        sy += y;
        sxx += n * n;
        sxy += n * y;
    }
    double denom = m * sxx - sx * sx;
    double r = (m * sxy - sx * sy) / denom;
    double logb = (sy - r * sx) / m;
    double mean = sy / m, ss_res = 0.0, ss_tot = 0.0;
    for (auto [n, v] : points) {
        double res = std::log(v) - (logb + r * n);
        fit.residuals.push_back(res);
        ss_res += res * res;
        ss_tot += (std::log(v) - mean) * (std::log(v) - mean);
    }
    fit.coefficient = std::exp(logb);
    fit.exponent_or_rate = r;
    fit.r_squared = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
    return fit;
}

}  // namespace bcmc
