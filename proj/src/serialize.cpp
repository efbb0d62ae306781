#include "bcmc/serialize.hpp"

#include <cstdio>
#include <ostream>

namespace bcmc {

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

json to_json(const MinimaReport& rep) {
    return json{{"global_minimizers", rep.global_minimizers},
                {"local_minimizers", rep.local_minimizers},
                {"g_values", rep.g_values},
                {"tolerance", rep.tolerance},
                {"degenerate", rep.degenerate}};
}

json to_json(const PhaseReport& rep) {
    json j{{"beta", rep.beta},
           {"k", rep.k},
           {"minima", to_json(rep.minima)},
           {"phase", to_string(rep.phase)},
           {"mixing_prediction", to_string(rep.mixing_prediction)},
           {"alpha_max", rep.alpha_max}};
    if (rep.kc2) j["kc2"] = *rep.kc2;
    if (rep.k1) j["k1"] = *rep.k1;
    if (rep.kc1) j["kc1"] = *rep.kc1;
    if (rep.wc) j["wc"] = *rep.wc;
    return j;
}

json to_json(const MixingCurve& c) {
    json hits = json::array();
    for (auto [eps, t] : c.eps_hit) hits.push_back({{"eps", eps}, {"t_mix", t}});
    return json{{"start", {{"n_minus", c.start.n_minus}, {"n_plus", c.start.n_plus}}},
                {"t", c.t},
                {"d", c.d},
                {"eps_hit", hits}};
}

json to_json(const BottleneckReport& rep) {
    return json{{"zprime", rep.zprime},
                {"zprime_requested", rep.zprime_requested},
                {"phi", rep.phi},
                {"zprime_star", rep.zprime_star},
                {"phi_star", rep.phi_star},
                {"tmix_lower", rep.tmix_lower}};
}

json to_json(const ScalingFit& fit) {
    json pts = json::array();
    for (auto [n, v] : fit.points) pts.push_back({n, v});
    return json{{"model", to_string(fit.model)},
                {"coefficient", fit.coefficient},
                {"exponent_or_rate", fit.exponent_or_rate},
                {"r_squared", fit.r_squared},
                {"residuals", fit.residuals},
                {"points", pts}};
}

json to_json(const TvUpperCurve& c) {
    json pts = json::array();
    for (const auto& p : c.points)
        pts.push_back({{"t", p.t}, {"estimate", p.estimate}, {"stderr", p.stderr_}});
    return json{{"points", pts},
                {"exact_stationary", c.exact_stationary},
                {"replicas", c.replicas}};
}

void write_csv(std::ostream& os, const json& metadata,
               const std::vector<std::string>& columns,
               const std::vector<std::vector<std::string>>& rows, bool as_json_lines) {
    os << "#" << metadata.dump() << "\n";
    if (as_json_lines) {
        for (const auto& row : rows) {
            json obj;
            for (std::size_t i = 0; i < columns.size(); ++i)
                obj[columns[i]] = i < row.size() ? row[i] : "";
            os << obj.dump() << "\n";
        }
        return;
    }
    for (std::size_t i = 0; i < columns.size(); ++i)
        os << columns[i] << (i + 1 < columns.size() ? "," : "\n");
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i)
            os << row[i] << (i + 1 < row.size() ? "," : "\n");
    }
}

}  // namespace bcmc
