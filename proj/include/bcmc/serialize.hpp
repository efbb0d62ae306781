#pragma once

#include <json.hpp>

#include "bcmc/chain.hpp"
#include "bcmc/coupling.hpp"
#include "bcmc/free_energy.hpp"
#include "bcmc/scaling.hpp"

namespace bcmc {

using nlohmann::json;

json to_json(const MinimaReport& rep);
json to_json(const PhaseReport& rep);
json to_json(const MixingCurve& c);
json to_json(const BottleneckReport& rep);
json to_json(const ScalingFit& fit);
json to_json(const TvUpperCurve& c);

/// CSV writers used by the CLI: a single '#'-prefixed JSON metadata line,
/// a header row, then the data rows.
void write_csv(std::ostream& os, const json& metadata,
               const std::vector<std::string>& columns,
               const std::vector<std::vector<std::string>>& rows, bool as_json_lines);

std::string format_double(double v);

}  // namespace bcmc
