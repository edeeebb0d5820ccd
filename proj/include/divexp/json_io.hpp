#pragma once

#include <json.hpp>

#include "divexp/dividends.hpp"
#include "divexp/market.hpp"
#include "divexp/oracle.hpp"

namespace divexp {

using Json = nlohmann::json;

// Malformed documents throw std::invalid_argument; well-formed documents
// with invalid values throw DomainError from the constructors.

/// {"breakpoints": [...], "values": [...]} or a plain number for a flat curve.
PiecewiseConstantCurve curve_from_json(const Json& j);
Json curve_to_json(const PiecewiseConstantCurve& curve);

/// [{"t": 0.5, "cash": 2.0, "prop": 0.0}, ...]; "prop" defaults to 0.
DividendSchedule schedule_from_json(const Json& j);
Json schedule_to_json(const DividendSchedule& schedule);

/// {"spot", "rate", "repo", "vol"}; rate and repo default to 0.
MarketState market_from_json(const Json& j);
Json market_to_json(const MarketState& market);

/// Missing keys keep the values of `base`.
FdmConfig fdm_config_from_json(const Json& j, const FdmConfig& base = {});
Json fdm_config_to_json(const FdmConfig& cfg);
QuadratureConfig quadrature_config_from_json(const Json& j, const QuadratureConfig& base = {});
Json quadrature_config_to_json(const QuadratureConfig& cfg);

}  // namespace divexp
