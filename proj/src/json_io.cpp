#include "divexp/json_io.hpp"

#include <stdexcept>
#include <string>

namespace divexp {

namespace {

template <class T>
T read(const Json& j, const char* key, const T& fallback) {
  const auto it = j.find(key);
  if (it == j.end()) return fallback;
  try {
    return it->get<T>();
  } catch (const Json::exception& e) {
    throw std::invalid_argument(std::string("bad value for \"") + key + "\": " + e.what());
  }
}

template <class T>
T require(const Json& j, const char* key) {
  if (!j.contains(key)) throw std::invalid_argument(std::string("missing key \"") + key + "\"");
  return read<T>(j, key, T{});
}

void expect_object(const Json& j, const char* what) {
  if (!j.is_object()) throw std::invalid_argument(std::string(what) + " must be a JSON object");
}

}  // namespace

PiecewiseConstantCurve curve_from_json(const Json& j) {
  if (j.is_number()) return PiecewiseConstantCurve(j.get<double>());
  expect_object(j, "curve");
  return PiecewiseConstantCurve(require<std::vector<double>>(j, "breakpoints"),
                                require<std::vector<double>>(j, "values"));
}

Json curve_to_json(const PiecewiseConstantCurve& curve) {
  if (curve.is_flat()) return curve.values().front();
  return Json{{"breakpoints", std::vector<double>(curve.breakpoints().begin(), curve.breakpoints().end())},
              {"values", std::vector<double>(curve.values().begin(), curve.values().end())}};
}

DividendSchedule schedule_from_json(const Json& j) {
  if (!j.is_array()) throw std::invalid_argument("dividend schedule must be a JSON array");
  std::vector<Dividend> dividends;
  for (const auto& item : j) {
    expect_object(item, "dividend");
    dividends.push_back({require<double>(item, "t"), read<double>(item, "cash", 0.0),
                         read<double>(item, "prop", 0.0)});
  }
  return DividendSchedule(std::move(dividends));
}

Json schedule_to_json(const DividendSchedule& schedule) {
  Json out = Json::array();
  for (const auto& d : schedule.dividends()) {
    out.push_back({{"t", d.time}, {"cash", d.cash}, {"prop", d.proportional}});
  }
  return out;
}

MarketState market_from_json(const Json& j) {
  expect_object(j, "market");
  const auto curve = [&](const char* key) {
    return j.contains(key) ? curve_from_json(j.at(key)) : PiecewiseConstantCurve(0.0);
  };
  if (!j.contains("vol")) throw std::invalid_argument("missing key \"vol\"");
  return MarketState(require<double>(j, "spot"), curve("rate"), curve("repo"),
                     curve_from_json(j.at("vol")));
}

Json market_to_json(const MarketState& market) {
  return Json{{"spot", market.spot},
              {"rate", curve_to_json(market.rate)},
              {"repo", curve_to_json(market.repo)},
              {"vol", curve_to_json(market.vol)}};
}

FdmConfig fdm_config_from_json(const Json& j, const FdmConfig& base) {
  expect_object(j, "FDM config");
  FdmConfig cfg;
  cfg.space_steps = read(j, "space_steps", base.space_steps);
  cfg.time_steps = read(j, "time_steps", base.time_steps);
  cfg.dividend_time_nodes = read(j, "dividend_time_nodes", base.dividend_time_nodes);
  cfg.width = read(j, "width", base.width);
  cfg.smoothing_steps = read(j, "smoothing_steps", base.smoothing_steps);
  cfg.time_grading = read(j, "time_grading", base.time_grading);
  return cfg;
}

Json fdm_config_to_json(const FdmConfig& cfg) {
  return Json{{"space_steps", cfg.space_steps},
              {"time_steps", cfg.time_steps},
              {"dividend_time_nodes", cfg.dividend_time_nodes},
              {"width", cfg.width},
              {"smoothing_steps", cfg.smoothing_steps},
              {"time_grading", cfg.time_grading}};
}

QuadratureConfig quadrature_config_from_json(const Json& j, const QuadratureConfig& base) {
  expect_object(j, "quadrature config");
  QuadratureConfig cfg;
  cfg.width = read(j, "width", base.width);
  cfg.initial_nodes = read(j, "initial_nodes", base.initial_nodes);
  cfg.tolerance = read(j, "tolerance", base.tolerance);
  cfg.max_nodes = read(j, "max_nodes", base.max_nodes);
  return cfg;
}

Json quadrature_config_to_json(const QuadratureConfig& cfg) {
  return Json{{"width", cfg.width},
              {"initial_nodes", cfg.initial_nodes},
              {"tolerance", cfg.tolerance},
              {"max_nodes", cfg.max_nodes}};
}

}  // namespace divexp
