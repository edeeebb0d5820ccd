#include <cmath>
#include <stdexcept>
#include <string>

#include "divexp/errors.hpp"
#include "divexp/harness.hpp"

namespace divexp {

namespace {

std::vector<MethodSpec> expansion_family(bool with_black) {
  std::vector<MethodSpec> methods;
  if (with_black) {
    methods.push_back(MethodSpec::black());
    methods.push_back(MethodSpec::lehman());
  }
  for (auto kind : {ProxyWeights::Kind::Strike, ProxyWeights::Kind::Forward,
                    ProxyWeights::Kind::Lehman}) {
    for (int order = 1; order <= 3; ++order) methods.push_back(MethodSpec::expansion(kind, order));
  }
  return methods;
}

std::vector<double> strike_range(double first, double last, double step) {
  std::vector<double> strikes;
  const int n = static_cast<int>(std::lround((last - first) / step));
  for (int i = 0; i <= n; ++i) strikes.push_back(first + step * i);
  return strikes;
}

FdmConfig reference_grid() {
  FdmConfig cfg;
  cfg.space_steps = 2000;
  cfg.time_steps = 800;
  return cfg;
}

Scenario single_dividend(std::string name, double t1) {
  Scenario s;
  s.name = std::move(name);
  s.market = MarketState::flat(100.0, 0.0, 0.0, 0.3);
  s.schedule = DividendSchedule({{t1, 7.0}});
  s.maturity = 1.0;
  s.strikes = {50.0, 100.0, 150.0};
  s.methods = expansion_family(true);
  s.methods.push_back(MethodSpec::hhl());
  s.reference = MethodSpec::hhl();
  return s;
}

}  // namespace

std::vector<std::string> builtin_scenario_names() {
  return {"table1", "table2", "single05", "gocsei10y", "gocsei20y", "zhang"};
}

Scenario builtin_scenario(std::string_view name, const ScenarioOptions& options) {
  if (name == "table1") return single_dividend("table1", 0.1);
  if (name == "table2") return single_dividend("table2", 0.9);
  if (name == "single05") return single_dividend("single05", 0.5);

  Scenario s;
  s.name = std::string(name);
  s.reference = MethodSpec::fdm_with(reference_grid());
  if (name == "gocsei10y") {
    // Semi-annual dividends of 2 at 0.5 i + 1/365; the 20th falls after maturity.
    s.market = MarketState::flat(100.0, 0.03, options.repo_equals_rate ? 0.03 : 0.0, 0.25);
    const int last = options.include_last_dividend ? 20 : 19;
    std::vector<Dividend> divs;
    for (int i = 1; i <= last; ++i) divs.push_back({0.5 * i + 1.0 / 365.0, 2.0});
    s.schedule = DividendSchedule(std::move(divs));
    s.maturity = 10.0;
    s.strikes = strike_range(20.0, 180.0, 20.0);
    s.methods = expansion_family(true);
    s.methods.push_back(s.reference);
    return s;
  }
  if (name == "gocsei20y") {
    // Weekly dividends of 2 strictly before maturity; volatility assumed 25%.
    s.market = MarketState::flat(3000.0, 0.03, options.repo_equals_rate ? 0.03 : 0.0, 0.25);
    std::vector<Dividend> divs;
    for (int i = 1; i < 20 * 52; ++i) divs.push_back({i / 52.0, 2.0});
    s.schedule = DividendSchedule(std::move(divs));
    s.maturity = 20.0;
    s.strikes = strike_range(600.0, 5400.0, 600.0);
    s.methods = {MethodSpec::black(),
                 MethodSpec::lehman(),
                 MethodSpec::expansion(ProxyWeights::Kind::Strike, 2),
                 MethodSpec::expansion(ProxyWeights::Kind::Lehman, 1),
                 MethodSpec::expansion(ProxyWeights::Kind::Lehman, 2),
                 s.reference};
    return s;
  }
  if (name == "zhang") {
    s.market = MarketState::flat(100.0, 0.0, 0.0, 0.8);
    s.schedule = DividendSchedule({{0.3, 25.0}, {0.7, 25.0}});
    s.maturity = 1.0;
    s.strikes = strike_range(10.0, 100.0, 10.0);
    s.methods = expansion_family(true);
    s.methods.push_back(s.reference);
    return s;
  }
  throw std::invalid_argument("unknown scenario: " + std::string(name));
}

Scenario scenario_from_json(const Json& j) {
  if (!j.is_object()) throw std::invalid_argument("scenario must be a JSON object");
  Scenario s;
  try {
    s.name = j.value("name", std::string("custom"));
    if (!j.contains("market")) throw std::invalid_argument("missing key \"market\"");
    s.market = market_from_json(j.at("market"));
    if (j.contains("dividends")) s.schedule = schedule_from_json(j.at("dividends"));
    if (!j.contains("maturity")) throw std::invalid_argument("missing key \"maturity\"");
    s.maturity = j.at("maturity").get<double>();
    const auto type = j.value("type", std::string("call"));
    if (type != "call" && type != "put") throw std::invalid_argument("type must be call or put");
    s.type = type == "call" ? OptionType::Call : OptionType::Put;
    s.strikes = j.value("strikes", std::vector<double>{});
    for (const auto& label : j.value("methods", std::vector<std::string>{})) {
      s.methods.push_back(MethodSpec::parse(label));
    }
    s.reference = MethodSpec::parse(j.value("reference", std::string("HHL")));
    const auto apply = [&](MethodSpec& m) {
      if (m.method == PricingMethod::Fdm && j.contains("fdm")) {
        m.fdm = fdm_config_from_json(j.at("fdm"), m.fdm);
      }
      if (m.method == PricingMethod::Hhl && j.contains("quadrature")) {
        m.quadrature = quadrature_config_from_json(j.at("quadrature"), m.quadrature);
      }
    };
    for (auto& m : s.methods) apply(m);
    apply(s.reference);
  } catch (const Json::exception& e) {
    throw std::invalid_argument(std::string("bad scenario JSON: ") + e.what());
  }
  s.validate();
  return s;
}

Json scenario_to_json(const Scenario& scenario) {
  Json methods = Json::array();
  for (const auto& m : scenario.methods) methods.push_back(m.label());
  Json out{{"name", scenario.name},
           {"market", market_to_json(scenario.market)},
           {"dividends", schedule_to_json(scenario.schedule)},
           {"maturity", scenario.maturity},
           {"type", scenario.type == OptionType::Call ? "call" : "put"},
           {"strikes", scenario.strikes},
           {"methods", methods},
           {"reference", scenario.reference.label()}};
  if (scenario.reference.method == PricingMethod::Fdm) {
    out["fdm"] = fdm_config_to_json(scenario.reference.fdm);
  }
  return out;
}

}  // namespace divexp
