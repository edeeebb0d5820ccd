#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "divexp/expansion.hpp"
#include "divexp/json_io.hpp"
#include "divexp/oracle.hpp"

namespace divexp {

enum class PricingMethod { Black, Lehman, Expansion, Hhl, Fdm };

/// One pricer of a scenario. Labels: Black, Lehman, EG-k, LF-k, LL-k (k = 0..3),
/// HHL, FDM and FDM-<space>x<time>.
struct MethodSpec {
  PricingMethod method = PricingMethod::Black;
  ProxyWeights::Kind preset = ProxyWeights::Kind::Forward;  // expansions only
  int order = 0;                                            // expansions only
  FdmConfig fdm;
  QuadratureConfig quadrature;

  static MethodSpec black() { return of(PricingMethod::Black); }
  static MethodSpec lehman() { return of(PricingMethod::Lehman); }
  static MethodSpec expansion(ProxyWeights::Kind preset, int order);
  static MethodSpec hhl() { return of(PricingMethod::Hhl); }
  static MethodSpec fdm_with(const FdmConfig& cfg);

  std::string label() const;
  /// Throws std::invalid_argument for unknown labels.
  static MethodSpec parse(std::string_view label);

 private:
  static MethodSpec of(PricingMethod m) {
    MethodSpec spec;
    spec.method = m;
    return spec;
  }
};

double price_with(const MethodSpec& method, const MarketState& market,
                  const DividendSchedule& schedule, const VanillaOption& option);

struct Scenario {
  std::string name;
  MarketState market = MarketState::flat(100.0, 0.0, 0.0, 0.3);
  DividendSchedule schedule;
  double maturity = 1.0;
  OptionType type = OptionType::Call;
  std::vector<double> strikes;
  std::vector<MethodSpec> methods;
  MethodSpec reference = MethodSpec::hhl();

  /// Throws DomainError on non-positive strikes or maturity, or an HHL
  /// reference on a schedule without exactly one dividend before maturity.
  void validate() const;
};

struct PriceReport {
  std::string method;
  double strike;
  double price;        // NaN when the method failed
  double implied_vol;  // annualised; NaN when the price does not invert
  double vol_error;    // implied_vol - reference implied vol; NaN when undefined
  double ms;           // wall time of this price
  std::string error;   // empty on success
};

/// Annualised implied-vol difference sigma(price) - sigma(ref_price) for the
/// Black model with forward f, strike k and discount df. Throws
/// NoImpliedVolatility when either price does not invert.
double vol_error(double price, double ref_price, double forward, double strike, double discount,
                 OptionType type, double maturity);

/// Rows in method order, then strike order. Per-row failures land in the
/// error column.
std::vector<PriceReport> run_scenario(const Scenario& scenario);

/// Header `method,strike,price,vol_error,ms,error`; vol_error in volatility
/// percentage points. With `timing` false the ms column is left empty so the
/// output is byte-stable.
void write_csv(std::ostream& out, std::span<const PriceReport> reports, bool timing = true);

struct ScenarioOptions {
  bool include_last_dividend = false;  // gocsei10y: add the dividend just after maturity
  bool repo_equals_rate = false;       // gocsei10y/gocsei20y: repo spread 3% instead of 0
};

std::vector<std::string> builtin_scenario_names();
/// Throws std::invalid_argument for unknown names.
Scenario builtin_scenario(std::string_view name, const ScenarioOptions& options = {});

/// {"name", "market", "dividends", "maturity", "type", "strikes", "methods",
///  "reference", "fdm", "quadrature"}; "fdm" and "quadrature" apply to every
/// FDM and HHL method of the file.
Scenario scenario_from_json(const Json& j);
Json scenario_to_json(const Scenario& scenario);

struct ScalingProbe {
  std::vector<double> lambdas;
  std::vector<double> errors;  // |expansion - oracle| at each scaled schedule
  double slope;                // least squares slope of log error vs log lambda
};

/// Scales every cash dividend by each lambda and regresses the expansion
/// error against the oracle. Points with lambda = 0 or zero error are left
/// out of the regression.
ScalingProbe order_scaling_probe(const MarketState& market, const DividendSchedule& schedule,
                                 const VanillaOption& option, ProxyWeights::Kind preset, int order,
                                 std::span<const double> lambdas,
                                 const MethodSpec& oracle = MethodSpec::hhl());

}  // namespace divexp
