#include "divexp/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <ostream>
#include <stdexcept>

#include "divexp/black.hpp"
#include "divexp/errors.hpp"

namespace divexp {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct PresetName {
  ProxyWeights::Kind kind;
  std::string_view prefix;
};
constexpr PresetName kPresets[] = {
    {ProxyWeights::Kind::Strike, "EG"},
    {ProxyWeights::Kind::Forward, "LF"},
    {ProxyWeights::Kind::Lehman, "LL"},
};

std::string format(const char* fmt, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, fmt, x);
  return buf;
}

// CSV cells never contain separators or line breaks.
std::string sanitize(std::string s) {
  std::replace(s.begin(), s.end(), ',', ';');
  std::replace(s.begin(), s.end(), '\n', ' ');
  return s;
}

}  // namespace

MethodSpec MethodSpec::expansion(ProxyWeights::Kind preset, int order) {
  if (order < 0 || order > 3) throw DomainError("expansion order must be in 0..3");
  MethodSpec m;
  m.method = PricingMethod::Expansion;
  m.preset = preset;
  m.order = order;
  return m;
}

MethodSpec MethodSpec::fdm_with(const FdmConfig& cfg) {
  MethodSpec m;
  m.method = PricingMethod::Fdm;
  m.fdm = cfg;
  return m;
}

std::string MethodSpec::label() const {
  switch (method) {
    case PricingMethod::Black:
      return "Black";
    case PricingMethod::Lehman:
      return "Lehman";
    case PricingMethod::Hhl:
      return "HHL";
    case PricingMethod::Fdm: {
      const FdmConfig defaults;
      if (fdm.space_steps == defaults.space_steps && fdm.time_steps == defaults.time_steps) {
        return "FDM";
      }
      return "FDM-" + std::to_string(fdm.space_steps) + "x" + std::to_string(fdm.time_steps);
    }
    case PricingMethod::Expansion:
      for (const auto& p : kPresets) {
        if (p.kind == preset) return std::string(p.prefix) + "-" + std::to_string(order);
      }
      return "custom-" + std::to_string(order);
  }
  return {};
}

MethodSpec MethodSpec::parse(std::string_view label) {
  if (label == "Black") return black();
  if (label == "Lehman") return lehman();
  if (label == "HHL") return hhl();
  if (label == "FDM") return fdm_with({});
  if (label.starts_with("FDM-")) {
    const std::string dims(label.substr(4));
    int space = 0, time = 0;
    char tail = 0;
    if (std::sscanf(dims.c_str(), "%dx%d%c", &space, &time, &tail) != 2) {
      throw std::invalid_argument("bad FDM label: " + std::string(label));
    }
    FdmConfig cfg;
    cfg.space_steps = space;
    cfg.time_steps = time;
    return fdm_with(cfg);
  }
  for (const auto& p : kPresets) {
    if (label.size() == 4 && label.substr(0, 2) == p.prefix && label[2] == '-' &&
        label[3] >= '0' && label[3] <= '3') {
      return expansion(p.kind, label[3] - '0');
    }
  }
  throw std::invalid_argument("unknown method: " + std::string(label));
}

double price_with(const MethodSpec& method, const MarketState& market,
                  const DividendSchedule& schedule, const VanillaOption& option) {
  switch (method.method) {
    case PricingMethod::Black:
      return black_price({model_forward(market, schedule, option.maturity), option.strike,
                          std::sqrt(integrated_variance(market, option.maturity)),
                          discount_factor(market, option.maturity), option.type});
    case PricingMethod::Lehman:
      return lehman_price(market, schedule, option);
    case PricingMethod::Expansion:
      return expand_price(market, schedule, option, ProxyWeights::preset(method.preset),
                          method.order)
          .price;
    case PricingMethod::Hhl:
      return hhl_price(market, schedule, option, method.quadrature);
    case PricingMethod::Fdm:
      return fdm_price(market, schedule, option, method.fdm);
  }
  return kNaN;
}

void Scenario::validate() const {
  if (!(maturity > 0.0)) throw DomainError("scenario maturity must be > 0");
  for (double k : strikes) {
    if (!(k > 0.0)) throw DomainError("scenario strikes must be > 0");
  }
  if (reference.method == PricingMethod::Hhl) {
    const std::size_t n = schedule.count_until(maturity);
    if (n != 1 || !(schedule[0].time < maturity)) {
      throw DomainError("an HHL reference needs exactly one dividend before maturity");
    }
  }
}

double vol_error(double price, double ref_price, double forward, double strike, double discount,
                 OptionType type, double maturity) {
  const double root_t = std::sqrt(maturity);
  const double vol = implied_total_vol(price, forward, strike, discount, type) / root_t;
  const double ref = implied_total_vol(ref_price, forward, strike, discount, type) / root_t;
  return vol - ref;
}

std::vector<PriceReport> run_scenario(const Scenario& scenario) {
  scenario.validate();
  using Clock = std::chrono::steady_clock;
  const double T = scenario.maturity;
  const double forward = model_forward(scenario.market, scenario.schedule, T);
  const double discount = discount_factor(scenario.market, T);
  const double root_t = std::sqrt(T);

  std::vector<double> reference(scenario.strikes.size(), kNaN);
  std::vector<std::string> reference_error(scenario.strikes.size());
  for (std::size_t s = 0; s < scenario.strikes.size(); ++s) {
    try {
      reference[s] = price_with(scenario.reference, scenario.market, scenario.schedule,
                                VanillaOption(scenario.strikes[s], T, scenario.type));
    } catch (const std::exception& e) {
      reference_error[s] = e.what();
    }
  }

  std::vector<PriceReport> rows;
  for (const auto& method : scenario.methods) {
    for (std::size_t s = 0; s < scenario.strikes.size(); ++s) {
      const double strike = scenario.strikes[s];
      PriceReport row{method.label(), strike, kNaN, kNaN, kNaN, 0.0, {}};
      const auto start = Clock::now();
      try {
        row.price = price_with(method, scenario.market, scenario.schedule,
                               VanillaOption(strike, T, scenario.type));
      } catch (const std::exception& e) {
        row.error = e.what();
      }
      row.ms = std::chrono::duration<double, std::milli>(Clock::now() - start).count();
      if (row.error.empty()) {
        try {
          row.implied_vol =
              implied_total_vol(row.price, forward, strike, discount, scenario.type) / root_t;
          if (!reference_error[s].empty()) {
            row.error = "reference failed: " + reference_error[s];
          } else {
            row.vol_error = vol_error(row.price, reference[s], forward, strike, discount,
                                      scenario.type, T);
          }
        } catch (const NoImpliedVolatility& e) {
          row.error = std::string("no implied vol: ") + e.what();
        } catch (const std::exception& e) {
          row.error = e.what();
        }
      }
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

void write_csv(std::ostream& out, std::span<const PriceReport> reports, bool timing) {
  out << "method,strike,price,vol_error,ms,error\n";
  for (const auto& r : reports) {
    out << r.method << ',' << format("%.10g", r.strike) << ','
        << (std::isnan(r.price) ? "" : format("%.8f", r.price)) << ','
        << (std::isnan(r.vol_error) ? "" : format("%.2e", 100.0 * r.vol_error)) << ','
        << (timing ? format("%.4f", r.ms) : "") << ',' << sanitize(r.error) << '\n';
  }
}

ScalingProbe order_scaling_probe(const MarketState& market, const DividendSchedule& schedule,
                                 const VanillaOption& option, ProxyWeights::Kind preset, int order,
                                 std::span<const double> lambdas, const MethodSpec& oracle) {
  const auto method = MethodSpec::expansion(preset, order);
  ScalingProbe probe{{lambdas.begin(), lambdas.end()}, {}, kNaN};
  std::vector<double> xs, ys;
  for (double lambda : lambdas) {
    if (!(lambda >= 0.0)) throw DomainError("scaling factors must be >= 0");
    const auto scaled = schedule.scaled_cash(lambda);
    const double err = std::abs(price_with(method, market, scaled, option) -
                                price_with(oracle, market, scaled, option));
    probe.errors.push_back(err);
    if (lambda > 0.0 && err > 0.0) {
      xs.push_back(std::log(lambda));
      ys.push_back(std::log(err));
    }
  }
  if (xs.size() >= 2) {
    const double n = static_cast<double>(xs.size());
    const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
    const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / n;
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      sxy += (xs[i] - mx) * (ys[i] - my);
      sxx += (xs[i] - mx) * (xs[i] - mx);
    }
    probe.slope = sxy / sxx;
  }
  return probe;
}

}  // namespace divexp
