#pragma once

#include <array>
#include <string>
#include <vector>

#include "divexp/dividends.hpp"
#include "divexp/market.hpp"

namespace divexp {

/// Per-dividend split of delta_hat_i between the forward (weight w_i) and the
/// strike (1 - w_i) of the shifted-lognormal proxy.
class ProxyWeights {
 public:
  enum class Kind { Forward, Strike, Lehman, Custom };

  static ProxyWeights forward() { return ProxyWeights(Kind::Forward, {}); }
  static ProxyWeights strike() { return ProxyWeights(Kind::Strike, {}); }
  static ProxyWeights lehman() { return ProxyWeights(Kind::Lehman, {}); }
  /// Forward, Strike or Lehman; throws DomainError for Custom.
  static ProxyWeights preset(Kind kind);
  /// One weight in [0, 1] per dividend paid up to maturity.
  static ProxyWeights custom(std::vector<double> weights);

  Kind kind() const { return kind_; }
  /// Concrete weights for the dividends of `schedule`.
  std::vector<double> resolve(const CapitalizedSchedule& schedule) const;

 private:
  ProxyWeights(Kind kind, std::vector<double> weights) : kind_(kind), weights_(std::move(weights)) {}

  Kind kind_;
  std::vector<double> weights_;
};

struct ProxyParams {
  double forward;  // pi S0/D_T - sum w_i delta_hat_i
  double strike;   // K + sum (1 - w_i) delta_hat_i
};

ProxyParams proxy_params(const MarketState& market, const DividendSchedule& schedule,
                         const VanillaOption& option, const ProxyWeights& weights);

struct ExpansionResult {
  double price;
  double proxy_price;
  std::array<double, 3> corrections{};  // first, second and third order
  double proxy_forward;
  double proxy_strike;
  int order;
};

/// Proxy Black price plus the stochastic-expansion corrections up to `order`
/// (0..3) in the dividend amounts.
ExpansionResult expand_price(const MarketState& market, const DividendSchedule& schedule,
                             const VanillaOption& option, const ProxyWeights& weights, int order);

/// Same computation on an already capitalised schedule; the hot path for
/// pricing many strikes on one schedule.
ExpansionResult expand_price(const CapitalizedSchedule& schedule, double strike, OptionType type,
                             std::span<const double> weights, int order);

}  // namespace divexp
