#include "divexp/expansion.hpp"

#include <cmath>
#include <numbers>

#include "divexp/black.hpp"
#include "divexp/errors.hpp"
#include "divexp/sums.hpp"

namespace divexp {

namespace {

// Beyond this many standard deviations the kernels are below 1e-300.
constexpr double kKernelCutoff = 40.0;
constexpr double kInvSqrt2Pi = std::numbers::inv_sqrtpi / std::numbers::sqrt2;

}  // namespace

ProxyWeights ProxyWeights::custom(std::vector<double> weights) {
  for (double w : weights) {
    if (!(w >= 0.0 && w <= 1.0)) throw DomainError("proxy weights must lie in [0, 1]");
  }
  return ProxyWeights(Kind::Custom, std::move(weights));
}

ProxyWeights ProxyWeights::preset(Kind kind) {
  if (kind == Kind::Custom) throw DomainError("custom weights are not a preset");
  return ProxyWeights(kind, {});
}

std::vector<double> ProxyWeights::resolve(const CapitalizedSchedule& schedule) const {
  const std::size_t n = schedule.dividends.size();
  switch (kind_) {
    case Kind::Forward:
      return std::vector<double>(n, 1.0);
    case Kind::Strike:
      return std::vector<double>(n, 0.0);
    case Kind::Lehman: {
      std::vector<double> w(n);
      for (std::size_t i = 0; i < n; ++i) {
        w[i] = (schedule.maturity - schedule.dividends[i].time) / schedule.maturity;
      }
      return w;
    }
    case Kind::Custom:
      if (weights_.size() != n) {
        throw DomainError("custom proxy weights: expected " + std::to_string(n) + " weights, got " +
                          std::to_string(weights_.size()));
      }
      return weights_;
  }
  return {};
}

namespace {

struct Lumps {
  double near = 0.0;
  double far = 0.0;
};

Lumps split_amounts(const CapitalizedSchedule& schedule, std::span<const double> weights) {
  if (weights.size() != schedule.dividends.size()) {
    throw DomainError("one proxy weight per dividend is required");
  }
  Lumps lumps;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    lumps.near += weights[i] * schedule.dividends[i].amount;
    lumps.far += (1.0 - weights[i]) * schedule.dividends[i].amount;
  }
  return lumps;
}

}  // namespace

ProxyParams proxy_params(const MarketState& market, const DividendSchedule& schedule,
                         const VanillaOption& option, const ProxyWeights& weights) {
  const auto cap = capitalize(market, schedule, option.maturity);
  const auto lumps = split_amounts(cap, weights.resolve(cap));
  const ProxyParams p{cap.retained_forward - lumps.near, option.strike + lumps.far};
  if (!(p.forward > 0.0)) throw DomainError("proxy forward must be > 0");
  return p;
}

ExpansionResult expand_price(const MarketState& market, const DividendSchedule& schedule,
                             const VanillaOption& option, const ProxyWeights& weights, int order) {
  const auto cap = capitalize(market, schedule, option.maturity);
  const auto w = weights.resolve(cap);
  return expand_price(cap, option.strike, option.type, w, order);
}

ExpansionResult expand_price(const CapitalizedSchedule& schedule, double strike, OptionType type,
                             std::span<const double> weights, int order) {
  if (order < 0 || order > 3) throw DomainError("expansion order must be in 0..3");
  if (!(strike > 0.0)) throw DomainError("strike must be > 0");
  const auto lumps = split_amounts(schedule, weights);
  const double f = schedule.retained_forward - lumps.near;
  const double k = strike + lumps.far;
  if (!(f > 0.0)) throw DomainError("proxy forward must be > 0");

  const double vT2 = schedule.total_variance;
  const double v = std::sqrt(vT2);
  const double B = schedule.discount;
  ExpansionResult result{};
  result.proxy_forward = f;
  result.proxy_strike = k;
  result.order = order;
  result.proxy_price = black_price({f, k, v, B, type});
  result.price = result.proxy_price;
  if (order == 0 || schedule.dividends.empty()) return result;
  if (!(v > 0.0)) throw DegenerateVolatility("expansions need a positive total variance");

  // The remainder S_T - (F_T - k) is a combination of M_T / M_tau with
  // tau = 0 (near lump), tau = T (far lump) and tau = t_i (-delta_hat_i).
  // Each term is stored as (coefficient, v_T^2 - v_tau^2).
  std::vector<double> coef, residual;
  coef.reserve(schedule.dividends.size() + 2);
  residual.reserve(schedule.dividends.size() + 2);
  if (lumps.near != 0.0) {
    coef.push_back(lumps.near);
    residual.push_back(vT2);
  }
  if (lumps.far != 0.0) {
    coef.push_back(lumps.far);
    residual.push_back(0.0);
  }
  for (const auto& d : schedule.dividends) {
    if (d.amount == 0.0) continue;
    coef.push_back(-d.amount);
    residual.push_back(vT2 - d.variance);
  }

  const double eta = sign(type);
  const double d2 = std::log(f / k) / v - 0.5 * v;
  const double inv_v = 1.0 / v;

  // -dC/dK at forward f e^{s}.
  double first = 0.0;
  for (std::size_t i = 0; i < coef.size(); ++i) {
    first += coef[i] * eta * norm_cdf(eta * (d2 + residual[i] * inv_v));
  }
  result.corrections[0] = B * first;

  if (order >= 2) {
    // d^2C/dK^2 at forward f e^{S}, times the overlap factor e^{p}.
    auto second_kernel = [&](double S, double p) {
      const double x = d2 + S * inv_v;
      if (std::abs(x) > kKernelCutoff) return 0.0;
      return std::exp(p - 0.5 * x * x);
    };
    const double sum = symmetric_double_sum(coef, residual, second_kernel);
    result.corrections[1] = 0.5 * B * kInvSqrt2Pi / (k * v) * sum;
  }
  if (order >= 3) {
    auto third_kernel = [&](double S, double p) {
      const double x = d2 + S * inv_v;
      if (std::abs(x) > kKernelCutoff) return 0.0;
      return std::exp(p - 0.5 * x * x) * (x * inv_v - 1.0);
    };
    const double sum = symmetric_triple_sum(coef, residual, third_kernel);
    result.corrections[2] = -B * kInvSqrt2Pi / (6.0 * k * k * v) * sum;
  }
  for (int m = 0; m < order; ++m) result.price += result.corrections[static_cast<std::size_t>(m)];
  return result;
}

}  // namespace divexp
