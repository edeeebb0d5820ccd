#include "divexp/black.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "divexp/errors.hpp"

namespace divexp {

namespace {

constexpr double kMaxStandardizedMoneyness = 40.0;
constexpr int kMaxIterations = 100;

void require_positive_vol(double v) {
  if (!(v > 0.0)) throw DegenerateVolatility("total volatility must be > 0");
}

double intrinsic(const BlackInputs& in) {
  return in.discount * std::max(sign(in.type) * (in.forward - in.strike), 0.0);
}

}  // namespace

double norm_pdf(double x) {
  constexpr double kInvSqrt2Pi = std::numbers::inv_sqrtpi / std::numbers::sqrt2;
  return kInvSqrt2Pi * std::exp(-0.5 * x * x);
}

// erfc keeps full relative precision in the lower tail, which the deep
// out-of-the-money rows need.
double norm_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

D1D2 d1_d2(double forward, double strike, double total_vol) {
  require_positive_vol(total_vol);
  const double d1 = std::log(forward / strike) / total_vol + 0.5 * total_vol;
  return {d1, d1 - total_vol};
}

double black_price(const BlackInputs& in) {
  if (!(in.forward > 0.0) || !(in.strike > 0.0)) throw DomainError("Black needs f > 0 and k > 0");
  if (!(in.total_vol >= 0.0)) throw DomainError("Black needs total_vol >= 0");
  if (in.total_vol == 0.0 ||
      std::abs(std::log(in.forward / in.strike)) / in.total_vol > kMaxStandardizedMoneyness) {
    return intrinsic(in);
  }
  const double eta = sign(in.type);
  const auto [d1, d2] = d1_d2(in.forward, in.strike, in.total_vol);
  return eta * in.discount * (in.forward * norm_cdf(eta * d1) - in.strike * norm_cdf(eta * d2));
}

double black_dk(const BlackInputs& in) {
  const double eta = sign(in.type);
  const auto [d1, d2] = d1_d2(in.forward, in.strike, in.total_vol);
  return -eta * in.discount * norm_cdf(eta * d2);
}

double black_d2k(const BlackInputs& in) {
  const auto [d1, d2] = d1_d2(in.forward, in.strike, in.total_vol);
  return in.discount * norm_pdf(d2) / (in.strike * in.total_vol);
}

double black_d3k(const BlackInputs& in) {
  const auto [d1, d2] = d1_d2(in.forward, in.strike, in.total_vol);
  const double v = in.total_vol;
  return in.discount * norm_pdf(d2) / (in.strike * in.strike * v) * (d2 / v - 1.0);
}

double black_df(const BlackInputs& in) {
  const double eta = sign(in.type);
  const auto [d1, d2] = d1_d2(in.forward, in.strike, in.total_vol);
  return eta * in.discount * norm_cdf(eta * d1);
}

// Gamma carries no call/put sign: the call-put difference is linear in f.
double black_d2f(const BlackInputs& in) {
  const auto [d1, d2] = d1_d2(in.forward, in.strike, in.total_vol);
  return in.discount * norm_pdf(d1) / (in.forward * in.total_vol);
}

double black_vega(const BlackInputs& in) {
  const auto [d1, d2] = d1_d2(in.forward, in.strike, in.total_vol);
  return in.discount * in.forward * norm_pdf(d1);
}

namespace {

// Corrado-Miller closed-form estimate for undiscounted call prices.
double initial_guess(double call, double f, double k) {
  const double a = call - 0.5 * (f - k);
  const double disc = a * a - (f - k) * (f - k) / std::numbers::pi;
  const double root = a + std::sqrt(std::max(disc, 0.0));
  double v = std::sqrt(2.0 * std::numbers::pi) / (f + k) * root;
  if (!(v > 0.0) || !std::isfinite(v)) v = std::sqrt(2.0 * std::abs(std::log(f / k))) + 0.1;
  return std::clamp(v, 1e-4, 5.0);
}

}  // namespace

double implied_total_vol(double price, double forward, double strike, double discount,
                         OptionType type) {
  if (!(forward > 0.0) || !(strike > 0.0) || !(discount > 0.0)) {
    throw DomainError("implied vol needs f > 0, k > 0, df > 0");
  }
  const double eta = sign(type);
  const double lower = discount * std::max(eta * (forward - strike), 0.0);
  const double upper = discount * (type == OptionType::Call ? forward : strike);
  if (!(price >= lower) || !(price < upper) || !std::isfinite(price)) {
    std::ostringstream msg;
    msg.precision(12);
    msg << "price " << price << " outside Black bounds [" << lower << ", " << upper << ")";
    throw NoImpliedVolatility(msg.str());
  }
  const double tol = 1e-12 * std::max(1.0, price);

  // Invert the out-of-the-money side: it carries the whole time value
  // without the intrinsic cancellation.
  const OptionType otm = forward > strike ? OptionType::Put : OptionType::Call;
  const double target = otm == type ? price : price - eta * discount * (forward - strike);
  if (target <= 0.0) return 0.0;

  BlackInputs in{forward, strike, 0.0, discount, otm};
  auto residual = [&](double v) {
    in.total_vol = v;
    return black_price(in) - target;
  };

  double lo = 0.0, hi = 1.0;
  while (residual(hi) < 0.0) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e3) throw NoImpliedVolatility("implied volatility above search range");
  }
  const double undiscounted_call =
      (otm == OptionType::Call ? target : target + discount * (forward - strike)) / discount;
  double v = std::clamp(initial_guess(undiscounted_call, forward, strike), lo, hi);

  for (int iter = 0; iter < kMaxIterations; ++iter) {
    const double r = residual(v);
    if (std::abs(r) <= tol) return v;
    if (r > 0.0) hi = v;
    else lo = v;
    in.total_vol = v;
    const double vega = black_vega(in);
    double next = vega > 0.0 ? v - r / vega : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (hi - lo < 1e-15 * std::max(1.0, hi)) return next;
    v = next;
  }
  throw ConvergenceError("implied volatility did not converge");
}

}  // namespace divexp
