#include "divexp/market.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "divexp/errors.hpp"

namespace divexp {

namespace {

void require_time(double t) {
  if (!(t >= 0.0) || !std::isfinite(t)) {
    throw DomainError("time must be finite and >= 0, got " + std::to_string(t));
  }
}

}  // namespace

PiecewiseConstantCurve::PiecewiseConstantCurve(double flat)
    : values_{flat}, cumulative_{}, cumulative_square_{} {
  if (!std::isfinite(flat)) throw DomainError("curve level must be finite");
}

PiecewiseConstantCurve::PiecewiseConstantCurve(std::vector<double> breakpoints,
                                               std::vector<double> values)
    : breakpoints_(std::move(breakpoints)), values_(std::move(values)) {
  if (values_.size() != breakpoints_.size() + 1) {
    throw DomainError("curve needs exactly one more value than breakpoints");
  }
  for (std::size_t i = 0; i < breakpoints_.size(); ++i) {
    if (!(breakpoints_[i] >= 0.0) || !std::isfinite(breakpoints_[i])) {
      throw DomainError("curve breakpoints must be finite and >= 0");
    }
    if (i > 0 && !(breakpoints_[i] > breakpoints_[i - 1])) {
      throw DomainError("curve breakpoints must be strictly ascending");
    }
  }
  for (double v : values_) {
    if (!std::isfinite(v)) throw DomainError("curve levels must be finite");
  }
  cumulative_.reserve(breakpoints_.size());
  cumulative_square_.reserve(breakpoints_.size());
  double acc = 0.0, acc_sq = 0.0, prev = 0.0;
  for (std::size_t i = 0; i < breakpoints_.size(); ++i) {
    const double dt = breakpoints_[i] - prev;
    acc += values_[i] * dt;
    acc_sq += values_[i] * values_[i] * dt;
    cumulative_.push_back(acc);
    cumulative_square_.push_back(acc_sq);
    prev = breakpoints_[i];
  }
}

double PiecewiseConstantCurve::value(double t) const {
  const auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), t);
  return values_[static_cast<std::size_t>(it - breakpoints_.begin())];
}

template <class F>
double PiecewiseConstantCurve::accumulate(double t, const std::vector<double>& cumulative,
                                          F level) const {
  require_time(t);
  const auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), t);
  const auto idx = static_cast<std::size_t>(it - breakpoints_.begin());
  if (idx == 0) return level(values_[0]) * t;
  return cumulative[idx - 1] + level(values_[idx]) * (t - breakpoints_[idx - 1]);
}

double PiecewiseConstantCurve::integral(double t) const {
  return accumulate(t, cumulative_, [](double v) { return v; });
}

double PiecewiseConstantCurve::integral_of_square(double t) const {
  return accumulate(t, cumulative_square_, [](double v) { return v * v; });
}

double PiecewiseConstantCurve::min_value() const {
  return *std::min_element(values_.begin(), values_.end());
}

MarketState::MarketState(double spot_, PiecewiseConstantCurve rate_, PiecewiseConstantCurve repo_,
                         PiecewiseConstantCurve vol_)
    : spot(spot_), rate(std::move(rate_)), repo(std::move(repo_)), vol(std::move(vol_)) {
  if (!(spot > 0.0) || !std::isfinite(spot)) throw DomainError("spot must be > 0");
  if (!(vol.min_value() > 0.0)) throw DomainError("volatility levels must be > 0");
}

double discount_factor(const PiecewiseConstantCurve& rate, double t) {
  return std::exp(-rate.integral(t));
}

double forward_discount_factor(const PiecewiseConstantCurve& rate, double s, double t) {
  require_time(s);
  if (t < s) throw DomainError("forward discount needs s <= t");
  return std::exp(-(rate.integral(t) - rate.integral(s)));
}

double carry_factor(const PiecewiseConstantCurve& rate, const PiecewiseConstantCurve& repo,
                    double t) {
  return std::exp(-(rate.integral(t) - repo.integral(t)));
}

double integrated_variance(const PiecewiseConstantCurve& vol, double t) {
  return vol.integral_of_square(t);
}

}  // namespace divexp
