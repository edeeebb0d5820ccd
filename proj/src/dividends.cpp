#include "divexp/dividends.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "divexp/errors.hpp"

namespace divexp {

DividendSchedule::DividendSchedule(std::vector<Dividend> dividends)
    : dividends_(std::move(dividends)) {
  for (std::size_t i = 0; i < dividends_.size(); ++i) {
    const auto& d = dividends_[i];
    if (!(d.time > 0.0) || !std::isfinite(d.time)) {
      throw DomainError("dividend ex-dates must be > 0 (fold a dividend at t=0 into spot)");
    }
    if (!(d.cash >= 0.0) || !std::isfinite(d.cash)) {
      throw DomainError("cash dividends must be >= 0");
    }
    if (!(d.proportional >= 0.0 && d.proportional < 1.0)) {
      throw DomainError("proportional dividends must lie in [0, 1)");
    }
    if (i > 0 && !(d.time > dividends_[i - 1].time)) {
      throw DomainError("dividend ex-dates must be strictly ascending");
    }
  }
}

std::size_t DividendSchedule::count_until(double maturity) const {
  const auto it = std::upper_bound(dividends_.begin(), dividends_.end(), maturity,
                                   [](double t, const Dividend& d) { return t < d.time; });
  return static_cast<std::size_t>(it - dividends_.begin());
}

DividendSchedule DividendSchedule::scaled_cash(double factor) const {
  auto copy = dividends_;
  for (auto& d : copy) d.cash *= factor;
  return DividendSchedule(std::move(copy));
}

VanillaOption::VanillaOption(double strike_, double maturity_, OptionType type_)
    : strike(strike_), maturity(maturity_), type(type_) {
  if (!(strike > 0.0) || !std::isfinite(strike)) throw DomainError("strike must be > 0");
  if (!(maturity > 0.0) || !std::isfinite(maturity)) throw DomainError("maturity must be > 0");
}

double retained_fraction(const DividendSchedule& schedule, std::size_t i, std::size_t n) {
  if (i > n || n > schedule.size()) throw DomainError("retained_fraction needs i <= n <= count");
  double pi = 1.0;
  for (std::size_t j = i; j < n; ++j) pi *= 1.0 - schedule[j].proportional;
  return pi;
}

double delta_hat(const DividendSchedule& schedule, const MarketState& market, std::size_t index,
                 double maturity) {
  const std::size_t n = schedule.count_until(maturity);
  if (index >= n) throw DomainError("dividend ex-date is after maturity");
  const auto& d = schedule[index];
  return d.cash * retained_fraction(schedule, index + 1, n) * carry_factor(market, d.time) /
         carry_factor(market, maturity);
}

CapitalizedSchedule capitalize(const MarketState& market, const DividendSchedule& schedule,
                               double maturity) {
  if (!(maturity > 0.0)) throw DomainError("maturity must be > 0");
  const std::size_t n = schedule.count_until(maturity);
  const double carry_T = carry_factor(market, maturity);
  CapitalizedSchedule out{maturity, 0.0, discount_factor(market, maturity),
                          integrated_variance(market, maturity), {}};
  out.dividends.reserve(n);
  // Walk backwards so pi_{i,n} accumulates in one pass.
  double pi = 1.0;
  std::vector<CapitalizedDividend> reversed;
  reversed.reserve(n);
  for (std::size_t k = n; k-- > 0;) {
    const auto& d = schedule[k];
    reversed.push_back({d.time, d.cash * pi * carry_factor(market, d.time) / carry_T,
                        integrated_variance(market, d.time)});
    pi *= 1.0 - d.proportional;
  }
  out.dividends.assign(reversed.rbegin(), reversed.rend());
  out.retained_forward = pi * market.spot / carry_T;
  return out;
}

double CapitalizedSchedule::total_amount() const {
  return std::accumulate(dividends.begin(), dividends.end(), 0.0,
                         [](double acc, const CapitalizedDividend& d) { return acc + d.amount; });
}

double model_forward(const MarketState& market, const DividendSchedule& schedule,
                     double maturity) {
  const auto cap = capitalize(market, schedule, maturity);
  const double f = cap.retained_forward - cap.total_amount();
  if (!(f > 0.0)) {
    throw DomainError("dividends exceed forward (f = " + std::to_string(f) + ")");
  }
  return f;
}

LehmanSplit lehman_split(const MarketState& market, const DividendSchedule& schedule,
                         double maturity) {
  const auto cap = capitalize(market, schedule, maturity);
  LehmanSplit split{0.0, 0.0};
  for (const auto& d : cap.dividends) {
    const double far = d.time / maturity * d.amount;
    split.far += far;
    split.near += d.amount - far;
  }
  return split;
}

double lehman_price(const MarketState& market, const DividendSchedule& schedule,
                    const VanillaOption& option) {
  const auto cap = capitalize(market, schedule, option.maturity);
  const auto split = lehman_split(market, schedule, option.maturity);
  const double f = cap.retained_forward - split.near;
  if (!(f > 0.0)) throw DomainError("near dividends exceed the Lehman forward");
  return black_price({f, option.strike + split.far, std::sqrt(cap.total_variance), cap.discount,
                      option.type});
}

}  // namespace divexp
