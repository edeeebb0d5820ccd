#pragma once

#include <span>
#include <vector>

#include "divexp/black.hpp"
#include "divexp/market.hpp"

namespace divexp {

/// Ex-date `time` (> 0), cash amount (>= 0) and proportional fraction in [0, 1).
struct Dividend {
  double time;
  double cash;
  double proportional = 0.0;
};

class DividendSchedule {
 public:
  DividendSchedule() = default;
  explicit DividendSchedule(std::vector<Dividend> dividends);

  std::span<const Dividend> dividends() const { return dividends_; }
  std::size_t size() const { return dividends_.size(); }
  bool empty() const { return dividends_.empty(); }
  const Dividend& operator[](std::size_t i) const { return dividends_[i]; }

  /// Number of dividends with ex-date <= maturity. A dividend paid exactly
  /// at maturity is applied before the payoff.
  std::size_t count_until(double maturity) const;

  DividendSchedule scaled_cash(double factor) const;

 private:
  std::vector<Dividend> dividends_;
};

struct VanillaOption {
  VanillaOption(double strike, double maturity, OptionType type = OptionType::Call);

  double strike;
  double maturity;
  OptionType type;
};

/// prod_{j=i}^{n-1} (1 - y_j) over zero-based indices; equals one when i == n.
double retained_fraction(const DividendSchedule& schedule, std::size_t i, std::size_t n);

/// Capitalised cash dividend delta_i * pi_{i+1,n} * D_{t_i} / D_T for the
/// zero-based dividend `index`, where n counts the dividends up to `maturity`.
double delta_hat(const DividendSchedule& schedule, const MarketState& market, std::size_t index,
                 double maturity);

/// E[S_T] under the piecewise-lognormal model. Throws DomainError when the
/// dividends exceed the forward.
double model_forward(const MarketState& market, const DividendSchedule& schedule, double maturity);

struct LehmanSplit {
  double near;  // sum of (T - t_i)/T * delta_hat_i
  double far;   // sum of t_i/T * delta_hat_i
};
LehmanSplit lehman_split(const MarketState& market, const DividendSchedule& schedule,
                         double maturity);

/// Black price with forward pi S0/D_T - X^n and strike K + X^f.
double lehman_price(const MarketState& market, const DividendSchedule& schedule,
                    const VanillaOption& option);

/// Per-maturity view of a schedule: everything the expansions need.
struct CapitalizedDividend {
  double time;
  double amount;    // delta_hat
  double variance;  // v_{t_i}^2
};

struct CapitalizedSchedule {
  double maturity;
  double retained_forward;  // pi_{0,n} S0 / D_T
  double discount;          // B_T
  double total_variance;    // v_T^2
  std::vector<CapitalizedDividend> dividends;

  double total_amount() const;
};

CapitalizedSchedule capitalize(const MarketState& market, const DividendSchedule& schedule,
                               double maturity);

}  // namespace divexp
