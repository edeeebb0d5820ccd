#pragma once

#include <string>
#include <vector>

#include "divexp/dividends.hpp"
#include "divexp/market.hpp"

namespace divexp {

struct QuadratureConfig {
  double width = 10.0;       // integration range in standard deviations of ln S_{t1}
  int initial_nodes = 64;    // doubled until two successive prices agree
  double tolerance = 1e-11;  // relative
  int max_nodes = 16384;
};

/// Exact single-dividend price: the Black value over the remaining period is
/// integrated against the lognormal law of the spot just before the ex-date.
/// Requires at most one dividend up to maturity, strictly before it; with none
/// (later dividends are ignored) the result is the Black price.
double hhl_price(const MarketState& market, const DividendSchedule& schedule,
                 const VanillaOption& option, const QuadratureConfig& cfg = {});

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussLegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
GaussLegendreRule gauss_legendre(int n);

struct FdmConfig {
  int space_steps = 500;
  int time_steps = 100;
  bool dividend_time_nodes = true;  // insert every ex-date in the time grid
  double width = 6.0;               // grid half-width in standard deviations of ln S_T
  int smoothing_steps = 2;          // implicit half-steps at maturity and after each ex-date
  double time_grading = 1.2;        // step-size grading toward maturity and ex-dates; 1 = uniform
};

/// Crank-Nicolson solution of the Black-Scholes PDE on a uniform log-spot
/// grid (fourth-order compact space operator), with the jump condition V(S, t_i^-) = V(max(S (1 - y_i) - delta_i, 0), t_i^+) at
/// each ex-date.
double fdm_price(const MarketState& market, const DividendSchedule& schedule,
                 const VanillaOption& option, const FdmConfig& cfg = {});

struct ConvergenceRow {
  int space_steps;
  int time_steps;
  double price;
  double increment;  // price - previous level's price (NaN on the first row)
  double ratio;      // previous increment / increment (NaN until defined)
};

struct ConvergenceReport {
  std::vector<ConvergenceRow> rows;
  bool monotone = true;  // increments shrink level after level
  std::string warning;
  /// Richardson extrapolation of the two finest levels for a second-order scheme.
  double extrapolated = 0.0;
};

/// Prices on `levels` grids, doubling space and time steps from `base`.
ConvergenceReport fdm_convergence_report(const MarketState& market,
                                         const DividendSchedule& schedule,
                                         const VanillaOption& option, int levels,
                                         const FdmConfig& base = {});

}  // namespace divexp
