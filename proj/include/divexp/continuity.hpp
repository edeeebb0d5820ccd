#pragma once

#include "divexp/harness.hpp"

namespace divexp {

/// Prices around an ex-date t: a call of strike K expiring at t - eps against
/// a call of strike K - delta expiring at t + eps, with a cash dividend delta
/// at t. A consistent model makes the two agree as eps -> 0.
struct ContinuityResult {
  double left;         // V(K, t - eps)
  double right;        // V(K - delta, t + eps)
  double gap;          // right - left
  double left_limit;   // 2 V(t - eps) - V(t - 2 eps), removing the first-order time decay
  double right_limit;  // 2 V(t + eps) - V(t + 2 eps)
  double limit_gap;    // right_limit - left_limit
  /// Annualised Black vol at t + eps that reproduces `left` for strike K - delta.
  double reconciling_vol;
};

/// `method` Black is the equivalent-yield Black model: the yield matches the
/// forward of the dividend schedule at each maturity.
ContinuityResult continuity_check(const MarketState& market, double delta, double t_div,
                                  double strike, double eps, const MethodSpec& method);

}  // namespace divexp
