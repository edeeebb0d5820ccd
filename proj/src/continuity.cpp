#include "divexp/continuity.hpp"

#include <cmath>

#include "divexp/black.hpp"
#include "divexp/errors.hpp"

namespace divexp {

ContinuityResult continuity_check(const MarketState& market, double delta, double t_div,
                                  double strike, double eps, const MethodSpec& method) {
  if (!(t_div > 0.0) || !(eps > 0.0) || !(2.0 * eps < t_div)) {
    throw DomainError("continuity check needs 0 < 2 eps < t_div");
  }
  if (!(delta >= 0.0) || !(strike - delta > 0.0)) {
    throw DomainError("continuity check needs 0 <= delta < strike");
  }
  const DividendSchedule schedule({{t_div, delta}});
  const auto before = [&](double h) {
    return price_with(method, market, schedule, VanillaOption(strike, t_div - h));
  };
  const auto after = [&](double h) {
    return price_with(method, market, schedule, VanillaOption(strike - delta, t_div + h));
  };

  ContinuityResult r{};
  r.left = before(eps);
  r.right = after(eps);
  r.gap = r.right - r.left;
  r.left_limit = 2.0 * r.left - before(2.0 * eps);
  r.right_limit = 2.0 * r.right - after(2.0 * eps);
  r.limit_gap = r.right_limit - r.left_limit;

  const double t = t_div + eps;
  const double forward = model_forward(market, schedule, t);
  r.reconciling_vol = implied_total_vol(r.left, forward, strike - delta, discount_factor(market, t),
                                        OptionType::Call) /
                      std::sqrt(t);
  return r;
}

}  // namespace divexp
