#include <algorithm>
#include <cmath>
#include <numbers>

#include "divexp/black.hpp"
#include "divexp/errors.hpp"
#include "divexp/oracle.hpp"

namespace divexp {

GaussLegendreRule gauss_legendre(int n) {
  if (n < 1) throw DomainError("Gauss-Legendre needs n >= 1");
  GaussLegendreRule rule{std::vector<double>(static_cast<std::size_t>(n)),
                         std::vector<double>(static_cast<std::size_t>(n))};
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    const auto lo = static_cast<std::size_t>(i);
    const auto hi = static_cast<std::size_t>(n - 1 - i);
    rule.nodes[lo] = -x;
    rule.nodes[hi] = x;
    rule.weights[lo] = w;
    rule.weights[hi] = w;
  }
  return rule;
}

namespace {

constexpr int kPanelNodes = 16;

const GaussLegendreRule& panel_rule() {
  static const GaussLegendreRule rule = gauss_legendre(kPanelNodes);
  return rule;
}

// Composite Gauss-Legendre on [a, b] with `panels` equal panels.
template <class F>
double integrate(F&& f, double a, double b, int panels) {
  const auto& rule = panel_rule();
  const double h = (b - a) / panels;
  double total = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double mid = a + (p + 0.5) * h;
    double s = 0.0;
    for (int k = 0; k < kPanelNodes; ++k) {
      const auto idx = static_cast<std::size_t>(k);
      s += rule.weights[idx] * f(mid + 0.5 * h * rule.nodes[idx]);
    }
    total += 0.5 * h * s;
  }
  return total;
}

}  // namespace

double hhl_price(const MarketState& market, const DividendSchedule& schedule,
                 const VanillaOption& option, const QuadratureConfig& cfg) {
  if (!(cfg.width > 0.0) || cfg.initial_nodes < 8) {
    throw DomainError("quadrature config needs width > 0 and at least 8 nodes");
  }
  const std::size_t n = schedule.count_until(option.maturity);
  if (n > 1) throw DomainError("the quadrature oracle supports exactly one dividend");
  const double T = option.maturity;
  const double discount = discount_factor(market, T);
  const double vT2 = integrated_variance(market, T);
  if (n == 0 || schedule[0].cash == 0.0) {
    if (n == 1 && !(schedule[0].time < T)) {
      throw DomainError("the quadrature oracle needs the ex-date strictly before maturity");
    }
    return black_price({model_forward(market, schedule, T), option.strike, std::sqrt(vT2),
                        discount, option.type});
  }
  const Dividend& div = schedule[0];
  const double t1 = div.time;
  if (!(t1 < T)) throw DomainError("the quadrature oracle needs the ex-date strictly before maturity");

  const double carry_t1 = carry_factor(market, t1);
  const double carry_T = carry_factor(market, T);
  const double vt1 = std::sqrt(integrated_variance(market, t1));
  const double v_rest = std::sqrt(vT2 - vt1 * vt1);
  const double spot_forward = market.spot / carry_t1;  // E[S_{t1^-}]
  const double growth = carry_t1 / carry_T;           // forward factor t1 -> T
  const double retained = 1.0 - div.proportional;
  const double at_zero = option.type == OptionType::Put ? option.strike : 0.0;

  // Undiscounted value at T of the option given z, the standardised log-spot at t1.
  auto integrand = [&](double z) {
    const double spot = spot_forward * std::exp(vt1 * z - 0.5 * vt1 * vt1);
    const double after = spot * retained - div.cash;
    const double value =
        after > 0.0 ? black_price({after * growth, option.strike, v_rest, 1.0, option.type})
                    : at_zero;
    return norm_pdf(z) * value;
  };

  // The post-dividend spot reaches zero at z0; split there so each piece is smooth.
  std::vector<double> cuts{-cfg.width, cfg.width};
  const double z0 =
      (std::log(div.cash / (retained * spot_forward)) + 0.5 * vt1 * vt1) / vt1;
  if (z0 > -cfg.width && z0 < cfg.width) cuts.insert(cuts.begin() + 1, z0);

  auto evaluate = [&](int nodes) {
    const int panels = std::max(1, nodes / kPanelNodes);
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
      total += integrate(integrand, cuts[i], cuts[i + 1], panels);
    }
    return total;
  };

  int nodes = cfg.initial_nodes;
  double previous = evaluate(nodes);
  while (nodes < cfg.max_nodes) {
    nodes *= 2;
    const double current = evaluate(nodes);
    if (std::abs(current - previous) <= cfg.tolerance * std::abs(current) || current == previous) {
      return discount * current;
    }
    previous = current;
  }
  throw ConvergenceError("quadrature did not converge within the node cap");
}

}  // namespace divexp
