#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <vector>

#include "divexp/errors.hpp"
#include "divexp/oracle.hpp"

namespace divexp {

namespace {

// Monotone piecewise-cubic Hermite interpolant (Fritsch-Carlson slopes with
// the Brodlie weighting for uneven spacing).
class MonotoneCubic {
 public:
  MonotoneCubic(std::span<const double> x, std::span<const double> y)
      : x_(x), y_(y), slope_(y.size()) {
    const std::size_t n = y.size();
    std::vector<double> h(n - 1), secant(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) {
      h[i] = x[i + 1] - x[i];
      secant[i] = (y[i + 1] - y[i]) / h[i];
    }
    slope_[0] = secant[0];
    slope_[n - 1] = secant[n - 2];
    for (std::size_t i = 1; i + 1 < n; ++i) {
      const double a = secant[i - 1], b = secant[i];
      if (a * b <= 0.0) {
        slope_[i] = 0.0;
        continue;
      }
      const double w1 = 2.0 * h[i] + h[i - 1], w2 = h[i] + 2.0 * h[i - 1];
      slope_[i] = (w1 + w2) / (w1 / a + w2 / b);
    }
  }

  double operator()(double x) const {
    const auto it = std::upper_bound(x_.begin(), x_.end(), x);
    const std::size_t last = x_.size() - 2;
    const std::size_t i =
        it == x_.begin() ? 0 : std::min(static_cast<std::size_t>(it - x_.begin()) - 1, last);
    const double h = x_[i + 1] - x_[i];
    const double t = (x - x_[i]) / h;
    const double t2 = t * t, t3 = t2 * t;
    return (2 * t3 - 3 * t2 + 1) * y_[i] + (t3 - 2 * t2 + t) * h * slope_[i] +
           (-2 * t3 + 3 * t2) * y_[i + 1] + (t3 - t2) * h * slope_[i + 1];
  }

 private:
  std::span<const double> x_, y_;
  std::vector<double> slope_;
};

// Solves a tridiagonal system with Dirichlet rows at both ends. Interior row j
// reads lower[j] v[j-1] + diag[j] v[j] + upper[j] v[j+1] = rhs[j]; `rhs`
// receives the solution.
void solve_dirichlet(const std::vector<double>& lower, const std::vector<double>& diag,
                     const std::vector<double>& upper, std::vector<double>& rhs,
                     std::vector<double>& scratch) {
  const std::size_t n = rhs.size();
  rhs[1] -= lower[1] * rhs[0];
  rhs[n - 2] -= upper[n - 2] * rhs[n - 1];
  scratch[1] = upper[1] / diag[1];
  rhs[1] /= diag[1];
  for (std::size_t i = 2; i + 1 < n; ++i) {
    const double m = diag[i] - lower[i] * scratch[i - 1];
    scratch[i] = upper[i] / m;
    rhs[i] = (rhs[i] - lower[i] * rhs[i - 1]) / m;
  }
  for (std::size_t i = n - 3; i >= 1; --i) rhs[i] -= scratch[i] * rhs[i + 1];
}

class LogSpotSolver {
 public:
  LogSpotSolver(const MarketState& market, const DividendSchedule& schedule,
                const VanillaOption& option, const FdmConfig& cfg)
      : market_(market), option_(option), cfg_(cfg), n_div_(schedule.count_until(option.maturity)) {
    const double T = option.maturity;
    for (std::size_t i = 0; i < n_div_; ++i) dividends_.push_back(schedule[i]);
    // pi_{i+1,n} for each dividend, and pi_{0,n}.
    retained_after_.assign(n_div_, 1.0);
    double pi = 1.0;
    for (std::size_t k = n_div_; k-- > 0;) {
      retained_after_[k] = pi;
      pi *= 1.0 - dividends_[k].proportional;
    }
    carry_T_ = carry_factor(market, T);
    discount_T_ = discount_factor(market, T);
    variance_T_ = integrated_variance(market, T);
    build_space_grid();
    build_time_grid();
  }

  double solve() {
    const std::size_t n = x_.size();
    std::vector<double> v(n), rhs(n), scratch(n);
    lower_.assign(n, 0.0);
    diag_.assign(n, 1.0);
    upper_.assign(n, 0.0);
    const double T = option_.maturity;
    const bool jump_at_maturity = !dividends_.empty() && dividends_.back().time >= T;
    if (jump_at_maturity) {
      const auto& d = dividends_.back();
      for (std::size_t j = 0; j < n; ++j) {
        v[j] = payoff(std::max(std::exp(x_[j]) * (1.0 - d.proportional) - d.cash, 0.0));
      }
    } else {
      initial_values(v, scratch);
    }

    std::size_t next_div = jump_at_maturity ? n_div_ - 1 : n_div_;
    int smoothing_left = cfg_.smoothing_steps;
    for (std::size_t k = times_.size() - 1; k > 0; --k) {
      const double t_hi = times_[k], t_lo = times_[k - 1];
      if (smoothing_left > 0) {
        const double mid = 0.5 * (t_lo + t_hi);
        step(v, rhs, scratch, mid, t_hi, 1.0);
        step(v, rhs, scratch, t_lo, mid, 1.0);
        --smoothing_left;
      } else {
        step(v, rhs, scratch, t_lo, t_hi, 0.5);
      }
      // Ex-dates inside [t_lo, t_hi) jump at t_lo; with dividend time nodes
      // they coincide with it.
      while (next_div > 0 && dividends_[next_div - 1].time >= t_lo - 1e-12) {
        apply_jump(v, dividends_[next_div - 1]);
        smoothing_left = cfg_.smoothing_steps;
        --next_div;
      }
    }
    return v[spot_index_];
  }

 private:
  void build_space_grid() {
    const int steps = cfg_.space_steps;
    if (steps < 4 || cfg_.time_steps < 4) throw DomainError("FDM needs at least 4 space and time steps");
    if (!(cfg_.width > 0.0)) throw DomainError("FDM grid width must be > 0");
    if (!(cfg_.time_grading >= 1.0)) throw DomainError("FDM time grading must be >= 1");
    if (!(variance_T_ > 0.0)) throw DegenerateVolatility("FDM needs a positive total variance");
    const double vT = std::sqrt(variance_T_);
    const double S0 = market_.spot;
    double forward = S0 * retained_total() / carry_T_;
    for (std::size_t i = 0; i < n_div_; ++i) {
      forward -= dividends_[i].cash * retained_after_[i] * carry_factor(market_, dividends_[i].time) /
                 carry_T_;
    }
    const double low = forward > 0.0 ? std::min(S0, forward) : 0.01 * S0;
    const double high = std::max(S0, S0 / carry_T_);
    double x_min = std::log(low) - cfg_.width * vT;
    const double x_max = std::log(high) + cfg_.width * vT;
    dx_ = (x_max - x_min) / steps;
    if (dx_ > vT) throw DomainError("FDM grid too coarse for the requested width");
    // Align ln S0 on a node so the price needs no interpolation.
    const double x0 = std::log(S0);
    const auto below = std::llround((x0 - x_min) / dx_);
    x_min = x0 - static_cast<double>(below) * dx_;
    spot_index_ = static_cast<std::size_t>(below);
    x_.resize(static_cast<std::size_t>(steps) + 1);
    for (std::size_t j = 0; j < x_.size(); ++j) x_[j] = x_min + static_cast<double>(j) * dx_;
    x_[spot_index_] = x0;
  }

  void build_time_grid() {
    const double T = option_.maturity;
    std::vector<double> nodes{0.0, T};
    if (cfg_.dividend_time_nodes) {
      for (const auto& d : dividends_) {
        if (d.time < T) nodes.push_back(d.time);
      }
    }
    std::sort(nodes.begin(), nodes.end());
    nodes.erase(std::unique(nodes.begin(), nodes.end(),
                            [](double a, double b) { return std::abs(a - b) < 1e-12; }),
                nodes.end());
    nodes.back() = T;
    // Steps are shared by segment length; inside a segment they shrink toward
    // its upper end, where the solution restarts from a kink.
    const double p = cfg_.time_grading;
    times_.push_back(0.0);
    for (std::size_t s = 0; s + 1 < nodes.size(); ++s) {
      const double lo = nodes[s], hi = nodes[s + 1], len = hi - lo;
      const int m = std::max(1, static_cast<int>(std::ceil(cfg_.time_steps * len / T - 1e-9)));
      for (int k = 1; k < m; ++k) {
        times_.push_back(hi - len * std::pow(1.0 - static_cast<double>(k) / m, p));
      }
      times_.push_back(hi);
    }
  }

  double retained_total() const {
    double pi = 1.0;
    for (const auto& d : dividends_) pi *= 1.0 - d.proportional;
    return pi;
  }

  double payoff(double spot) const {
    return std::max(sign(option_.type) * (spot - option_.strike), 0.0);
  }

  // Payoff averaged against the hat function of half-width dx around node j.
  double hat_average_payoff(std::size_t j) const {
    const double h = dx_, x = x_[j], K = option_.strike;
    const double edge = std::log(K) - x;  // offset of the strike from the node
    // Integral of (alpha + beta y)(e^{x+y} - K) over [p, q].
    const auto piece = [&](double alpha, double beta, double p, double q) {
      if (q <= p) return 0.0;
      const auto exp_part = [&](double y) { return std::exp(x + y) * (alpha + beta * (y - 1.0)); };
      const auto lin_part = [&](double y) { return K * (alpha * y + 0.5 * beta * y * y); };
      return (exp_part(q) - exp_part(p)) - (lin_part(q) - lin_part(p));
    };
    double sum = 0.0;
    if (option_.type == OptionType::Call) {
      sum += piece(1.0, 1.0 / h, std::max(-h, edge), std::min(0.0, h));
      sum += piece(1.0, -1.0 / h, std::max(0.0, edge), h);
    } else {
      sum -= piece(1.0, 1.0 / h, -h, std::min(0.0, edge));
      sum -= piece(1.0, -1.0 / h, 0.0, std::min(h, edge));
    }
    return sum / h;
  }

  // Fourth-order smoothed payoff: (v[j-1] + 10 v[j] + v[j+1]) / 12 equals the
  // hat average at interior nodes.
  void initial_values(std::vector<double>& v, std::vector<double>& scratch) {
    const std::size_t n = x_.size();
    for (std::size_t j = 1; j + 1 < n; ++j) v[j] = hat_average_payoff(j);
    v.front() = payoff(std::exp(x_.front()));
    v.back() = payoff(std::exp(x_.back()));
    std::fill(lower_.begin(), lower_.end(), 1.0 / 12.0);
    std::fill(diag_.begin(), diag_.end(), 10.0 / 12.0);
    std::fill(upper_.begin(), upper_.end(), 1.0 / 12.0);
    solve_dirichlet(lower_, diag_, upper_, v, scratch);
  }

  // Dirichlet value: discounted intrinsic of the conditional forward at t.
  double boundary_value(double spot, double t) const {
    const double carry_t = carry_factor(market_, t);
    double retained = 1.0, pv = 0.0;
    for (std::size_t i = 0; i < n_div_; ++i) {
      const auto& d = dividends_[i];
      if (d.time <= t) continue;
      retained *= 1.0 - d.proportional;
      pv += d.cash * retained_after_[i] * carry_factor(market_, d.time);
    }
    const double forward = (spot * retained * carry_t - pv) / carry_T_;
    const double df = discount_T_ / discount_factor(market_, t);
    return df * std::max(sign(option_.type) * (std::max(forward, 0.0) - option_.strike), 0.0);
  }

  // One theta-scheme step from t_hi back to t_lo. The spatial operator is the
  // fourth-order compact scheme for a u'' + b u' - r u with constant
  // coefficients: M u_t = A u - r M u, both M and A tridiagonal.
  void step(std::vector<double>& v, std::vector<double>& rhs, std::vector<double>& scratch,
            double t_lo, double t_hi, double theta) {
    const double dt = t_hi - t_lo;
    const double var = (integrated_variance(market_, t_hi) - integrated_variance(market_, t_lo)) / dt;
    const double r = (market_.rate.integral(t_hi) - market_.rate.integral(t_lo)) / dt;
    const double q = (market_.repo.integral(t_hi) - market_.repo.integral(t_lo)) / dt;
    const double a = 0.5 * var, b = r - q - 0.5 * var, h = dx_;
    const double diffusion = (a + b * b * h * h / (12.0 * a)) / (h * h);
    const double advection = b / (2.0 * h);
    const double m_side = 1.0 / 12.0, m_skew = b * h / (24.0 * a), m_mid = 10.0 / 12.0;
    // Rows of M and of A - r M.
    const double ml = m_side - m_skew, mm = m_mid, mu = m_side + m_skew;
    const double ol = diffusion - advection - r * ml;
    const double om = -2.0 * diffusion - r * mm;
    const double ou = diffusion + advection - r * mu;
    const std::size_t n = v.size();
    const double e = (1.0 - theta) * dt, i = theta * dt;
    for (std::size_t j = 1; j + 1 < n; ++j) {
      rhs[j] = (ml + e * ol) * v[j - 1] + (mm + e * om) * v[j] + (mu + e * ou) * v[j + 1];
    }
    std::fill(lower_.begin(), lower_.end(), ml - i * ol);
    std::fill(diag_.begin(), diag_.end(), mm - i * om);
    std::fill(upper_.begin(), upper_.end(), mu - i * ou);
    rhs[0] = boundary_value(std::exp(x_.front()), t_lo);
    rhs[n - 1] = boundary_value(std::exp(x_.back()), t_lo);
    solve_dirichlet(lower_, diag_, upper_, rhs, scratch);
    v.swap(rhs);
  }

  void apply_jump(std::vector<double>& v, const Dividend& d) const {
    const double left = v.front();
    const std::vector<double> before = v;
    const MonotoneCubic interp(x_, before);
    for (std::size_t j = 0; j < x_.size(); ++j) {
      const double after = std::exp(x_[j]) * (1.0 - d.proportional) - d.cash;
      if (after <= 0.0) {
        v[j] = left;
        continue;
      }
      const double x = std::log(after);
      v[j] = x <= x_.front() ? left : interp(std::min(x, x_.back()));
    }
  }

  const MarketState& market_;
  const VanillaOption& option_;
  const FdmConfig& cfg_;
  std::size_t n_div_;
  std::vector<Dividend> dividends_;
  std::vector<double> retained_after_;
  double carry_T_ = 1.0, discount_T_ = 1.0, variance_T_ = 0.0;
  std::vector<double> x_;
  std::vector<double> times_;
  double dx_ = 0.0;
  std::vector<double> lower_, diag_, upper_;
  std::size_t spot_index_ = 0;
};

}  // namespace

double fdm_price(const MarketState& market, const DividendSchedule& schedule,
                 const VanillaOption& option, const FdmConfig& cfg) {
  return LogSpotSolver(market, schedule, option, cfg).solve();
}

ConvergenceReport fdm_convergence_report(const MarketState& market,
                                         const DividendSchedule& schedule,
                                         const VanillaOption& option, int levels,
                                         const FdmConfig& base) {
  if (levels < 2) throw DomainError("convergence report needs at least two levels");
  const double nan = std::numeric_limits<double>::quiet_NaN();
  ConvergenceReport report;
  FdmConfig cfg = base;
  for (int level = 0; level < levels; ++level) {
    const double price = fdm_price(market, schedule, option, cfg);
    ConvergenceRow row{cfg.space_steps, cfg.time_steps, price, nan, nan};
    if (!report.rows.empty()) {
      const auto& prev = report.rows.back();
      row.increment = price - prev.price;
      if (!std::isnan(prev.increment)) {
        row.ratio = prev.increment / row.increment;
        if (std::abs(row.increment) > std::abs(prev.increment)) report.monotone = false;
      }
    }
    report.rows.push_back(row);
    cfg.space_steps *= 2;
    cfg.time_steps *= 2;
  }
  if (!report.monotone) report.warning = "increments do not shrink monotonically";
  const auto& last = report.rows.back();
  report.extrapolated = last.price + last.increment / 3.0;
  return report;
}

}  // namespace divexp
