#pragma once

#include <span>
#include <vector>

namespace divexp {

/// Step function of time. `values[0]` applies on [0, breakpoints[0]),
/// `values[i]` on [breakpoints[i-1], breakpoints[i]) and the last value
/// extends to +infinity. Integrals are exact.
class PiecewiseConstantCurve {
 public:
  explicit PiecewiseConstantCurve(double flat = 0.0);
  PiecewiseConstantCurve(std::vector<double> breakpoints, std::vector<double> values);

  double value(double t) const;
  /// \int_0^t c(s) ds
  double integral(double t) const;
  /// \int_0^t c(s)^2 ds
  double integral_of_square(double t) const;

  bool is_flat() const { return breakpoints_.empty(); }
  double min_value() const;
  std::span<const double> breakpoints() const { return breakpoints_; }
  std::span<const double> values() const { return values_; }

 private:
  template <class F>
  double accumulate(double t, const std::vector<double>& cumulative, F level) const;

  std::vector<double> breakpoints_;
  std::vector<double> values_;
  std::vector<double> cumulative_;         // integral up to each breakpoint
  std::vector<double> cumulative_square_;  // integral of square up to each breakpoint
};

struct MarketState {
  MarketState(double spot, PiecewiseConstantCurve rate, PiecewiseConstantCurve repo,
              PiecewiseConstantCurve vol);

  double spot;
  PiecewiseConstantCurve rate;
  PiecewiseConstantCurve repo;
  PiecewiseConstantCurve vol;

  static MarketState flat(double spot, double rate, double repo, double vol) {
    return MarketState(spot, PiecewiseConstantCurve(rate), PiecewiseConstantCurve(repo),
                       PiecewiseConstantCurve(vol));
  }
};

/// B_t = exp(-\int_0^t r)
double discount_factor(const PiecewiseConstantCurve& rate, double t);
/// exp(-\int_s^t r), the factor carrying a value from t back to s.
double forward_discount_factor(const PiecewiseConstantCurve& rate, double s, double t);
/// D_t = exp(-\int_0^t (r - q))
double carry_factor(const PiecewiseConstantCurve& rate, const PiecewiseConstantCurve& repo,
                    double t);
/// v_t^2 = \int_0^t sigma^2
double integrated_variance(const PiecewiseConstantCurve& vol, double t);

inline double discount_factor(const MarketState& m, double t) { return discount_factor(m.rate, t); }
inline double carry_factor(const MarketState& m, double t) { return carry_factor(m.rate, m.repo, t); }
inline double integrated_variance(const MarketState& m, double t) {
  return integrated_variance(m.vol, t);
}

}  // namespace divexp
