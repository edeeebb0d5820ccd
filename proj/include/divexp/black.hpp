#pragma once

namespace divexp {

enum class OptionType : int { Call = 1, Put = -1 };

constexpr double sign(OptionType type) { return static_cast<double>(static_cast<int>(type)); }

/// Inputs of the Black-76 formula. `total_vol` is sqrt(\int_0^T sigma^2),
/// `discount` is B_T.
struct BlackInputs {
  double forward;
  double strike;
  double total_vol;
  double discount = 1.0;
  OptionType type = OptionType::Call;
};

struct D1D2 {
  double d1;
  double d2;
};

double norm_pdf(double x);
double norm_cdf(double x);

/// Throws DegenerateVolatility when v <= 0.
D1D2 d1_d2(double forward, double strike, double total_vol);

/// Discounted Black price. v = 0 and |ln(f/k)|/v > 40 return the discounted intrinsic.
double black_price(const BlackInputs& in);

// Strike and forward derivatives. All require total_vol > 0.
double black_dk(const BlackInputs& in);
double black_d2k(const BlackInputs& in);
double black_d3k(const BlackInputs& in);
double black_df(const BlackInputs& in);
double black_d2f(const BlackInputs& in);
double black_vega(const BlackInputs& in);  // d price / d total_vol

/// Total volatility reproducing `price`. Requires
/// df * max(eta (f - k), 0) <= price < df * (f for a call, k for a put);
/// throws NoImpliedVolatility otherwise.
double implied_total_vol(double price, double forward, double strike, double discount,
                         OptionType type);

}  // namespace divexp
