#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "divexp/errors.hpp"
#include "divexp/json_io.hpp"
#include "divexp/market.hpp"

using namespace divexp;

TEST(Curve, FlatDiscountFactors) {
  EXPECT_DOUBLE_EQ(discount_factor(PiecewiseConstantCurve(0.0), 1.0), 1.0);
  EXPECT_NEAR(discount_factor(PiecewiseConstantCurve(0.03), 10.0), 0.740818220681718, 1e-15);
  EXPECT_DOUBLE_EQ(discount_factor(PiecewiseConstantCurve(0.05), 0.0), 1.0);
}

TEST(Curve, PiecewiseDiscountFactor) {
  const PiecewiseConstantCurve r({1.0}, {0.02, 0.04});
  EXPECT_NEAR(discount_factor(r, 2.0), std::exp(-0.06), 1e-15);
  EXPECT_NEAR(r.integral(0.5), 0.01, 1e-16);
  EXPECT_DOUBLE_EQ(r.value(0.999), 0.02);
  EXPECT_DOUBLE_EQ(r.value(1.0), 0.04);
}

TEST(Curve, CarryFactor) {
  const PiecewiseConstantCurve r3(0.03), zero(0.0), q2(0.02);
  EXPECT_DOUBLE_EQ(carry_factor(r3, r3, 7.0), 1.0);
  EXPECT_NEAR(carry_factor(r3, zero, 0.5), std::exp(-0.015), 1e-15);
  EXPECT_NEAR(carry_factor(zero, q2, 1.0), std::exp(0.02), 1e-15);
}

TEST(Curve, IntegratedVariance) {
  EXPECT_NEAR(integrated_variance(PiecewiseConstantCurve(0.3), 1.0), 0.09, 1e-16);
  EXPECT_NEAR(integrated_variance(PiecewiseConstantCurve(0.3), 0.25), 0.0225, 1e-16);
  const PiecewiseConstantCurve vol({1.0}, {0.2, 0.4});
  EXPECT_NEAR(integrated_variance(vol, 2.0), 0.20, 1e-15);
  EXPECT_DOUBLE_EQ(integrated_variance(vol, 0.0), 0.0);
}

TEST(Curve, RejectsBadInput) {
  EXPECT_THROW(PiecewiseConstantCurve({1.0}, {0.1}), DomainError);
  EXPECT_THROW(PiecewiseConstantCurve({1.0, 1.0}, {0.1, 0.2, 0.3}), DomainError);
  EXPECT_THROW(PiecewiseConstantCurve({2.0, 1.0}, {0.1, 0.2, 0.3}), DomainError);
  EXPECT_THROW(PiecewiseConstantCurve({-1.0}, {0.1, 0.2}), DomainError);
  EXPECT_THROW(discount_factor(PiecewiseConstantCurve(0.01), -0.1), DomainError);
  EXPECT_THROW(carry_factor(PiecewiseConstantCurve(0.01), PiecewiseConstantCurve(0.0), -1.0),
               DomainError);
  EXPECT_THROW(integrated_variance(PiecewiseConstantCurve(0.2), -1.0), DomainError);
}

TEST(Market, Validation) {
  EXPECT_THROW(MarketState::flat(0.0, 0.0, 0.0, 0.2), DomainError);
  EXPECT_THROW(MarketState::flat(100.0, 0.0, 0.0, 0.0), DomainError);
  EXPECT_THROW(MarketState(100.0, PiecewiseConstantCurve(0.0), PiecewiseConstantCurve(0.0),
                           PiecewiseConstantCurve({1.0}, {0.2, -0.1})),
               DomainError);
  EXPECT_NO_THROW(MarketState::flat(100.0, -0.01, 0.02, 0.2));
}

TEST(Curve, MultiplicativeAndAdditiveConsistency) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> level(-0.05, 0.08), vol(0.05, 0.6), time(0.0, 12.0);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> bp{0.5, 1.0, 2.0, 5.0, 10.0};
    std::vector<double> rv, sv;
    for (std::size_t i = 0; i <= bp.size(); ++i) {
      rv.push_back(level(rng));
      sv.push_back(vol(rng));
    }
    const PiecewiseConstantCurve r(bp, rv), sigma(bp, sv);
    double s = time(rng), t = time(rng);
    if (s > t) std::swap(s, t);
    EXPECT_NEAR(discount_factor(r, t) / (discount_factor(r, s) * forward_discount_factor(r, s, t)),
                1.0, 1e-14);
    const double segment = sigma.integral_of_square(t) - sigma.integral_of_square(s);
    EXPECT_NEAR(integrated_variance(sigma, t), integrated_variance(sigma, s) + segment, 1e-14);
    EXPECT_GT(integrated_variance(sigma, t + 1e-3), integrated_variance(sigma, t));
  }
}

TEST(Curve, ContinuousAtBreakpoints) {
  const PiecewiseConstantCurve r({1.0, 3.0}, {0.01, 0.05, -0.02});
  for (double b : {1.0, 3.0}) {
    const double h = 1e-12;
    EXPECT_NEAR(discount_factor(r, b - h), discount_factor(r, b), 1e-12);
    EXPECT_NEAR(discount_factor(r, b + h), discount_factor(r, b), 1e-12);
    EXPECT_NEAR(integrated_variance(PiecewiseConstantCurve({1.0, 3.0}, {0.2, 0.3, 0.4}), b + h),
                integrated_variance(PiecewiseConstantCurve({1.0, 3.0}, {0.2, 0.3, 0.4}), b), 1e-12);
  }
}

TEST(CurveJson, RoundTrip) {
  const PiecewiseConstantCurve r({1.0, 2.0}, {0.01, 0.02, 0.03});
  const auto back = curve_from_json(curve_to_json(r));
  EXPECT_EQ(std::vector<double>(back.values().begin(), back.values().end()),
            (std::vector<double>{0.01, 0.02, 0.03}));
  EXPECT_DOUBLE_EQ(curve_from_json(Json(0.25)).value(3.0), 0.25);
  EXPECT_TRUE(curve_to_json(PiecewiseConstantCurve(0.1)).is_number());
  EXPECT_THROW(curve_from_json(Json::parse(R"({"values":[1]})")), std::invalid_argument);
  EXPECT_THROW(curve_from_json(Json::parse(R"({"breakpoints":[1],"values":[1]})")), DomainError);
}
