#include <gtest/gtest.h>

#include <cmath>

#include "divexp/black.hpp"
#include "divexp/errors.hpp"
#include "divexp/harness.hpp"
#include "divexp/oracle.hpp"
#include "golden.hpp"

using namespace divexp;

namespace {

const MarketState kTableMarket = MarketState::flat(100.0, 0.0, 0.0, 0.3);

double black_reference(const MarketState& m, double K, double T, OptionType type = OptionType::Call) {
  return black_price({m.spot / carry_factor(m, T), K, std::sqrt(integrated_variance(m, T)),
                      discount_factor(m, T), type});
}

FdmConfig fine_grid() {
  FdmConfig cfg;
  cfg.space_steps = 2000;
  cfg.time_steps = 800;
  return cfg;
}

}  // namespace

TEST(GaussLegendre, IntegratesPolynomialsExactly) {
  const auto rule = gauss_legendre(8);
  ASSERT_EQ(rule.nodes.size(), 8u);
  for (int p = 0; p <= 15; ++p) {
    double sum = 0.0;
    for (std::size_t i = 0; i < 8; ++i) sum += rule.weights[i] * std::pow(rule.nodes[i], p);
    EXPECT_NEAR(sum, p % 2 ? 0.0 : 2.0 / (p + 1), 1e-14) << p;
  }
}

TEST(Hhl, GoldenValues) {
  for (const auto* table : {&golden::kEarly, &golden::kLate}) {
    const double t1 = table == &golden::kEarly ? 0.1 : 0.9;
    for (std::size_t i = 0; i < 3; ++i) {
      EXPECT_NEAR(hhl_price(kTableMarket, DividendSchedule({{t1, 7.0}}), VanillaOption(golden::kStrikes[i], 1.0)),
                  (*table)[0].price[i], 5e-8);
    }
  }
}

TEST(Hhl, ZeroDividendIsBlack) {
  for (double K : {50.0, 100.0, 150.0}) {
    EXPECT_NEAR(hhl_price(kTableMarket, DividendSchedule({{0.5, 0.0}}), VanillaOption(K, 1.0)),
                black_reference(kTableMarket, K, 1.0), 1e-11);
    EXPECT_NEAR(hhl_price(kTableMarket, DividendSchedule(), VanillaOption(K, 1.0)),
                black_reference(kTableMarket, K, 1.0), 1e-14);
  }
}

TEST(Hhl, NodeDoublingChangesLittle) {
  const auto m = MarketState::flat(100.0, 0.03, 0.01, 0.25);
  const DividendSchedule s({{0.4, 5.0, 0.02}});
  QuadratureConfig coarse;
  coarse.initial_nodes = 256;
  coarse.tolerance = 1.0;  // stop at the first level
  QuadratureConfig fine = coarse;
  fine.initial_nodes = 512;
  for (double K : {60.0, 100.0, 140.0}) {
    const VanillaOption put(K, 1.0, OptionType::Put);
    EXPECT_LT(std::abs(hhl_price(m, s, put, coarse) - hhl_price(m, s, put, fine)), 1e-10);
  }
}

TEST(Hhl, Validation) {
  EXPECT_THROW(hhl_price(kTableMarket, DividendSchedule({{0.3, 1.0}, {0.6, 1.0}}), VanillaOption(100.0, 1.0)),
               DomainError);
  EXPECT_THROW(hhl_price(kTableMarket, DividendSchedule({{1.0, 1.0}}), VanillaOption(100.0, 1.0)),
               DomainError);
}

TEST(Fdm, MatchesBlackWithoutDividends) {
  for (double K : {50.0, 100.0, 150.0}) {
    for (auto type : {OptionType::Call, OptionType::Put}) {
      const double ref = black_reference(kTableMarket, K, 1.0, type);
      EXPECT_NEAR(fdm_price(kTableMarket, DividendSchedule(), VanillaOption(K, 1.0, type)), ref, 1e-4);
      EXPECT_NEAR(fdm_price(kTableMarket, DividendSchedule(), VanillaOption(K, 1.0, type), fine_grid()), ref,
                  1e-6);
    }
  }
  const auto m = MarketState::flat(100.0, 0.05, 0.02, 0.4);
  EXPECT_NEAR(fdm_price(m, DividendSchedule(), VanillaOption(90.0, 2.0)), black_reference(m, 90.0, 2.0), 1e-4);
}

TEST(Fdm, MatchesHhl) {
  for (double t1 : {0.1, 0.5, 0.9}) {
    const DividendSchedule s({{t1, 7.0}});
    for (double K : {50.0, 100.0, 150.0}) {
      const double ref = hhl_price(kTableMarket, s, VanillaOption(K, 1.0));
      EXPECT_NEAR(fdm_price(kTableMarket, s, VanillaOption(K, 1.0)), ref, 2e-3) << t1 << " " << K;
      EXPECT_NEAR(fdm_price(kTableMarket, s, VanillaOption(K, 1.0), fine_grid()), ref, 1e-4) << t1 << " " << K;
    }
  }
}

TEST(Fdm, NoArbitrageBounds) {
  const auto m = MarketState::flat(100.0, 0.03, 0.0, 0.25);
  const DividendSchedule s({{0.25, 2.0}, {0.5, 2.0, 0.01}, {0.75, 2.0}});
  const double T = 1.0, B = discount_factor(m, T), f = model_forward(m, s, T);
  for (double K : {40.0, 80.0, 100.0, 120.0, 200.0}) {
    const double call = fdm_price(m, s, VanillaOption(K, T));
    const double put = fdm_price(m, s, VanillaOption(K, T, OptionType::Put));
    EXPECT_GE(call, B * std::max(f - K, 0.0) - 1e-6);
    EXPECT_LE(call, B * f);
    EXPECT_GE(put, B * std::max(K - f, 0.0) - 1e-6);
    EXPECT_LE(put, B * K);
    EXPECT_NEAR(call - put, B * (f - K), 2e-3);
  }
}

TEST(Fdm, GocseiStableUnderGridDoubling) {
  const auto scenario = builtin_scenario("gocsei10y");
  FdmConfig coarse = fine_grid();
  coarse.space_steps = 1000;
  coarse.time_steps = 400;
  for (double K : {20.0, 100.0, 180.0}) {
    const VanillaOption option(K, scenario.maturity);
    EXPECT_NEAR(fdm_price(scenario.market, scenario.schedule, option, coarse),
                fdm_price(scenario.market, scenario.schedule, option, fine_grid()), 1e-3)
        << K;
  }
}

TEST(Fdm, ConvergenceReport) {
  FdmConfig base;
  base.space_steps = 100;
  base.time_steps = 25;
  const DividendSchedule s({{0.5, 7.0}});
  const VanillaOption option(100.0, 1.0);
  const auto report = fdm_convergence_report(kTableMarket, s, option, 4, base);
  ASSERT_EQ(report.rows.size(), 4u);
  EXPECT_EQ(report.rows[3].space_steps, 800);
  EXPECT_EQ(report.rows[3].time_steps, 200);
  EXPECT_TRUE(std::isnan(report.rows[0].increment));
  EXPECT_TRUE(report.monotone) << report.warning;
  const double ref = hhl_price(kTableMarket, s, option);
  EXPECT_LT(std::abs(report.extrapolated - ref), std::abs(report.rows[2].price - ref));
}

TEST(Fdm, Validation) {
  FdmConfig coarse;
  coarse.space_steps = 2;
  EXPECT_THROW(fdm_price(kTableMarket, DividendSchedule(), VanillaOption(100.0, 1.0), coarse), DomainError);
  FdmConfig no_time;
  no_time.time_steps = 0;
  EXPECT_THROW(fdm_price(kTableMarket, DividendSchedule(), VanillaOption(100.0, 1.0), no_time), DomainError);
}
