#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "divexp/sums.hpp"

using divexp::symmetric_double_sum;
using divexp::symmetric_triple_sum;

namespace {

struct Terms {
  std::vector<double> coef;
  std::vector<double> residual;
};

Terms random_terms(std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> c(-3.0, 3.0), s(0.0, 0.5);
  Terms t;
  for (std::size_t i = 0; i < n; ++i) {
    t.coef.push_back(c(rng));
    t.residual.push_back(s(rng));
  }
  // Ties are common in practice (near and far lumps, equal ex-dates).
  if (n > 3) t.residual[2] = t.residual[1];
  return t;
}

double kernel2(double S, double p) { return std::exp(p - 0.5 * (0.3 + 2.0 * S) * (0.3 + 2.0 * S)); }
double kernel3(double S, double p) {
  const double x = -0.2 + 1.7 * S;
  return std::exp(p - 0.5 * x * x) * (x / 0.4 - 1.0);
}

double naive_double(const Terms& t) {
  double sum = 0.0;
  for (std::size_t i = 0; i < t.coef.size(); ++i)
    for (std::size_t j = 0; j < t.coef.size(); ++j)
      sum += t.coef[i] * t.coef[j] *
             kernel2(t.residual[i] + t.residual[j], std::min(t.residual[i], t.residual[j]));
  return sum;
}

double naive_triple(const Terms& t) {
  const auto& s = t.residual;
  double sum = 0.0;
  const std::size_t n = t.coef.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t l = 0; l < n; ++l)
        sum += t.coef[i] * t.coef[j] * t.coef[l] *
               kernel3(s[i] + s[j] + s[l],
                       std::min(s[i], s[j]) + std::min(s[i], s[l]) + std::min(s[j], s[l]));
  return sum;
}

double scale(const Terms& t, int power) {
  double a = 0.0;
  for (double c : t.coef) a += std::abs(c);
  return std::pow(std::max(a, 1.0), power);
}

}  // namespace

class SumSizes : public ::testing::TestWithParam<std::size_t> {};

TEST_P(SumSizes, DoubleSumMatchesNaive) {
  std::mt19937_64 rng(GetParam());
  for (int trial = 0; trial < 5; ++trial) {
    const auto t = random_terms(GetParam(), rng);
    EXPECT_NEAR(symmetric_double_sum(t.coef, t.residual, kernel2), naive_double(t),
                1e-13 * scale(t, 2));
  }
}

TEST_P(SumSizes, TripleSumMatchesNaive) {
  std::mt19937_64 rng(100 + GetParam());
  const int trials = GetParam() > 20 ? 1 : 5;
  for (int trial = 0; trial < trials; ++trial) {
    const auto t = random_terms(GetParam(), rng);
    EXPECT_NEAR(symmetric_triple_sum(t.coef, t.residual, kernel3), naive_triple(t),
                1e-13 * scale(t, 3));
  }
}

INSTANTIATE_TEST_SUITE_P(Sizes, SumSizes, ::testing::Values(1, 2, 5, 20, 100));

TEST(Sums, Empty) {
  const std::vector<double> none;
  EXPECT_EQ(symmetric_double_sum(none, none, kernel2), 0.0);
  EXPECT_EQ(symmetric_triple_sum(none, none, kernel3), 0.0);
}

TEST(Sums, PairOverlapIsLaterDate) {
  // min of residual variances is the residual at the later of the two dates.
  const std::vector<double> coef{1.0, 1.0};
  const std::vector<double> residual{0.09, 0.03};  // dates t=0.0 and t=2/3 with v_T^2 = 0.09
  double seen_overlap = -1.0;
  symmetric_double_sum(coef, residual, [&](double S, double p) {
    if (std::abs(S - 0.12) < 1e-15) seen_overlap = p;
    return 0.0;
  });
  EXPECT_DOUBLE_EQ(seen_overlap, 0.03);
}

TEST(Sums, KernelOfOneCountsTuples) {
  std::mt19937_64 rng(7);
  const auto t = random_terms(9, rng);
  double total = 0.0;
  for (double c : t.coef) total += c;
  const auto one = [](double, double) { return 1.0; };
  EXPECT_NEAR(symmetric_double_sum(t.coef, t.residual, one), total * total, 1e-12);
  EXPECT_NEAR(symmetric_triple_sum(t.coef, t.residual, one), total * total * total, 1e-11);
}

TEST(Sums, AntisymmetricCoefficientsCancel) {
  // sum (1 + w_i - w_j) c_i c_j u_ij with symmetric u equals the plain contraction.
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> w(0.0, 1.0);
  for (std::size_t n : {1u, 2u, 5u, 20u, 100u}) {
    const auto t = random_terms(n, rng);
    std::vector<double> weight(n);
    for (auto& x : weight) x = w(rng);
    double weighted = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        weighted += (1.0 + weight[i] - weight[j]) * t.coef[i] * t.coef[j] *
                    kernel2(t.residual[i] + t.residual[j], std::min(t.residual[i], t.residual[j]));
    EXPECT_NEAR(weighted, symmetric_double_sum(t.coef, t.residual, kernel2), 1e-13 * scale(t, 2));
  }
}
