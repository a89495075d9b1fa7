#include "fracdiff/errors.hpp"
#include "fracdiff/fracops.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace fracdiff;

TEST(FractionalOrder, SplitsIntoCeilingAndRemainder) {
  auto o = fractional_order::from(0.3);
  EXPECT_EQ(o.n, 1);
  EXPECT_NEAR(o.mu, 0.7, 1e-15);
  o = fractional_order::from(2.0);
  EXPECT_EQ(o.n, 2);
  EXPECT_EQ(o.mu, 0.0);
}

// Reference values from mpmath.
TEST(PowerRules, RiemannLiouvilleAndWeyl) {
  EXPECT_NEAR(fracops::rl_power(0.5, 0.3, 2.0), 1.6566862623107839028, 1e-14);
  EXPECT_NEAR(fracops::rl_power(2.5, -0.5, 2.0), 6.6467019408956851024, 1e-13);
  EXPECT_NEAR(fracops::weyl_power(-2.0, 0.5, 3.0), 0.17055445132441474808, 1e-15);
}

TEST(PowerRules, DerivativeOfConstantVanishesOnlyAtIntegerOrder) {
  EXPECT_EQ(fracops::rl_power(0.0, -1.0, 2.0), 0.0);
  EXPECT_GT(std::abs(fracops::rl_power(0.0, -0.5, 2.0)), 0.1);
}

TEST(PowerRules, DomainChecks) {
  EXPECT_THROW(fracops::rl_power(-1.5, 0.3, 1.0), parameter_error);
  EXPECT_NO_THROW(fracops::rl_power(-1.5, 0.3, 1.0, true));
  EXPECT_THROW(fracops::weyl_power(-1.0, 1.5, 1.0), parameter_error);
}

TEST(RlIntegralNumeric, MatchesReference) {
  auto e = [](double t) { return std::exp(t); };
  EXPECT_NEAR(fracops::rl_integral_numeric(e, 0.4, 1.3, 0.0), 3.3769192699483799759, 1e-10);
  auto s = [](double t) { return std::sin(3.0 * t); };
  EXPECT_NEAR(fracops::rl_integral_numeric(s, 0.75, 1.3, -1.0), -0.037566531458366131715, 1e-10);
}

TEST(RlIntegralNumeric, AgreesWithPowerRule) {
  auto p = [](double t) { return std::pow(t, 1.5); };
  EXPECT_NEAR(fracops::rl_integral_numeric(p, 0.6, 2.0, 0.0), fracops::rl_power(1.5, 0.6, 2.0), 1e-10);
}

TEST(GrunwaldLetnikov, CoefficientsAreBinomial) {
  const double want[] = {1.0, -0.6, -0.12, -0.056, -0.0336};
  const auto c = fracops::gl_coefficients(0.6, 5);
  ASSERT_EQ(c.size(), 5u);
  for (int k = 0; k < 5; ++k) EXPECT_NEAR(c[k], want[k], 1e-16);
  const auto one = fracops::gl_coefficients(1.0, 4);
  EXPECT_EQ(one[1], -1.0);
  EXPECT_EQ(one[2], 0.0);
  EXPECT_EQ(one[3], 0.0);
}

TEST(GrunwaldLetnikov, SecondDifferenceOfQuadratic) {
  sampled_signal s;
  s.delta = 0.1;
  for (int k = 0; k < 20; ++k) s.samples.push_back(std::pow(s.x(k), 2));
  EXPECT_NEAR(fracops::gl_difference(s, 2.0, 10, 3), 2.0, 1e-11);
}

TEST(GrunwaldLetnikov, ConvergesFirstOrderOnPower) {
  // causal x^2 from 0; exact D^0.5 at x = 1 is Gamma(3)/Gamma(2.5)
  const double exact = fracops::rl_power(2.0, -0.5, 1.0);
  double prev = 0.0;
  for (int k : {100, 200, 400}) {
    sampled_signal s;
    s.delta = 1.0 / k;
    s.causal = true;
    for (int j = 0; j <= k; ++j) s.samples.push_back(std::pow(s.x(j), 2));
    const double err = std::abs(fracops::gl_difference(s, 0.5, k, k + 1) - exact);
    if (prev > 0.0) EXPECT_GE(prev / err, 2.0 / 1.2);
    prev = err;
  }
}

TEST(GrunwaldLetnikov, HistoryAndIndexChecks) {
  sampled_signal s;
  s.samples.assign(5, 1.0);
  EXPECT_THROW(fracops::gl_difference(s, 0.5, 2, 4), range_error);
  EXPECT_THROW(fracops::gl_difference(s, 0.5, 7, 1), range_error);
  s.causal = true;
  EXPECT_NO_THROW(fracops::gl_difference(s, 0.5, 2, 4));
}

TEST(GrunwaldLetnikov, TransformMatchesPointwise) {
  sampled_signal s;
  s.delta = 0.05;
  s.causal = true;
  for (int k = 0; k < 30; ++k) s.samples.push_back(std::sin(s.x(k)));
  const auto t = fracops::gl_transform(s, 0.4);
  ASSERT_EQ(t.size(), s.size());
  for (std::size_t k = 0; k < s.size(); ++k)
    EXPECT_DOUBLE_EQ(t.samples[k], fracops::gl_difference(s, 0.4, k, k + 1));
}

TEST(SampledSignal, ValidateRejectsBadSpacing) {
  sampled_signal s;
  s.samples = {1.0, 2.0};
  s.delta = 0.0;
  EXPECT_THROW(s.validate(), parameter_error);
}

TEST(GrunwaldLetnikov, SummationSemigroup) {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> u(-1.0, 1.0), ord(0.1, 1.5);
  for (int trial = 0; trial < 20; ++trial) {
    sampled_signal s;
    s.delta = 0.05 + 0.5 * (u(rng) + 1.0);
    s.causal = true;
    const int len = 2 + static_cast<int>(31 * (u(rng) + 1.0));
    for (int k = 0; k < len; ++k) s.samples.push_back(u(rng));
    const double mu = ord(rng), nu = ord(rng);
    const auto twice = fracops::gl_transform(fracops::gl_transform(s, -mu), -nu);
    const auto once = fracops::gl_transform(s, -(mu + nu));
    double scale = 0.0;
    for (double v : once.samples) scale = std::max(scale, std::abs(v));
    for (int k = 0; k < len; ++k) EXPECT_NEAR(twice.samples[k], once.samples[k], 1e-12 * scale);
  }
}

TEST(GrunwaldLetnikov, CoefficientPartialSums) {
  // sum_{k<=K} (-nu)_k / k! = (1-nu)_K / K!
  for (double nu : {0.1, 0.5, 0.99, 1.3, 1.9}) {
    const auto c = fracops::gl_coefficients(nu, 201);
    long double sum = 0.0L, closed = 1.0L;
    for (int K = 0; K <= 200; ++K) {
      sum += c[K];
      if (K > 0) closed *= (K - nu) / K;
      EXPECT_NEAR(static_cast<double>(sum), static_cast<double>(closed), 1e-13 * std::max(1.0L, std::abs(closed)))
          << nu << " " << K;
    }
  }
}

TEST(RlIntegralNumeric, PowerRuleGrid) {
  for (double alpha : {0.0, 0.5, 1.0, 2.0})
    for (double mu : {0.25, 0.5, 1.5})
      for (double x : {0.5, 1.0, 3.0}) {
        auto f = [alpha](double t) { return std::pow(t, alpha); };
        const double want = fracops::rl_power(alpha, mu, x);
        EXPECT_NEAR(fracops::rl_integral_numeric(f, mu, x, 0.0), want, 1e-7 * std::abs(want))
            << alpha << " " << mu << " " << x;
      }
}
