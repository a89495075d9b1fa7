#include "fracdiff/errors.hpp"
#include "fracdiff/kernels.hpp"
#include "fracdiff/quadrature.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <utility>

using namespace fracdiff;
namespace k = fracdiff::kernels;

namespace {

double decaying(double x) { return std::exp(-x); }

} // namespace

TEST(GaussJacobi, IntegratesPolynomialsExactly) {
  // integral of (1-x)^a (1+x)^b x^2 over [-1, 1] for a = b = 0: 2/3
  const auto &r = quadrature::gauss_legendre(5);
  double s = 0.0;
  for (std::size_t i = 0; i < r.nodes.size(); ++i) s += r.weights[i] * r.nodes[i] * r.nodes[i];
  EXPECT_NEAR(s, 2.0 / 3.0, 1e-15);

  // a = -0.5, b = -0.5: total mass pi
  const auto &c = quadrature::gauss_jacobi(12, -0.5, -0.5);
  double m = 0.0;
  for (double w : c.weights) m += w;
  EXPECT_NEAR(m, M_PI, 1e-14);
}

TEST(JacobiPolynomial, LowDegrees) {
  EXPECT_DOUBLE_EQ(k::jacobi_polynomial(0, 0.3, 1.2, 0.4), 1.0);
  const double a = 0.3, b = 1.2, x = 0.4;
  EXPECT_NEAR(k::jacobi_polynomial(1, a, b, x), (a + 1) + (a + b + 2) * (x - 1) / 2, 1e-15);
  EXPECT_NEAR(k::jacobi_polynomial(2, 0, 0, x), (3 * x * x - 1) / 2, 1e-15);
}

TEST(JacobiParams, Validation) {
  k::jacobi_params p;
  p.nu = 1.5;
  p.n = 1;
  EXPECT_THROW(p.validate(), parameter_error);
  p.n = 2;
  p.delta = -1.0;
  EXPECT_THROW(p.validate(), parameter_error);
  p.delta = 1.0;
  p.alpha = -1.0;
  EXPECT_THROW(p.validate(), parameter_error);
  const auto g = k::gegenbauer_legendre_params(0.5, 2, 1.0, 0.3);
  EXPECT_EQ(g.alpha, 0.0);
  EXPECT_EQ(g.beta, 0.0);
}

TEST(JacobiKernel, VanishesLeftOfWindow) {
  k::jacobi_params p;
  p.nu = 0.6;
  EXPECT_EQ(k::jacobi_kernel(p, -1.5), 0.0);
  EXPECT_TRUE(std::isfinite(k::jacobi_kernel(p, 0.3)));
  EXPECT_TRUE(std::isfinite(k::jacobi_kernel(p, 4.0)));
}

// Right-sided operator on e^{-x}: e^{-x} times the window's smoothing factor
// e^{-delta} M(n+alpha+1, 2n+alpha+beta+2; 2 delta) (symmetric weight).
TEST(ApplyKernel, ExponentialMatchesClosedForm) {
  k::jacobi_params p;
  p.alpha = p.beta = 0.3;
  p.n = 2;
  p.nu = 1.4;
  p.delta = 0.7;
  const auto v = k::apply_kernel(decaying, p, 2.0);
  EXPECT_NEAR(v.value, 0.13975413001850345245, 2e-7 * 0.14);
}

TEST(ApplyKernel, AgreesWithDoubleIntegral) {
  k::jacobi_params p;
  p.alpha = 0.4;
  p.beta = 1.1;
  p.n = 1;
  p.nu = 0.35;
  p.delta = 0.5;
  const double want = k::oracle_double_integral(decaying, p, 0.8);
  EXPECT_NEAR(k::apply_kernel(decaying, p, 0.8).value, want, 1e-10 * std::abs(want));
}

TEST(ApplyKernel, IntegerOrderIsSignedDerivative) {
  k::jacobi_params p;
  p.n = 2;
  p.nu = 2.0;
  p.delta = 0.4;
  auto cubic = [](double x) { return x * x * x; };
  // right-sided: (-1)^2 f'' = 6x; a symmetric weight is also exact one degree up
  EXPECT_NEAR(k::apply_kernel(cubic, p, 1.5).value, 9.0, 1e-10);
  p.n = 3;
  p.nu = 3.0;
  EXPECT_NEAR(k::apply_kernel(cubic, p, 1.5).value, -6.0, 1e-10);
}

TEST(OrthogonalDerivative, ExactOnDegreeN) {
  auto quartic = [](double x) { return 2.0 * std::pow(x, 4) - x + 3.0; };
  for (double delta : {0.3, 1.0, 4.0})
    EXPECT_NEAR(k::orthogonal_derivative(quartic, 4, 0.5, 1.5, delta, 0.7), 48.0, 1e-10 * 48.0) << delta;
}

TEST(LaguerreKernel, ExponentialMatchesClosedForm) {
  // (1 + delta)^{-(n+alpha+1)} e^{-x}
  const auto v = k::apply_laguerre_kernel(decaying, 0.5, 2, 1.3, 0.6, 2.0);
  EXPECT_NEAR(v.value, 0.026121078052471947698, 1e-7 * 0.026);
}

TEST(InterpolantWeights, ReproduceKernelOnLinearData) {
  k::jacobi_params p;
  p.alpha = 0.2;
  p.beta = 0.7;
  p.n = 1;
  p.nu = 0.45;
  p.delta = 0.5;
  const double step = 0.125, x = 1.0, cut_y = 6.0;
  const int cut = static_cast<int>(std::lround(cut_y * p.delta / step));
  auto shape = [&](double y) { return k::jacobi_kernel(p, y); };
  const auto w = k::kernel_interpolant_weights(shape, -1.0, p.nu, p.delta, step, cut, {1.0});
  auto line = [](double t) { return 1.0 + 0.5 * t; };
  double sum = 0.0;
  for (int j = w.first; j < cut; ++j) sum += w.full[j - w.first] * line(x + j * step);
  sum += w.left[cut - w.first] * line(x + cut * step);
  const double want = k::apply_kernel(line, p, x, cut_y).value;
  EXPECT_NEAR(sum, want, 1e-8 * std::max(1.0, std::abs(want)));
}

TEST(InterpolantWeights, SingularEdgesAndInexactSpacing) {
  // step / delta = 0.2 is not exact, so hat edges fall an ulp off -1 and 1
  const double step = 0.01, delta = 0.05;
  const int cut = 12;
  auto line = [](double t) { return 2.0 + 3.0 * t; };
  for (auto [a, b] : {std::pair{-0.9, 0.0}, {0.0, -0.9}, {-0.5, -0.5}}) {
    k::jacobi_params p{a, b, 1, 1.0, delta};
    const auto w = k::kernel_interpolant_weights(
        [&](double anchor, double offset) { return k::jacobi_kernel(p, anchor, offset); }, -1.0, p.nu, delta, step,
        cut, {1.0});
    double sum = 0.0;
    for (int j = w.first; j < cut; ++j) sum += w.full[j - w.first] * line(j * step);
    // integer order: minus the slope
    EXPECT_NEAR(sum, -3.0, 1e-9) << a << " " << b;
  }
  // fractional, right edge exponent -0.8
  k::jacobi_params p{-0.9, 0.0, 1, 0.9, delta};
  const int far = 40;
  const auto w = k::kernel_interpolant_weights(
      [&](double anchor, double offset) { return k::jacobi_kernel(p, anchor, offset); }, -1.0, p.nu, delta, step,
      far, {1.0});
  double sum = 0.0;
  for (int j = w.first; j < far; ++j) sum += w.full[j - w.first] * line(j * step);
  sum += w.left[far - w.first] * line(far * step);
  const double want = k::apply_kernel(line, p, 0.0, far * step / delta).value;
  EXPECT_NEAR(sum, want, 1e-8 * std::abs(want));
}

TEST(JacobiKernel, EdgeOffsetKeepsAlgebraicBehaviour) {
  // K(1 - s) s^{-e} settles to a constant, e = n + alpha - nu, well below
  // the spacing of doubles near 1
  k::jacobi_params p{-0.9, 0.3, 1, 0.9, 1.0};
  const double e = p.n + p.alpha - p.nu;
  const double c = k::jacobi_kernel(p, 1.0, -1e-20) * std::pow(1e-20, -e);
  for (double s : {1e-40, 1e-100, 1e-200})
    EXPECT_NEAR(k::jacobi_kernel(p, 1.0, -s) * std::pow(s, -e), c, 1e-10 * std::abs(c)) << s;
  EXPECT_NEAR(k::jacobi_kernel(p, 1.0, -1e-3), k::jacobi_kernel(p, 1.0 - 1e-3), 1e-12 * std::abs(c) * 1e3);
  // left edge: (1+y)^{n+beta-nu}
  const double e_left = p.n + p.beta - p.nu;
  const double cl = k::jacobi_kernel(p, -1.0, 1e-30) * std::pow(1e-30, -e_left);
  EXPECT_NEAR(k::jacobi_kernel(p, -1.0, 1e-150) * std::pow(1e-150, -e_left), cl, 1e-10 * std::abs(cl));
  // just past the edge, fractional order: (y-1)^e as well
  const double ct = k::jacobi_kernel(p, 1.0, 1e-30) * std::pow(1e-30, -e);
  EXPECT_NEAR(k::jacobi_kernel(p, 1.0, 1e-150) * std::pow(1e-150, -e), ct, 1e-10 * std::abs(ct));
}

TEST(JacobiKernel, ContinuousAcrossRightEdge) {
  // both branches reach the same finite value at y = 1; the jump closes
  // like (1-y)^{n+alpha-nu}
  k::jacobi_params p;
  p.alpha = 0.3;
  p.beta = 0.6;
  p.n = 1;
  p.nu = 0.8;
  const double e = p.n + p.alpha - p.nu;
  auto jump = [&](int j) {
    const double h = std::ldexp(1.0, -j);
    return std::abs(k::jacobi_kernel(p, 1.0 - h) - k::jacobi_kernel(p, 1.0 + h));
  };
  EXPECT_GT(std::abs(k::jacobi_kernel(p, 1.0 - 1e-12)), 0.01);
  for (int j = 10; j <= 30; j += 5) EXPECT_NEAR(jump(j + 1) / jump(j), std::pow(0.5, e), 0.02) << j;
}

TEST(ApplyKernel, IterationLowersDegree) {
  // (alpha, beta, n) and (alpha+1, beta+1, n-1) give the same operator for nu < n-1
  k::jacobi_params hi{0.2, 0.4, 2, 0.5, 0.6}, lo{1.2, 1.4, 1, 0.5, 0.6};
  const double a = k::apply_kernel(decaying, hi, 0.3).value;
  const double b = k::apply_kernel(decaying, lo, 0.3).value;
  EXPECT_NEAR(a, b, 1e-9 * std::abs(a));
}
