#include "fracdiff/quadrature.hpp"

#include "fracdiff/errors.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <tuple>

namespace fracdiff::quadrature {

namespace {

// Golub-Welsch on the monic Jacobi recurrence.
rule build_gauss_jacobi(int m, double a, double b) {
  Eigen::VectorXd diag(m), sub(m > 1 ? m - 1 : 1);
  const double ab = a + b;
  for (int k = 0; k < m; ++k) {
    if (k == 0) {
      diag(k) = (b - a) / (ab + 2.0);
    } else {
      const double t = 2.0 * k + ab;
      diag(k) = (b * b - a * a) / (t * (t + 2.0));
    }
  }
  for (int k = 1; k < m; ++k) {
    const double t = 2.0 * k + ab;
    double b2;
    if (k == 1)
      b2 = 4.0 * (1.0 + a) * (1.0 + b) / ((2.0 + ab) * (2.0 + ab) * (3.0 + ab));
    else
      b2 = 4.0 * k * (k + a) * (k + b) * (k + ab) / (t * t * (t + 1.0) * (t - 1.0));
    sub(k - 1) = std::sqrt(b2);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(diag, sub.head(m - 1), Eigen::ComputeEigenvectors);
  if (es.info() != Eigen::Success)
    throw numeric_error("gauss_jacobi: eigen-solve failed");
  rule r;
  r.nodes.resize(m);
  r.weights.resize(m);
  // Newton polish in long double; weights from the derivative formula
  using ld = long double;
  const ld la = a, lb = b, lab = ab;
  auto eval = [&](ld x, ld &pm, ld &dpm) {
    ld p0 = 1.0L, p1 = 0.5L * (la - lb) + 0.5L * (lab + 2.0L) * x;
    if (m == 1) {
      pm = p1;
      p1 = p0;
    } else {
      for (int k = 2; k <= m; ++k) {
        const ld t = 2.0L * k + lab;
        const ld p2 = ((t - 1.0L) * (t * (t - 2.0L) * x + la * la - lb * lb) * p1 -
                       2.0L * (k + la - 1.0L) * (k + lb - 1.0L) * t * p0) /
                      (2.0L * k * (k + lab) * (t - 2.0L));
        p0 = p1;
        p1 = p2;
      }
      pm = p1;
      p1 = p0;
    }
    const ld t = 2.0L * m + lab;
    dpm = (m * ((la - lb) - t * x) * pm + 2.0L * (m + la) * (m + lb) * p1) / (t * (1.0L - x * x));
  };
  const ld lnc = (lab + 1.0L) * std::log(2.0L) + std::lgamma(m + la + 1.0L) + std::lgamma(m + lb + 1.0L) -
                 std::lgamma(m + lab + 1.0L) - std::lgamma(m + 1.0L);
  for (int i = 0; i < m; ++i) {
    ld x = es.eigenvalues()(i), pm = 0, dpm = 0;
    for (int it = 0; it < 3; ++it) {
      eval(x, pm, dpm);
      x -= pm / dpm;
    }
    eval(x, pm, dpm);
    r.nodes[i] = static_cast<double>(x);
    r.weights[i] = static_cast<double>(std::exp(lnc) / ((1.0L - x * x) * dpm * dpm));
  }
  return r;
}

std::mutex cache_mutex;
std::map<std::tuple<int, double, double>, std::unique_ptr<rule>> cache;

} // namespace

const rule &gauss_jacobi(int points, double alpha, double beta) {
  if (points < 1)
    throw parameter_error("gauss_jacobi: need at least one point");
  if (!(alpha > -1.0) || !(beta > -1.0))
    throw parameter_error("gauss_jacobi: exponents must exceed -1");
  std::lock_guard<std::mutex> lock(cache_mutex);
  auto key = std::make_tuple(points, alpha, beta);
  auto it = cache.find(key);
  if (it != cache.end())
    return *it->second;
  auto r = std::make_unique<rule>(build_gauss_jacobi(points, alpha, beta));
  const rule &ref = *r;
  cache.emplace(key, std::move(r));
  return ref;
}

const rule &gauss_legendre(int points) { return gauss_jacobi(points, 0.0, 0.0); }

} // namespace fracdiff::quadrature
