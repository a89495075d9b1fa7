#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace fracdiff {

using real_function = std::function<double(double)>;

// Order nu split as nu = n - mu with n the smallest integer >= nu (n >= 1).
struct fractional_order {
  double nu = 0.0;
  int n = 1;
  double mu = 1.0;

  static fractional_order from(double nu);
};

// Uniformly sampled signal f(x0 + k*delta). When causal, f vanishes below x0.
struct sampled_signal {
  double x0 = 0.0;
  double delta = 1.0;
  std::vector<double> samples;
  bool causal = false;

  double x(std::size_t k) const { return x0 + static_cast<double>(k) * delta; }
  std::size_t size() const { return samples.size(); }
  void validate() const;
};

namespace fracops {

// Riemann-Liouville integral of order mu of x^alpha (mu < 0: derivative).
// alpha <= -1 is rejected unless continuation is requested.
double rl_power(double alpha, double mu, double x, bool continuation = false);

// Weyl integral of order mu of x^alpha; needs alpha + mu < 0 unless
// continuation is requested.
double weyl_power(double alpha, double mu, double x, bool continuation = false);

// Riemann-Liouville integral of f from `lower` to x, by quadrature.
double rl_integral_numeric(const real_function &f, double mu, double x, double lower);

// c_k = (-nu)_k / k!, k = 0 .. count-1.
std::vector<double> gl_coefficients(double nu, std::size_t count);

// delta^-nu * sum_{k<terms} c_k f(x - k delta) at sample index at_index.
// Causal signals cap `terms` at the available history; otherwise a short
// history is a range_error.
double gl_difference(const sampled_signal &signal, double nu, std::size_t at_index, std::size_t terms);

// gl_difference at every index with the full causal history.
sampled_signal gl_transform(const sampled_signal &signal, double nu);

} // namespace fracops
} // namespace fracdiff
