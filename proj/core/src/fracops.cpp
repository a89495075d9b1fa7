#include "fracdiff/fracops.hpp"

#include "fracdiff/errors.hpp"
#include "fracdiff/specfun.hpp"

#include <boost/math/quadrature/tanh_sinh.hpp>

#include <cmath>

namespace fracdiff {

fractional_order fractional_order::from(double nu) {
  if (!std::isfinite(nu))
    throw parameter_error("order must be finite");
  fractional_order o;
  o.nu = nu;
  o.n = std::max(1, static_cast<int>(std::ceil(nu)));
  o.mu = o.n - nu;
  return o;
}

void sampled_signal::validate() const {
  if (!(delta > 0.0) || !std::isfinite(delta))
    throw parameter_error("signal step must be positive");
  if (samples.empty())
    throw parameter_error("signal has no samples");
}

namespace fracops {

namespace {

bool is_pole(double x) { return x <= 0.0 && x == std::round(x); }

} // namespace

double rl_power(double alpha, double mu, double x, bool continuation) {
  if (!(x > 0.0))
    throw parameter_error("rl_power: x must be positive");
  if (alpha <= -1.0 && !continuation)
    throw parameter_error("rl_power: alpha must exceed -1");
  if (is_pole(alpha + 1.0))
    throw pole_error("rl_power: Gamma(alpha + 1) is singular");
  return specfun::gamma(alpha + 1.0) * specfun::reciprocal_gamma(alpha + mu + 1.0) * std::pow(x, alpha + mu);
}

double weyl_power(double alpha, double mu, double x, bool continuation) {
  if (!(x > 0.0))
    throw parameter_error("weyl_power: x must be positive");
  if (alpha + mu >= 0.0 && !continuation)
    throw parameter_error("weyl_power: alpha + mu must be negative");
  if (is_pole(-alpha - mu))
    throw pole_error("weyl_power: Gamma(-alpha - mu) is singular");
  return specfun::gamma(-alpha - mu) * specfun::reciprocal_gamma(-alpha) * std::pow(x, alpha + mu);
}

double rl_integral_numeric(const real_function &f, double mu, double x, double lower) {
  if (!(mu > 0.0))
    throw parameter_error("rl_integral_numeric: mu must be positive");
  if (!(x > lower))
    return 0.0;
  // y = x - t^{1/mu} turns (x-y)^{mu-1} dy into dt / mu
  const double span = std::pow(x - lower, mu);
  const double inv = 1.0 / mu;
  auto g = [&](double t) {
    const double s = std::pow(t, inv);
    return f(std::max(lower, x - s));
  };
  boost::math::quadrature::tanh_sinh<double> ts(15);
  double err = 0.0, l1 = 0.0;
  const double v = ts.integrate(g, 0.0, span, 1e-12, &err, &l1);
  if (!std::isfinite(v) || err > 1e-8 * std::max(l1, 1e-300))
    throw convergence_error("rl_integral_numeric: quadrature did not reach 1e-8");
  return v / specfun::gamma(mu + 1.0);
}

std::vector<double> gl_coefficients(double nu, std::size_t count) {
  std::vector<double> c(count);
  if (count == 0)
    return c;
  c[0] = 1.0;
  for (std::size_t k = 1; k < count; ++k)
    c[k] = c[k - 1] * (static_cast<double>(k) - 1.0 - nu) / static_cast<double>(k);
  return c;
}

double gl_difference(const sampled_signal &signal, double nu, std::size_t at_index, std::size_t terms) {
  signal.validate();
  if (terms < 1)
    throw parameter_error("gl_difference: need at least one term");
  if (at_index >= signal.size())
    throw range_error("gl_difference: index outside the signal");
  if (signal.causal)
    terms = std::min(terms, at_index + 1);
  else if (terms > at_index + 1)
    throw range_error("gl_difference: not enough history for a non-causal signal");
  const auto c = gl_coefficients(nu, terms);
  double s = 0.0;
  for (std::size_t k = 0; k < terms; ++k)
    s += c[k] * signal.samples[at_index - k];
  return s * std::pow(signal.delta, -nu);
}

sampled_signal gl_transform(const sampled_signal &signal, double nu) {
  signal.validate();
  if (!signal.causal)
    throw parameter_error("gl_transform: needs a causal signal");
  const auto c = gl_coefficients(nu, signal.size());
  const double scale = std::pow(signal.delta, -nu);
  sampled_signal out = signal;
  for (std::size_t i = 0; i < signal.size(); ++i) {
    double s = 0.0;
    for (std::size_t k = 0; k <= i; ++k)
      s += c[k] * signal.samples[i - k];
    out.samples[i] = s * scale;
  }
  return out;
}

} // namespace fracops
} // namespace fracdiff
