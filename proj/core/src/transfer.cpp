#include "fracdiff/transfer.hpp"

#include "fracdiff/errors.hpp"

#include <boost/math/special_functions/gamma.hpp>

#include <charconv>
#include <cmath>
#include <limits>
#include <numbers>

namespace fracdiff::transfer {

namespace sf = specfun;

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

complex power_or_unit(complex z, double nu) {
  if (nu == 0.0)
    return 1.0;
  return sf::complex_power(z, nu);
}

void require_gram(const hahn::hahn_params &p, const char *what) {
  p.validate();
  if (p.n != 1 || p.alpha != 0.0 || p.beta != 0.0)
    throw parameter_error(std::string(what) + ": only n = 1, alpha = beta = 0 is supported");
}

} // namespace

const char *to_string(convention c) { return c == convention::weyl ? "weyl" : "riemann_liouville"; }

complex ideal_transfer(double nu, double omega, convention c) {
  const double s = c == convention::weyl ? 1.0 : -1.0;
  if (omega == 0.0 && nu < 0.0)
    throw parameter_error("ideal_transfer: negative order at zero frequency");
  return power_or_unit(complex(0.0, s * omega), nu);
}

complex jacobi_transfer(const kernels::jacobi_params &p, double omega) {
  p.validate();
  const complex lead = ideal_transfer(p.nu, omega, convention::weyl);
  if (omega == 0.0)
    return lead;
  const double wd = omega * p.delta;
  const int n = p.n;
  const complex m = sf::kummer_m(n + p.alpha + 1.0, 2.0 * n + p.alpha + p.beta + 2.0, complex(0.0, 2.0 * wd));
  return lead * std::exp(complex(0.0, -wd)) * m;
}

complex legendre_transfer(int n, double nu, double delta, double omega) {
  if (n < 0 || !(delta > 0.0))
    throw parameter_error("legendre_transfer: need n >= 0 and delta > 0");
  const complex lead = ideal_transfer(nu, omega, convention::weyl);
  const double wd = omega * delta;
  // Gamma(2n+2) / (2^n n!) = (2n+1)!!
  double dfact = 1.0;
  for (int k = 1; k <= n; ++k)
    dfact *= 2.0 * k + 1.0;
  double shape;
  if (std::abs(wd) < 1e-3) {
    // (2n+1)!! x^-n j_n(x) = 1 - x^2/(2(2n+3)) + x^4/(8(2n+3)(2n+5)) - ...
    const double x2 = wd * wd;
    shape = 1.0 - x2 / (2.0 * (2 * n + 3)) + x2 * x2 / (8.0 * (2 * n + 3) * (2 * n + 5));
  } else {
    shape = dfact * sf::spherical_bessel_j(n, wd) / std::pow(wd, n);
  }
  return lead * shape;
}

complex laguerre_transfer(double alpha, int n, double nu, double delta, double omega) {
  if (!(alpha > -1.0) || n < 1 || !(delta > 0.0))
    throw parameter_error("laguerre_transfer: need alpha > -1, n >= 1, delta > 0");
  const complex lead = ideal_transfer(nu, omega, convention::weyl);
  return lead * std::pow(complex(1.0, omega * delta), -(n + alpha + 1.0));
}

complex gl_transfer(double nu, double delta, double omega) {
  if (!(delta > 0.0))
    throw parameter_error("gl_transfer: delta must be positive");
  const complex z = (1.0 - std::exp(complex(0.0, omega * delta))) / delta;
  if (std::abs(z) == 0.0 && nu < 0.0)
    throw parameter_error("gl_transfer: negative order at a zero of the difference operator");
  if (std::abs(z) == 0.0)
    return nu == 0.0 ? 1.0 : 0.0;
  return power_or_unit(z, nu);
}

complex hahn_transfer(const hahn::hahn_params &p, double omega) {
  p.validate();
  const double a = p.alpha, b = p.beta;
  const int n = p.n, N = p.N;
  const double th = omega * p.delta;
  const double lc = std::lgamma(N + b + 1) + std::lgamma(2 * n + a + b + 2) - std::lgamma(n + b + 1) -
                    std::lgamma(N + n + a + b + 2);
  const complex F = sf::gauss_2f1(n - N, a + n + 1, -b - N, std::exp(complex(0.0, -th)));
  return gl_transfer(p.nu, p.delta, omega) * std::exp(complex(0.0, -n * th)) * std::exp(lc) * F;
}

complex hahn_truncated_transfer(const hahn::hahn_params &p, double omega) {
  require_gram(p, "hahn_truncated_transfer");
  const int N = p.N, M = p.history();
  const double nu = p.nu, th = omega * p.delta;
  // rho(m) = Gamma(m-nu+1)/(Gamma(m) Gamma(2-nu)), kappa(m) = Gamma(m-nu+2)/(Gamma(m) Gamma(3-nu))
  std::complex<long double> s1 = 0, s2 = 0, s3 = 0, s4 = 0;
  long double rho = 1.0L, kappa = 1.0L;
  const int top = M + N + 1;
  for (int m = 1; m <= top; ++m) {
    const complex e = std::exp(complex(0.0, m * th));
    const std::complex<long double> el(e.real(), e.imag());
    s1 += el * rho;
    if (m <= M) {
      s2 += el * rho;
      s4 += el * kappa;
    }
    if (m <= M + N)
      s3 += el * kappa;
    rho *= (m + 1.0L - nu) / m;
    kappa *= (m + 2.0L - nu) / m;
  }
  const complex e1 = std::exp(complex(0.0, -(N + 1.0) * th));
  const complex eN = std::exp(complex(0.0, -static_cast<double>(N) * th));
  auto c = [](std::complex<long double> z) { return complex(static_cast<double>(z.real()), static_cast<double>(z.imag())); };
  const complex bracket = e1 * c(s1) + c(s2) - (2.0 / N) * (eN * c(s3) - c(s4));
  return 6.0 / ((N + 1.0) * (N + 2.0)) * std::pow(p.delta, -nu) * bracket;
}

complex butterworth_fractional_transfer(double nu, int n, double omega0, double omega) {
  if (!(omega0 > 0.0) || n < 0)
    throw parameter_error("butterworth_fractional_transfer: need omega0 > 0 and n >= 0");
  const double r = std::pow(std::abs(omega) / omega0, 2.0 * n);
  return ideal_transfer(nu, omega, convention::riemann_liouville) / (1.0 + r);
}

complex taps_transfer(const hahn::filter_weights &w, double delta, double omega) {
  std::complex<long double> s = 0;
  const double th = omega * delta;
  for (int m = 0; m <= w.lookahead(); ++m) {
    const complex e = std::exp(complex(0.0, -m * th));
    s += static_cast<long double>(w.forward[m]) * std::complex<long double>(e.real(), e.imag());
  }
  for (int m = 1; m <= w.history(); ++m) {
    const complex e = std::exp(complex(0.0, m * th));
    s += static_cast<long double>(w.backward[m - 1]) * std::complex<long double>(e.real(), e.imag());
  }
  return w.prefactor * complex(static_cast<double>(s.real()), static_cast<double>(s.imag()));
}

double hahn_h_zero(int N, double nu, double delta, int M) {
  if (N < 1 || M < 1 || !(delta > 0.0))
    throw parameter_error("hahn_h_zero: need N >= 1, M >= 1, delta > 0");
  using boost::math::tgamma_delta_ratio;
  // A = Gamma(M+N-nu+3)/Gamma(M+N+1), B = Gamma(M-nu+2)/Gamma(M)
  const double A = tgamma_delta_ratio(M + N - nu + 3.0, nu - 2.0);
  const double B = tgamma_delta_ratio(M - nu + 2.0, nu - 2.0);
  const double pre = 6.0 / (static_cast<double>(N) * (N + 1.0) * (N + 2.0)) * sf::reciprocal_gamma(4.0 - nu) *
                     std::pow(delta, -nu);
  return pre * ((N - 2.0 * M - N * nu) * A + ((3.0 - nu) * N + 2.0 * (M - nu + 2.0)) * B);
}

double hahn_omega_max(int N, double nu, double delta) {
  if (N < 1 || !(delta > 0.0))
    throw parameter_error("hahn_omega_max: need N >= 1, delta > 0");
  const double q = 6.0 * N + nu + 6.0 * N * nu + N * N * nu + N * N + 9.0;
  if (nu > 1.0)
    return kNaN;
  return 2.0 * std::sqrt(6.0) * std::sqrt((1.0 - nu) * q) / (delta * q);
}

double jacobi_omega_max(int n, double alpha, double beta, double nu, double delta) {
  if (!(nu > 0.0) || !(delta > 0.0))
    throw parameter_error("jacobi_omega_max: need nu > 0 and delta > 0");
  const double s = 2.0 * n + alpha + beta;
  return 0.5 * (s + 2.0) *
         std::sqrt(nu * (s + 3.0) / ((n + alpha + 1.0) * (n + beta + 1.0) * (1.0 + nu))) / delta;
}

filter_metrics compute_metrics(const hahn::hahn_params &p) {
  require_gram(p, "filter metrics");
  if (!(p.nu > 0.0))
    throw parameter_error("filter metrics: order must be positive");
  filter_metrics r;
  r.h_zero = hahn_h_zero(p.N, p.nu, p.delta, p.history());
  r.omega_lower = std::pow(std::abs(r.h_zero), 1.0 / p.nu);
  r.omega_lower_practical = 10.0 * r.omega_lower;
  r.omega_max = hahn_omega_max(p.N, p.nu, p.delta);
  r.integer_order_edge = p.nu >= 1.0;
  r.bandwidth = r.omega_lower < r.omega_max ? r.omega_max - r.omega_lower : kNaN;

  // locate the modulus peak on (0, pi/delta]
  const double top = std::numbers::pi / p.delta;
  const int scan = 2000;
  auto mod = [&](double w) { return std::abs(hahn_truncated_transfer(p, w)); };
  int best = 1;
  double bv = -1.0;
  for (int k = 1; k <= scan; ++k) {
    const double v = mod(top * k / scan);
    if (v > bv) {
      bv = v;
      best = k;
    }
  }
  double lo = top * (best - 1) / scan, hi = top * std::min(best + 1, scan) / scan;
  if (best == scan) {
    r.omega_peak = top;
    r.peak_modulus = bv;
    return r;
  }
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = hi - g * (hi - lo), x2 = lo + g * (hi - lo);
  double f1 = mod(x1), f2 = mod(x2);
  for (int it = 0; it < 80 && hi - lo > 1e-13 * top; ++it) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + g * (hi - lo);
      f2 = mod(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - g * (hi - lo);
      f1 = mod(x1);
    }
  }
  r.omega_peak = 0.5 * (lo + hi);
  r.peak_modulus = mod(r.omega_peak);
  return r;
}

frequency_grid make_grid(double lo, double hi, int count, spacing kind) {
  if (!(lo > 0.0) || !(hi > lo) || !std::isfinite(hi))
    throw parameter_error("frequency grid: need 0 < lo < hi");
  if (count < 2)
    throw parameter_error("frequency grid: need at least two points");
  frequency_grid g;
  g.kind = kind;
  g.points.resize(count);
  for (int k = 0; k < count; ++k) {
    const double t = static_cast<double>(k) / (count - 1);
    g.points[k] = kind == spacing::logarithmic ? lo * std::pow(hi / lo, t) : lo + (hi - lo) * t;
  }
  g.points.front() = lo;
  g.points.back() = hi;
  for (int k = 1; k < count; ++k)
    if (!(g.points[k] > g.points[k - 1]))
      throw parameter_error("frequency grid: points are not strictly increasing");
  return g;
}

frequency_grid parse_grid(const std::string &spec) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = spec.find(':', start);
    parts.push_back(spec.substr(start, pos - start));
    if (pos == std::string::npos)
      break;
    start = pos + 1;
  }
  if (parts.size() != 4)
    throw parameter_error("grid must look like lo:hi:points:log|lin");
  auto num = [](const std::string &s) {
    double v = 0.0;
    const auto r = std::from_chars(s.data(), s.data() + s.size(), v);
    if (r.ec != std::errc() || r.ptr != s.data() + s.size())
      throw parameter_error("grid: bad number '" + s + "'");
    return v;
  };
  int count = 0;
  const auto r = std::from_chars(parts[2].data(), parts[2].data() + parts[2].size(), count);
  if (r.ec != std::errc() || r.ptr != parts[2].data() + parts[2].size())
    throw parameter_error("grid: bad point count '" + parts[2] + "'");
  spacing kind;
  if (parts[3] == "log")
    kind = spacing::logarithmic;
  else if (parts[3] == "lin")
    kind = spacing::linear;
  else
    throw parameter_error("grid: spacing must be log or lin");
  return make_grid(num(parts[0]), num(parts[1]), count, kind);
}

std::vector<transfer_sample> sweep(const transfer_function &h, const frequency_grid &grid) {
  std::vector<transfer_sample> out(grid.points.size());
  for (std::size_t k = 0; k < grid.points.size(); ++k) {
    out[k].omega = grid.points[k];
    try {
      out[k].value = h(grid.points[k]);
      out[k].valid = std::isfinite(out[k].value.real()) && std::isfinite(out[k].value.imag());
    } catch (const numeric_error &) {
      out[k].value = complex(kNaN, kNaN);
      out[k].valid = false;
    }
  }
  return out;
}

double slope_fit(const std::vector<transfer_sample> &samples, double lo, double hi) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int cnt = 0;
  for (const auto &s : samples) {
    if (!s.valid || s.omega < lo || s.omega > hi)
      continue;
    const double m = std::abs(s.value);
    if (!(m > 0.0))
      continue;
    const double x = std::log10(s.omega), y = std::log10(m);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++cnt;
  }
  if (cnt < 2)
    throw parameter_error("slope_fit: fewer than two usable points in the window");
  const double d = cnt * sxx - sx * sx;
  if (d == 0.0)
    throw parameter_error("slope_fit: degenerate window");
  return (cnt * sxy - sx * sy) / d;
}

double slope_fit(const std::vector<transfer_sample> &samples) {
  if (samples.empty())
    throw parameter_error("slope_fit: no samples");
  const double lo = samples.front().omega;
  return slope_fit(samples, lo, 10.0 * lo * (1.0 + 1e-12));
}

} // namespace fracdiff::transfer
