#include "fracdiff/kernels.hpp"

#include "fracdiff/errors.hpp"
#include "fracdiff/quadrature.hpp"
#include "fracdiff/specfun.hpp"

#include <boost/math/quadrature/tanh_sinh.hpp>

#include <algorithm>
#include <cmath>
#include <limits>

namespace fracdiff::kernels {

namespace sf = specfun;

namespace {

constexpr double kEdge = 8e-16;   // closest approach to y = +-1
constexpr double kTiny = 1e-300;

bool is_integer(double x) { return x == std::round(x); }

// 2F1(a, b; c; 1 - omz) for 0 < omz <= 1/2 by the connection to 1 - z, so
// the (1-z)^{c-a-b} part is resolved however close z is to 1.
double gauss_2f1_near_one(double a, double b, double c, double omz) {
  const double s = c - a - b;
  if (std::abs(s - std::round(s)) < 1e-3) // logarithmic case
    return sf::gauss_2f1(a, b, c, std::min(1.0 - omz, 1.0 - 0.5 * kEdge)).real();
  const double g = sf::gamma(c);
  double out = 0.0;
  const double r1 = sf::reciprocal_gamma(c - a) * sf::reciprocal_gamma(c - b);
  if (r1 != 0.0)
    out += g * sf::gamma(s) * r1 * sf::gauss_2f1(a, b, 1.0 - s, omz).real();
  const double r2 = sf::reciprocal_gamma(a) * sf::reciprocal_gamma(b);
  if (r2 != 0.0)
    out += g * sf::gamma(-s) * r2 * std::pow(omz, s) * sf::gauss_2f1(c - a, c - b, 1.0 + s, omz).real();
  return out;
}

// onep = 1 + y and onem = 1 - y, both passed in so neither edge loses digits
double interior_kernel(const jacobi_params &p, double onep, double onem) {
  const double a = p.alpha, b = p.beta, nu = p.nu;
  const int n = p.n;
  onep = std::max(onep, kTiny);
  // C 2^{n+alpha-nu} of the weighted form, after Euler's transformation
  const double pre = sf::gamma(2 * n + a + b + 2) * sf::reciprocal_gamma(n + a + 1) *
                     sf::reciprocal_gamma(n - nu + b + 1) / std::pow(2.0, n + b + 1);
  const double A = n + b + 1, B = -n - a, C = n - nu + b + 1;
  const double F = onem < 1.0 ? gauss_2f1_near_one(A, B, C, 0.5 * onem)
                              : sf::gauss_2f1(A, B, C, 0.5 * onep).real();
  return pre * std::pow(onep, n + b - nu) * F;
}

// ym1 = y - 1 > 0
double tail_kernel(const jacobi_params &p, double ym1) {
  const double r = sf::reciprocal_gamma(-p.nu);
  if (r == 0.0)
    return 0.0;
  const double a = p.alpha, b = p.beta;
  const int n = p.n;
  const double yp1 = 2.0 + ym1;
  const double A = p.nu + 1, B = n + b + 1, C = 2 * n + a + b + 2;
  const double omz = ym1 / yp1; // 1 - 2/(1+y)
  const double F = omz <= 0.5 ? gauss_2f1_near_one(A, B, C, omz) : sf::gauss_2f1(A, B, C, 2.0 / yp1).real();
  return r * std::pow(yp1, -p.nu - 1.0) * F;
}

template <class F>
double integrate_finite(F f, double lo, double hi, double tol, const char *what) {
  boost::math::quadrature::tanh_sinh<double> ts(15);
  double err = 0.0, l1 = 0.0;
  const double v = ts.integrate(f, lo, hi, tol, &err, &l1);
  if (!std::isfinite(v) || err > std::max(1e-7 * l1, 1e-300))
    throw convergence_error(std::string(what) + ": quadrature did not converge");
  return v;
}

// Integral over (-1, 1) of g(onep, onem), onep = 1 + z and onem = 1 - z
// both exact near their own edge.
template <class G>
double integrate_canonical(G g, double tol, const char *what) {
  boost::math::quadrature::tanh_sinh<double> ts(15);
  // zc is -(1 + z) left of 0 and 1 - z right of it
  auto h = [&](double z, double zc) { return z < 0.0 ? g(-zc, 1.0 - z) : g(1.0 + z, zc); };
  double err = 0.0, l1 = 0.0;
  const double v = ts.integrate(h, tol, &err, &l1);
  if (!std::isfinite(v) || err > std::max(1e-7 * l1, 1e-300))
    throw convergence_error(std::string(what) + ": quadrature did not converge");
  return v;
}

// Integral of g(y, y - 1) over (1, Y) after y = e^u; g may be algebraic at 1.
template <class G>
double integrate_tail(G g, double Y, const char *what) {
  auto h = [&](double u) {
    const double ym1 = std::max(std::expm1(u), kTiny);
    return g(1.0 + ym1, ym1) * (1.0 + ym1);
  };
  return integrate_finite(h, 0.0, std::log(Y), 1e-12, what);
}

// Tail cutoff search. `bound(Y)` estimates the neglected part beyond Y.
template <class B>
double choose_cutoff(B bound, double reference, double &estimate) {
  double Y = 64.0;
  double b = bound(Y);
  int rising = 0;
  while (b > 1e-8 * std::max(std::abs(reference), 1e-300) && Y < 1e12) {
    const double next = bound(4.0 * Y);
    if (next >= b && b > 0.0) {
      if (++rising == 2)
        throw parameter_error("apply_kernel: tail contributions do not decay; f grows too fast");
    } else {
      rising = 0;
    }
    Y *= 4.0;
    b = next;
  }
  estimate = b;
  return Y;
}

double max_abs_f(const real_function &f, double x, double delta, double Y) {
  double m = 0.0;
  for (double s : {0.5, 0.75, 1.0})
    m = std::max(m, std::abs(f(x + delta * s * Y)));
  return m;
}

} // namespace

void jacobi_params::validate() const {
  if (!(alpha > -1.0) || !(beta > -1.0))
    throw parameter_error("jacobi kernel: alpha and beta must exceed -1");
  if (n < 1)
    throw parameter_error("jacobi kernel: n must be at least 1");
  if (!std::isfinite(nu) || nu > n)
    throw parameter_error("jacobi kernel: order must satisfy nu <= n");
  if (!(delta > 0.0) || !std::isfinite(delta))
    throw parameter_error("jacobi kernel: delta must be positive");
}

double hn_over_kn(double alpha, double beta, int n) {
  return std::pow(2.0, n + alpha + beta + 1) * sf::gamma(n + alpha + 1) * sf::gamma(n + beta + 1) *
         sf::reciprocal_gamma(2 * n + alpha + beta + 2);
}

double jacobi_polynomial(int n, double a, double b, double x) {
  if (n < 0)
    throw parameter_error("jacobi_polynomial: negative degree");
  if (n == 0)
    return 1.0;
  double pm = 1.0;
  double p = (a + 1.0) + 0.5 * (a + b + 2.0) * (x - 1.0);
  for (int k = 1; k < n; ++k) {
    const double t = 2.0 * k + a + b;
    const double next = ((t + 1.0) * ((t + 2.0) * t * x + a * a - b * b) * p -
                         2.0 * (k + a) * (k + b) * (t + 2.0) * pm) /
                        (2.0 * (k + 1) * (k + a + b + 1) * t);
    pm = p;
    p = next;
  }
  return p;
}

double jacobi_kernel(const jacobi_params &p, double y) { return jacobi_kernel(p, y, 0.0); }

double jacobi_kernel(const jacobi_params &p, double anchor, double offset) {
  p.validate();
  const double onep = (1.0 + anchor) + offset, onem = (1.0 - anchor) - offset;
  if (onep < 0.0)
    return 0.0;
  if (onem == 0.0 && p.n + p.alpha - p.nu < 0.0)
    return std::numeric_limits<double>::infinity();
  if (onem >= 0.0)
    return interior_kernel(p, onep, std::max(onem, kTiny));
  return tail_kernel(p, -onem);
}

jacobi_params gegenbauer_legendre_params(double alpha_g, int n, double nu, double delta) {
  if (!(alpha_g > -0.5))
    throw parameter_error("gegenbauer parameter must exceed -1/2");
  jacobi_params p{alpha_g - 0.5, alpha_g - 0.5, n, nu, delta};
  p.validate();
  return p;
}

double laguerre_kernel(double alpha, int n, double nu, double y) {
  if (!(alpha > -1.0) || n < 1 || nu > n)
    throw parameter_error("laguerre kernel: need alpha > -1, n >= 1, nu <= n");
  if (y < 0.0)
    throw parameter_error("laguerre kernel: y must be nonnegative");
  const double b = n - nu + alpha + 1.0;
  const double rb = sf::reciprocal_gamma(b);
  if (y == 0.0)
    return b > 1.0 ? 0.0 : (b == 1.0 ? rb : std::numeric_limits<double>::infinity());
  const double ra = sf::reciprocal_gamma(-nu);
  if (y > 200.0 && ra != 0.0) {
    // e^{-y} M(-nu; b; y) ~ Gamma(b)/Gamma(-nu) y^{-nu-b} sum_s (b+nu)_s (1+nu)_s / (s! y^s)
    long double term = 1.0L, sum = 1.0L;
    for (int s = 0; s < 200; ++s) {
      term *= (b + nu + s) * (1.0L + nu + s) / ((s + 1.0L) * y);
      sum += term;
      if (std::abs(term) < 1e-18L * std::abs(sum))
        break;
    }
    return ra * std::pow(y, -nu - 1.0) * static_cast<double>(sum);
  }
  return rb * std::pow(y, b - 1.0) * std::exp(-y) * sf::kummer_m(-nu, b, y).real();
}

kernel_value apply_kernel(const real_function &f, const jacobi_params &p, double x, double tail_cutoff) {
  p.validate();
  const double scale = std::pow(p.delta, -p.nu);
  // integer order >= 1: no tail and the kernel annihilates constants
  const bool no_tail = sf::reciprocal_gamma(-p.nu) == 0.0;
  const double f0 = no_tail && p.nu >= 1.0 ? f(x) : 0.0;
  auto g_int = [&](double onep, double onem) {
    const double y = onep <= 1.0 ? onep - 1.0 : 1.0 - onem;
    return (f(x + p.delta * y) - f0) * interior_kernel(p, onep, std::max(onem, kTiny));
  };
  const double interior = integrate_canonical(g_int, 1e-13, "apply_kernel");

  kernel_value out;
  out.tail_cutoff = 1.0;
  if (no_tail) {
    out.value = scale * interior;
    return out;
  }
  auto bound = [&](double Y) {
    return std::abs(tail_kernel(p, Y - 1.0)) * max_abs_f(f, x, p.delta, Y) * (1.0 + Y) / std::abs(p.nu);
  };
  double estimate = 0.0;
  double Y = tail_cutoff;
  if (Y > 1.0)
    estimate = bound(Y);
  else
    Y = choose_cutoff(bound, interior, estimate);
  auto g_tail = [&](double y, double ym1) { return f(x + p.delta * y) * tail_kernel(p, ym1); };
  const double tail = integrate_tail(g_tail, Y, "apply_kernel");
  out.value = scale * (interior + tail);
  out.tail_bound = scale * estimate;
  out.tail_cutoff = Y;
  return out;
}

kernel_value apply_laguerre_kernel(const real_function &f, double alpha, int n, double nu, double delta, double x,
                                   double tail_cutoff) {
  if (!(delta > 0.0))
    throw parameter_error("apply_laguerre_kernel: delta must be positive");
  const double scale = std::pow(delta, -nu);
  auto k = [&](double y) { return laguerre_kernel(alpha, n, nu, y); };
  auto g_head = [&](double y) { return f(x + delta * y) * k(std::max(y, kTiny)); };
  const double head = integrate_finite(g_head, 0.0, 1.0, 1e-13, "apply_laguerre_kernel");
  auto bound = [&](double Y) {
    const double d = is_integer(nu) ? 1.0 : std::abs(nu);
    return std::abs(k(Y)) * max_abs_f(f, x, delta, Y) * (1.0 + Y) / d;
  };
  double estimate = 0.0;
  double Y = tail_cutoff;
  if (Y > 1.0)
    estimate = bound(Y);
  else
    Y = choose_cutoff(bound, head, estimate);
  auto g_tail = [&](double y, double) { return f(x + delta * y) * k(y); };
  const double tail = integrate_tail(g_tail, Y, "apply_laguerre_kernel");
  kernel_value out;
  out.value = scale * (head + tail);
  out.tail_bound = scale * estimate;
  out.tail_cutoff = Y;
  return out;
}

interpolant_weights kernel_interpolant_weights(const edge_function &shape, double support_start, double nu,
                                               double delta, double step, int last,
                                               const std::vector<double> &breaks) {
  if (!(delta > 0.0) || !(step > 0.0))
    throw parameter_error("kernel_interpolant_weights: delta and step must be positive");
  const double r = step / delta; // hat spacing in y
  interpolant_weights out;
  out.first = static_cast<int>(std::floor(support_start / r - 1.0)) + 1;
  if (last < out.first)
    throw parameter_error("kernel_interpolant_weights: last offset precedes the support");
  const double scale = std::pow(delta, -nu);
  boost::math::quadrature::tanh_sinh<double> ts(12);

  // integral of K(y) * hat over [a, b], hat linear with value 0 at `zero`
  // and 1 at `peak`; split at the break points
  auto piece = [&](double a, double b, double zero, double peak) {
    a = std::max(a, support_start);
    // hat edges a few ulps off a break would leave a sliver tanh-sinh cannot take
    std::vector<double> snaps{support_start};
    snaps.insert(snaps.end(), breaks.begin(), breaks.end());
    for (double c : snaps) {
      const double near = 64.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(c));
      if (std::abs(a - c) < near)
        a = c;
      if (std::abs(b - c) < near)
        b = c;
    }
    if (!(b > a))
      return 0.0;
    std::vector<double> cuts{a};
    for (double c : breaks)
      if (c > a && c < b)
        cuts.push_back(c);
    cuts.push_back(b);
    double total = 0.0;
    for (std::size_t j = 0; j + 1 < cuts.size(); ++j) {
      const double lo = cuts[j], hi = cuts[j + 1], half = 0.5 * (hi - lo);
      // canonical form: -half * zc is the exact offset from the nearer end
      auto g = [&](double z, double zc) {
        const double anchor = z < 0.0 ? lo : hi, offset = -half * zc;
        return shape(anchor, offset) * ((anchor - zero) + offset) / (peak - zero);
      };
      double err = 0.0, l1 = 0.0;
      const double v = half * ts.integrate(g, 1e-12, &err, &l1);
      if (!std::isfinite(v) || err > std::max(1e-8 * l1, 1e-300))
        throw convergence_error("kernel_interpolant_weights: quadrature did not converge");
      total += v;
    }
    return total;
  };

  const std::size_t count = static_cast<std::size_t>(last - out.first + 1);
  out.full.resize(count);
  out.left.resize(count);
  for (std::size_t j = 0; j < count; ++j) {
    const double yk = (out.first + static_cast<int>(j)) * r;
    const double rise = piece(yk - r, yk, yk - r, yk);
    out.left[j] = scale * rise;
    out.full[j] = scale * (rise + piece(yk, yk + r, yk + r, yk));
  }
  return out;
}

interpolant_weights kernel_interpolant_weights(const real_function &shape, double support_start, double nu,
                                               double delta, double step, int last,
                                               const std::vector<double> &breaks) {
  return kernel_interpolant_weights(
      edge_function([&shape](double anchor, double offset) { return shape(anchor + offset); }), support_start, nu,
      delta, step, last, breaks);
}

double orthogonal_derivative(const real_function &f, int n, double alpha, double beta, double delta, double x) {
  if (n < 0 || !(alpha > -1.0) || !(beta > -1.0) || !(delta > 0.0))
    throw parameter_error("orthogonal_derivative: need n >= 0, alpha, beta > -1, delta > 0");
  const auto &q = quadrature::gauss_jacobi(64 + n, alpha, beta);
  // P_n (n >= 1) is orthogonal to constants, so f(x) can be removed first
  const double f0 = n > 0 ? f(x) : 0.0;
  long double s = 0.0L;
  for (std::size_t i = 0; i < q.nodes.size(); ++i)
    s += static_cast<long double>(q.weights[i]) * (f(x + delta * q.nodes[i]) - f0) *
         jacobi_polynomial(n, alpha, beta, q.nodes[i]);
  return sf::gamma(n + 1.0) / hn_over_kn(alpha, beta, n) * static_cast<double>(s) / std::pow(delta, n);
}

double oracle_double_integral(const real_function &f, const jacobi_params &p, double x) {
  p.validate();
  const int n = p.n;
  const double a = p.alpha, b = p.beta, nu = p.nu;
  const double sign = n % 2 ? -1.0 : 1.0;
  auto weight = [&](double u) {
    return std::pow(std::max(1.0 - u, kTiny), a) * std::pow(std::max(1.0 + u, kTiny), b);
  };
  const double knhn = sf::gamma(n + 1.0) / hn_over_kn(a, b, n);
  if (nu == n) {
    auto g = [&](double u) { return f(x + p.delta * u) * jacobi_polynomial(n, a, b, u) * weight(u); };
    return sign * knhn * integrate_finite(g, -1.0, 1.0, 1e-12, "oracle_double_integral") / std::pow(p.delta, n);
  }
  // s = (y - u)^{n-nu} absorbs the (y - u)^{n-nu-1} singularity
  const double k = n - nu;
  // Inner integral over u in (-1, min(y, 1)) at y = opy - 1. With
  // u = y - opy r^{1/(n-nu)} the (y - u)^{n-nu-1} singularity is absorbed
  // and the (1 + u)^beta factor scales out, leaving a smooth integrand on
  // r in (r_lo, 1) at every distance from -1.
  auto inner = [&](double opy) {
    const double y = opy - 1.0, omy = 2.0 - opy;
    auto g = [&](double r) {
      const double lr = std::log(std::max(r, kTiny)) / k;
      const double t = opy * std::exp(lr);
      return jacobi_polynomial(n, a, b, y - t) * std::pow(std::max(omy + t, kTiny), a) * std::pow(-std::expm1(lr), b);
    };
    const double r_lo = y > 1.0 ? std::pow((y - 1.0) / opy, k) : 0.0;
    return std::pow(opy, k + b) / k * integrate_finite(g, r_lo, 1.0, 1e-11, "oracle_double_integral");
  };
  auto outer_int = [&](double opy) {
    opy = std::clamp(opy, kTiny, 2.0 - kEdge);
    return f(x + p.delta * (opy - 1.0)) * inner(opy);
  };
  const double part1 = integrate_finite(outer_int, 0.0, 2.0, 1e-9, "oracle_double_integral");
  auto bound = [&](double Y) { return std::abs(inner(1.0 + Y)) * max_abs_f(f, x, p.delta, Y) * (1.0 + Y) / std::abs(nu); };
  double estimate = 0.0;
  const double Y = choose_cutoff(bound, part1, estimate);
  auto outer_tail = [&](double y, double) { return f(x + p.delta * y) * inner(1.0 + y); };
  const double part2 = integrate_tail(outer_tail, Y, "oracle_double_integral");
  return sign * knhn * sf::reciprocal_gamma(n - nu) * std::pow(p.delta, -nu) * (part1 + part2);
}

} // namespace fracdiff::kernels
