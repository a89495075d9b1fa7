#include "fracdiff/hahn.hpp"

#include "fracdiff/errors.hpp"
#include "fracdiff/specfun.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

namespace fracdiff::hahn {

namespace sf = specfun;

namespace {

// (1+beta)_N / N!
double rising_over_factorial(double beta, int N) {
  double r = 1.0;
  for (int k = 1; k <= N; ++k)
    r *= (beta + k) / k;
  return r;
}

// (-N)_n with the sign pulled out: (-1)^n N! / (N-n)!
double falling_block(int N, int n) {
  double r = 1.0;
  for (int k = 0; k < n; ++k)
    r *= -(N - k);
  return r;
}

} // namespace

void hahn_params::validate() const {
  if (!(alpha > -1.0) || !(beta > -1.0))
    throw parameter_error("hahn filter: alpha and beta must exceed -1");
  if (N < 1 || n < 1 || n > N)
    throw parameter_error("hahn filter: need 1 <= n <= N");
  if (!std::isfinite(nu))
    throw parameter_error("hahn filter: order must be finite");
  if (!(delta > 0.0) || !std::isfinite(delta))
    throw parameter_error("hahn filter: delta must be positive");
  if (M < 0)
    throw parameter_error("hahn filter: history length must be nonnegative");
}

int default_history(int N, int n, double nu) {
  const double d = std::min(1.0, n - nu + 1e-3);
  if (d <= 0.0)
    return 4096;
  return static_cast<int>(std::min(4096.0, std::ceil(16.0 * N / d)));
}

int hahn_params::history() const { return M > 0 ? M : default_history(N, n, nu); }

double filter_weights::tap(int offset) const {
  if (offset >= 0) {
    if (offset >= static_cast<int>(forward.size()))
      return 0.0;
    return prefactor * forward[offset];
  }
  const int m = -offset;
  if (m > static_cast<int>(backward.size()))
    return 0.0;
  return prefactor * backward[m - 1];
}

double hahn_prefactor(const hahn_params &p) {
  p.validate();
  const double a = p.alpha, b = p.beta;
  const int n = p.n, N = p.N;
  const double lg = std::lgamma(2 * n + a + b + 2) + std::lgamma(b + 1) + std::lgamma(N + 1.0) -
                    std::lgamma(N + n + a + b + 2) - std::lgamma(n + b + 1);
  const double sign = n % 2 ? -1.0 : 1.0;
  return sign * std::exp(lg) * std::pow(p.delta, -p.nu);
}

double j1_weight(const hahn_params &p, int m) {
  p.validate();
  if (m < 1)
    throw parameter_error("j1_weight: m must be at least 1");
  const int n = p.n, N = p.N;
  const auto c = fracops::gl_coefficients(p.nu, static_cast<std::size_t>(m + n + 1));
  const double cm = c[m + n];
  if (cm == 0.0)
    return 0.0;
  const double sign = n % 2 ? -1.0 : 1.0;
  const double F = sf::hyp_3f2_unit(n - N, n + p.alpha + 1, m + n - p.nu, -N - p.beta, m + n + 1.0);
  return sign * rising_over_factorial(p.beta, N) * cm * F;
}

namespace {

double j2_from_coefficients(const hahn_params &p, int m, const std::vector<double> &c) {
  const int n = p.n, N = p.N;
  const double a = p.alpha, b = p.beta;
  const double pre = sf::pochhammer(b + 1, n) / falling_block(N, n);
  long double s = 0.0L;
  const int top = std::min(N - m, N - n);
  for (int i = 0; i <= top; ++i) {
    const int k = N - n - i;
    double t1 = 1.0; // (a+n+1)_k / k!
    for (int j = 1; j <= k; ++j)
      t1 *= (a + n + j) / j;
    double t2 = 1.0; // (b+n+1)_i / i!
    for (int j = 1; j <= i; ++j)
      t2 *= (b + n + j) / j;
    s += static_cast<long double>(t1) * t2 * c[N - m - i];
  }
  return pre * static_cast<double>(s);
}

} // namespace

double j2_weight(const hahn_params &p, int m) {
  p.validate();
  if (m < 0 || m > p.N)
    throw parameter_error("j2_weight: m must lie in 0..N");
  const auto c = fracops::gl_coefficients(p.nu, static_cast<std::size_t>(p.N + 1));
  return j2_from_coefficients(p, m, c);
}

filter_weights hahn_weights(const hahn_params &p) {
  p.validate();
  const int M = p.history();
  const int n = p.n, N = p.N;
  filter_weights w;
  w.prefactor = hahn_prefactor(p);
  const auto c = fracops::gl_coefficients(p.nu, static_cast<std::size_t>(std::max(N, M + n) + 1));
  w.forward.resize(N + 1);
  for (int m = 0; m <= N; ++m)
    w.forward[m] = j2_from_coefficients(p, m, c);
  w.backward.resize(M);
  const double sign = n % 2 ? -1.0 : 1.0;
  const double lead = sign * rising_over_factorial(p.beta, N);
  for (int m = 1; m <= M; ++m) {
    const double cm = c[m + n];
    w.backward[m - 1] =
        cm == 0.0 ? 0.0 : lead * cm * sf::hyp_3f2_unit(n - N, n + p.alpha + 1, m + n - p.nu, -N - p.beta, m + n + 1.0);
  }
  return w;
}

filter_weights gram_n1_weights(int N, double nu, double delta, int M) {
  if (N < 1)
    throw parameter_error("gram_n1_weights: N must be at least 1");
  if (M < 0)
    throw parameter_error("gram_n1_weights: M must be nonnegative");
  if (!(nu < 2.0))
    throw parameter_error("gram_n1_weights: closed form needs nu < 2");
  if (!(delta > 0.0))
    throw parameter_error("gram_n1_weights: delta must be positive");
  // g[k] = Gamma(k - nu + 2) / Gamma(k + 1). The backward taps are a
  // difference of two terms ~m^3 larger than the result: long double.
  std::vector<long double> g(static_cast<std::size_t>(N + M + 1));
  g[0] = sf::gamma(2.0 - nu);
  for (int k = 0; k + 1 < static_cast<int>(g.size()); ++k)
    g[k + 1] = g[k] * (k - static_cast<long double>(nu) + 2.0L) / (k + 1.0L);
  const long double nl = nu;
  filter_weights w;
  w.prefactor = 6.0 / (static_cast<double>(N) * (N + 1.0) * (N + 2.0)) * sf::reciprocal_gamma(3.0 - nu) *
                std::pow(delta, -nu);
  w.forward.resize(N + 1);
  for (int m = 0; m <= N; ++m)
    w.forward[m] = static_cast<double>((2.0L * m - N * nl) * g[N - m]);
  w.backward.resize(M);
  for (int m = 1; m <= M; ++m)
    w.backward[m - 1] =
        static_cast<double>((2.0L * N + 2.0L * m - 2.0L * nl - N * nl + 2.0L) * g[m - 1] - (2.0L * m + N * nl) * g[N + m]);
  return w;
}

double apply_discrete_filter(const sampled_signal &signal, const filter_weights &w, std::size_t at_index) {
  signal.validate();
  const std::size_t ahead = static_cast<std::size_t>(w.lookahead());
  if (at_index >= signal.size() || at_index + ahead >= signal.size())
    throw range_error("apply_discrete_filter: not enough samples ahead of the index");
  const std::size_t hist = static_cast<std::size_t>(w.history());
  if (!signal.causal && hist > at_index)
    throw range_error("apply_discrete_filter: not enough history for a non-causal signal");
  long double s = 0.0L;
  for (std::size_t m = 0; m <= ahead; ++m)
    s += static_cast<long double>(w.forward[m]) * signal.samples[at_index + m];
  const std::size_t avail = std::min(hist, at_index);
  for (std::size_t m = 1; m <= avail; ++m)
    s += static_cast<long double>(w.backward[m - 1]) * signal.samples[at_index - m];
  return w.prefactor * static_cast<double>(s);
}

void write_taps(std::ostream &os, const filter_weights &w) {
  char buf[64];
  os << "# offset coefficient\n";
  for (int m = w.history(); m >= 1; --m) {
    std::snprintf(buf, sizeof buf, "%d %.17g\n", -m, w.tap(-m));
    os << buf;
  }
  for (int m = 0; m <= w.lookahead(); ++m) {
    std::snprintf(buf, sizeof buf, "%d %.17g\n", m, w.tap(m));
    os << buf;
  }
}

} // namespace fracdiff::hahn
