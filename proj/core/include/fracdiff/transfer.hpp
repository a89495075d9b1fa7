#pragma once

#include "fracdiff/hahn.hpp"
#include "fracdiff/kernels.hpp"
#include "fracdiff/specfun.hpp"

#include <functional>
#include <string>
#include <vector>

namespace fracdiff::transfer {

// weyl: (i w)^nu, the forward-looking operator.
// riemann_liouville: (-i w)^nu, the causal operator (also GL, Hahn taps).
enum class convention { weyl, riemann_liouville };

const char *to_string(convention c);

complex ideal_transfer(double nu, double omega, convention c);

// (i w)^nu e^{-i w delta} M(n+alpha+1, 2n+alpha+beta+2; 2 i w delta)
complex jacobi_transfer(const kernels::jacobi_params &p, double omega);

// (i w)^nu Gamma(2n+2) / (2^n n!) (w delta)^-n j_n(w delta)
complex legendre_transfer(int n, double nu, double delta, double omega);

// (i w)^nu (1 + i w delta)^{-(n+alpha+1)}
complex laguerre_transfer(double alpha, int n, double nu, double delta, double omega);

// Infinite-history Hahn filter.
complex hahn_transfer(const hahn::hahn_params &p, double omega);

// Gram filter (n = 1, alpha = beta = 0) truncated to p.history() taps.
complex hahn_truncated_transfer(const hahn::hahn_params &p, double omega);

// ((1 - e^{i w delta}) / delta)^nu
complex gl_transfer(double nu, double delta, double omega);

// (-i w)^nu / (1 + (w / w0)^{2n})
complex butterworth_fractional_transfer(double nu, int n, double omega0, double omega);

// Frequency response of explicit taps, same phase convention as the filter.
complex taps_transfer(const hahn::filter_weights &w, double delta, double omega);

// Closed-form H(0) of the truncated Gram filter.
double hahn_h_zero(int N, double nu, double delta, int M);

// Approximate peak frequency of the Gram filter modulus (rough estimate).
double hahn_omega_max(int N, double nu, double delta);

// First maximum of the continuous Jacobi filter modulus from its small-w
// expansion.
double jacobi_omega_max(int n, double alpha, double beta, double nu, double delta);

struct filter_metrics {
  double h_zero = 0.0;
  double omega_lower = 0.0;
  double omega_lower_practical = 0.0;
  double omega_max = 0.0;
  double bandwidth = 0.0; // NaN when omega_lower >= omega_max
  double omega_peak = 0.0;
  double peak_modulus = 0.0;
  bool integer_order_edge = false;
};

filter_metrics compute_metrics(const hahn::hahn_params &p);

enum class spacing { linear, logarithmic };

struct frequency_grid {
  std::vector<double> points;
  spacing kind = spacing::logarithmic;
};

frequency_grid make_grid(double lo, double hi, int count, spacing kind);

// "lo:hi:points:log|lin"
frequency_grid parse_grid(const std::string &spec);

struct transfer_sample {
  double omega = 0.0;
  complex value{0.0, 0.0};
  bool valid = true;
};

using transfer_function = std::function<complex(double)>;

// Per-point evaluation; numeric failures mark the sample invalid.
std::vector<transfer_sample> sweep(const transfer_function &h, const frequency_grid &grid);

// Least-squares slope of log10|H| against log10 w over [lo, hi].
double slope_fit(const std::vector<transfer_sample> &samples, double lo, double hi);

// Same over the lowest decade of the samples.
double slope_fit(const std::vector<transfer_sample> &samples);

} // namespace fracdiff::transfer
