#pragma once

#include "fracdiff/fracops.hpp"

#include <iosfwd>
#include <vector>

namespace fracdiff::hahn {

// Discrete filter from Hahn polynomials on {0..N}: weight parameters alpha,
// beta, degree n <= N, order nu, step delta and backward history length M.
struct hahn_params {
  double alpha = 0.0;
  double beta = 0.0;
  int N = 1;
  int n = 1;
  double nu = 0.5;
  double delta = 1.0;
  int M = 0; // 0: default_history()

  void validate() const;
  int history() const;
};

// 16 N / min(1, n - nu + 1e-3), capped at 4096.
int default_history(int N, int n, double nu);

struct filter_weights {
  std::vector<double> forward;  // coefficient of f(x + m delta), m = 0..N
  std::vector<double> backward; // coefficient of f(x - m delta), m = 1..M (index m-1)
  double prefactor = 1.0;

  // Absorbed coefficient at signed offset (negative = history).
  double tap(int offset) const;
  int lookahead() const { return static_cast<int>(forward.size()) - 1; }
  int history() const { return static_cast<int>(backward.size()); }
};

// Global factor of the filter, including delta^-nu.
double hahn_prefactor(const hahn_params &p);

// Backward weight for f(x - m delta), m >= 1, without the prefactor.
double j1_weight(const hahn_params &p, int m);

// Forward weight for f(x + m delta), 0 <= m <= N, without the prefactor.
double j2_weight(const hahn_params &p, int m);

filter_weights hahn_weights(const hahn_params &p);

// Closed form for n = 1, alpha = beta = 0.
filter_weights gram_n1_weights(int N, double nu, double delta, int M);

// prefactor * (sum backward + sum forward) at sample at_index.
double apply_discrete_filter(const sampled_signal &signal, const filter_weights &w, std::size_t at_index);

// Plain-text tap list: one "offset coefficient" pair per line.
void write_taps(std::ostream &os, const filter_weights &w);

} // namespace fracdiff::hahn
