#pragma once

#include "fracdiff/fracops.hpp"

#include <functional>
#include <vector>

namespace fracdiff::kernels {

// Jacobi-weight kernel parameters: weight (1-x)^alpha (1+x)^beta, polynomial
// degree n, order nu <= n, window half-width delta.
struct jacobi_params {
  double alpha = 0.0;
  double beta = 0.0;
  int n = 1;
  double nu = 0.5;
  double delta = 1.0;

  void validate() const;
};

// h_n / k_n for the Jacobi polynomial of degree n.
double hn_over_kn(double alpha, double beta, int n);

// Jacobi polynomial P_n^{(alpha,beta)}(x) by the three-term recurrence.
double jacobi_polynomial(int n, double alpha, double beta, double x);

// The y-shape of the fractional Jacobi kernel: 0 for y < -1, a weighted 2F1
// on (-1, 1) and the algebraic tail on (1, inf). No delta factors.
double jacobi_kernel(const jacobi_params &p, double y);

// Same kernel at y = anchor + offset. With anchor at -1 or 1 the offset is
// taken as the exact distance from the edge, so the algebraic edge
// singularities stay resolved below the spacing of doubles near +-1.
double jacobi_kernel(const jacobi_params &p, double anchor, double offset);

// Gegenbauer parameter alpha_g maps to alpha = beta = alpha_g - 1/2;
// alpha_g = 1/2 is Legendre.
jacobi_params gegenbauer_legendre_params(double alpha_g, int n, double nu, double delta);

// Laguerre-weight kernel y^{n-nu+alpha} e^{-y} M(-nu; n-nu+alpha+1; y) / Gamma(n-nu+alpha+1).
double laguerre_kernel(double alpha, int n, double nu, double y);

struct kernel_value {
  double value = 0.0;
  double tail_bound = 0.0; // estimate of the part beyond the tail cutoff
  double tail_cutoff = 0.0;
};

// delta^-nu * integral of f(x + delta*y) K(y) dy over (-1, tail_cutoff).
// tail_cutoff <= 1 selects the cutoff automatically.
kernel_value apply_kernel(const real_function &f, const jacobi_params &p, double x, double tail_cutoff = 0.0);

// delta^-nu * integral over (0, inf) of f(x + delta*y) times the Laguerre kernel.
kernel_value apply_laguerre_kernel(const real_function &f, double alpha, int n, double nu, double delta, double x,
                                   double tail_cutoff = 0.0);

// Kernel applied to the piecewise-linear interpolant of samples g_k spaced
// `step`, as a fixed weight table. With the integral stopped at offset `cut`:
//   delta^-nu * integral of K(y) g(x + delta y) dy
//     = sum_{k=first}^{cut-1} full[k-first] g_k + left[cut-first] g_cut.
// `left` holds the contribution of the rising half of each hat alone.
struct interpolant_weights {
  int first = 0;
  std::vector<double> full;
  std::vector<double> left;
};
// `shape` is K(y), zero below support_start; `breaks` lists interior points
// where K is not smooth. Offsets run from the first hat touching the support
// to `last`.
// The shape is called as shape(anchor, offset) with anchor the nearer end of
// the current sub-interval (support start, a break or a hat edge).
using edge_function = std::function<double(double anchor, double offset)>;

interpolant_weights kernel_interpolant_weights(const edge_function &shape, double support_start, double nu,
                                               double delta, double step, int last,
                                               const std::vector<double> &breaks = {});

interpolant_weights kernel_interpolant_weights(const real_function &shape, double support_start, double nu,
                                               double delta, double step, int last,
                                               const std::vector<double> &breaks = {});

// Integer-order orthogonal derivative of order n with the Jacobi weight.
// Exact on polynomials of degree n for every delta.
double orthogonal_derivative(const real_function &f, int n, double alpha, double beta, double delta, double x);

// Slow double-integral form of the fractional operator (polynomial times
// weight, convolved with (y-u)^{n-nu-1}), evaluated without interchanging
// the integrals. Test oracle only.
double oracle_double_integral(const real_function &f, const jacobi_params &p, double x);

} // namespace fracdiff::kernels
