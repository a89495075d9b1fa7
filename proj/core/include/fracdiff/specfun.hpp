#pragma once

#include <complex>

namespace fracdiff {

using complex = std::complex<double>;

namespace specfun {

// Gamma function. Throws pole_error at 0, -1, -2, ...
double gamma(double x);

// 1/Gamma(x); exactly 0 at the poles of Gamma.
double reciprocal_gamma(double x);

// Rising factorial (a)_k by direct product.
double pochhammer(double a, int k);

// Side of the branch cut (-inf, 0] that a negative real argument sits on.
enum class cut_side { none, above, below };

// z^nu with the principal logarithm, arg in (-pi, pi]. For z on the negative
// real axis the side must be given: (z + i0)^nu = e^{i pi nu} (-z)^nu.
complex complex_power(complex z, double nu, cut_side side = cut_side::none);

// Gauss hypergeometric 2F1(a, b; c; z).
complex gauss_2f1(double a, double b, double c, complex z);

// Terminating 3F2(a1, a2, a3; b1, b2; 1). Throws convergence_error if no top
// parameter vanishes within max_terms.
double hyp_3f2_unit(double a1, double a2, double a3, double b1, double b2,
                    int max_terms = 100000);

// Confluent hypergeometric M(a, c; z).
complex kummer_m(double a, double c, complex z);

// Spherical Bessel function of the first kind j_n(x).
double spherical_bessel_j(int n, double x);

} // namespace specfun
} // namespace fracdiff
