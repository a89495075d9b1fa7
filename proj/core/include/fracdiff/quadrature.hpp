#pragma once

#include <vector>

namespace fracdiff::quadrature {

struct rule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// Gauss-Jacobi rule on [-1, 1] for the weight (1-x)^alpha (1+x)^beta.
// Weights sum to the weight's total mass. Rules are cached; the returned
// reference stays valid for the life of the program.
const rule &gauss_jacobi(int points, double alpha, double beta);

// Gauss-Legendre rule on [-1, 1].
const rule &gauss_legendre(int points);

} // namespace fracdiff::quadrature
