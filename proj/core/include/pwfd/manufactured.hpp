#pragma once

#include <span>

#include "pwfd/grid.hpp"

namespace pwfd {

// Max modulus.
double cnorm(std::span<const cplx> values);

// Variable-wavenumber Helmholtz problem on (0,1)^2 with a closed-form solution
//   p = sin(pi x) sin(pi z) exp(i k0 (x cos(theta) + z sin(theta))),
//   k = k0 (exp(-k0 (x + z)) + 1).
struct ManufacturedProblem {
  double k0 = 75.0;
  double theta = 0.7853981633974483;

  cplx exact(double x, double z) const;
  double wavenumber(double x, double z) const;
  // g = laplacian(p) + k^2 p.
  cplx rhs(double x, double z) const;
  // Same with the opposite sign on the first-derivative cross term. Not a
  // consistent forcing for exact(); kept to document the difference.
  cplx rhs_opposite_cross_sign(double x, double z) const;

  double k_min() const;  // attained at x = z = 1
  double k_max() const;  // attained at x = z = 0
};

}  // namespace pwfd
