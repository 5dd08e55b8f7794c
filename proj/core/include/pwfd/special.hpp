#pragma once

#include "pwfd/grid.hpp"

namespace pwfd {

// Bessel functions of the first and second kind, orders 0 and 1, x > 0
// (J also accepts x = 0). Relative accuracy ~1e-12 away from zeros.
double bessel_j0(double x);
double bessel_j1(double x);
double bessel_y0(double x);
double bessel_y1(double x);

// H0^(2)(x) = J0(x) - i Y0(x); throws DomainError for x <= 0.
cplx hankel0_2(double x);
// H1^(2)(x) = J1(x) - i Y1(x).
cplx hankel1_2(double x);

}  // namespace pwfd
