#pragma once

#include <vector>

#include "pwfd/grid.hpp"

namespace pwfd {

// Forward real DFT, X_j = sum_n x_n e^{-2 pi i j n / N}, j = 0..N/2.
std::vector<cplx> real_dft(const std::vector<double>& x);

// Inverse of real_dft for a length-n signal (includes the 1/N factor).
std::vector<double> inverse_real_dft(const std::vector<cplx>& half, int n);

}  // namespace pwfd
