#pragma once

#include <functional>
#include <vector>

#include "pwfd/grid.hpp"

namespace pwfd {

enum class Axis { x, z };

struct PmlSides {
  bool x_min = true;
  bool x_max = true;
  bool z_min = true;
  bool z_max = true;
};

struct PmlConfig {
  double thickness = 0.0;  // L, physical units; 0 disables damping
  double a0 = 1.79;
  double peak_frequency = 15.0;  // f_M in Hz
  PmlSides sides{};

  void validate() const;
};

// Distance into the layer along one axis, 0 in the interior.
double pml_depth(double coord, Axis axis, const GridSpec& grid, const PmlConfig& pml);

// sigma = 2 pi a0 f_M (l / L)^2.
double sigma_profile(double coord, Axis axis, const GridSpec& grid, const PmlConfig& pml);

// s = 1 - i sigma / omega (time dependence e^{i omega t}).
cplx stretch_factor(double sigma, double omega);

bool inside_pml(double x, double z, const GridSpec& grid, const PmlConfig& pml);

// Velocity and wavenumber at the grid nodes for one frequency.
class MediumModel {
 public:
  using Function = std::function<double(double x, double z)>;

  static MediumModel constant(const GridSpec& grid, double velocity, double frequency);
  static MediumModel from_velocity(const GridSpec& grid, const Function& velocity,
                                   double frequency);
  // Wavenumber-defined media (manufactured problems). The frequency only
  // enters the PML stretch.
  static MediumModel from_wavenumber(const GridSpec& grid, const Function& k,
                                     double frequency = 1.0);

  const GridSpec& grid() const noexcept { return grid_; }
  double frequency() const noexcept { return frequency_; }
  double omega() const noexcept;
  double wavenumber(int m, int n) const { return k_(m, n); }
  double velocity(int m, int n) const;
  double k_min() const;
  double k_max() const;

 private:
  GridSpec grid_;
  double frequency_ = 1.0;
  Array2D<double> k_;
};

// A, B at half-node positions, C and k^2 at nodes:
//   a_half(m, n) = A(x_{m - 1/2}, z_n),   width nx + 1
//   b_half(m, n) = B(x_m, z_{n - 1/2}),   height nz + 1
struct CoefficientFields {
  using Function = std::function<cplx(double x, double z)>;

  GridSpec grid;
  Array2D<cplx> a_half;
  Array2D<cplx> b_half;
  Array2D<cplx> c;
  Array2D<double> k2;

  // A at x_m + off/2 (off in {-3, -1, 1, 3}).
  cplx a_at(int m, int n, int off) const { return a_half(m + (off + 1) / 2, n); }
  cplx b_at(int m, int n, int off) const { return b_half(m, n + (off + 1) / 2); }

  // Direct construction from analytic coefficient functions (one-cell halo
  // for half positions outside the grid).
  static CoefficientFields from_functions(const GridSpec& grid, const Function& a,
                                          const Function& b, const Function& c,
                                          const std::function<double(double, double)>& k);
};

CoefficientFields coefficient_fields(const MediumModel& medium, const PmlConfig& pml);

}  // namespace pwfd
