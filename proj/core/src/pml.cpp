#include "pwfd/pml.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "pwfd/errors.hpp"

namespace pwfd {

void PmlConfig::validate() const {
  if (!(thickness >= 0.0) || !std::isfinite(thickness)) {
    throw DomainError("PML thickness must be non-negative");
  }
  if (!(a0 >= 0.0) || !std::isfinite(a0)) throw DomainError("PML a0 must be non-negative");
  if (thickness > 0.0 && !(peak_frequency > 0.0)) {
    throw DomainError("PML peak frequency must be positive");
  }
}

double pml_depth(double coord, Axis axis, const GridSpec& grid, const PmlConfig& pml) {
  const double L = pml.thickness;
  if (L <= 0.0) return 0.0;
  const bool low_on = axis == Axis::x ? pml.sides.x_min : pml.sides.z_min;
  const bool high_on = axis == Axis::x ? pml.sides.x_max : pml.sides.z_max;
  const double lo = axis == Axis::x ? grid.x0 : grid.z0;
  const double hi = axis == Axis::x ? grid.x_max() : grid.z_max();
  double depth = 0.0;
  if (low_on) depth = std::max(depth, lo + L - coord);
  if (high_on) depth = std::max(depth, coord - (hi - L));
  return std::clamp(depth, 0.0, L);
}

double sigma_profile(double coord, Axis axis, const GridSpec& grid, const PmlConfig& pml) {
  const double l = pml_depth(coord, axis, grid, pml);
  if (l <= 0.0) return 0.0;
  const double r = l / pml.thickness;
  return 2.0 * std::numbers::pi * pml.a0 * pml.peak_frequency * r * r;
}

cplx stretch_factor(double sigma, double omega) {
  if (!(omega > 0.0)) throw DomainError("stretch factor needs a positive angular frequency");
  return {1.0, -sigma / omega};
}

bool inside_pml(double x, double z, const GridSpec& grid, const PmlConfig& pml) {
  return pml_depth(x, Axis::x, grid, pml) > 0.0 || pml_depth(z, Axis::z, grid, pml) > 0.0;
}

MediumModel MediumModel::constant(const GridSpec& grid, double velocity, double frequency) {
  return from_velocity(grid, [velocity](double, double) { return velocity; }, frequency);
}

MediumModel MediumModel::from_velocity(const GridSpec& grid, const Function& velocity,
                                       double frequency) {
  grid.validate();
  if (!(frequency > 0.0)) throw DomainError("frequency must be positive");
  MediumModel model;
  model.grid_ = grid;
  model.frequency_ = frequency;
  model.k_ = Array2D<double>(grid.nx, grid.nz);
  const double omega = 2.0 * std::numbers::pi * frequency;
  for (int n = 0; n < grid.nz; ++n) {
    for (int m = 0; m < grid.nx; ++m) {
      const double v = velocity(grid.x(m), grid.z(n));
      if (!(v > 0.0) || !std::isfinite(v)) throw DomainError("velocity must be positive");
      model.k_(m, n) = omega / v;
    }
  }
  return model;
}

MediumModel MediumModel::from_wavenumber(const GridSpec& grid, const Function& k,
                                         double frequency) {
  grid.validate();
  if (!(frequency > 0.0)) throw DomainError("frequency must be positive");
  MediumModel model;
  model.grid_ = grid;
  model.frequency_ = frequency;
  model.k_ = Array2D<double>(grid.nx, grid.nz);
  for (int n = 0; n < grid.nz; ++n) {
    for (int m = 0; m < grid.nx; ++m) {
      const double kv = k(grid.x(m), grid.z(n));
      if (!(kv > 0.0) || !std::isfinite(kv)) throw DomainError("wavenumber must be positive");
      model.k_(m, n) = kv;
    }
  }
  return model;
}

double MediumModel::omega() const noexcept { return 2.0 * std::numbers::pi * frequency_; }

double MediumModel::velocity(int m, int n) const { return omega() / k_(m, n); }

double MediumModel::k_min() const {
  return *std::min_element(k_.data().begin(), k_.data().end());
}

double MediumModel::k_max() const {
  return *std::max_element(k_.data().begin(), k_.data().end());
}

CoefficientFields CoefficientFields::from_functions(const GridSpec& grid, const Function& a,
                                                    const Function& b, const Function& c,
                                                    const std::function<double(double, double)>& k) {
  grid.validate();
  CoefficientFields f;
  f.grid = grid;
  f.a_half = Array2D<cplx>(grid.nx + 1, grid.nz);
  f.b_half = Array2D<cplx>(grid.nx, grid.nz + 1);
  f.c = Array2D<cplx>(grid.nx, grid.nz);
  f.k2 = Array2D<double>(grid.nx, grid.nz);
  for (int n = 0; n < grid.nz; ++n) {
    for (int i = 0; i <= grid.nx; ++i) f.a_half(i, n) = a(grid.x(i - 0.5), grid.z(n));
  }
  for (int j = 0; j <= grid.nz; ++j) {
    for (int m = 0; m < grid.nx; ++m) f.b_half(m, j) = b(grid.x(m), grid.z(j - 0.5));
  }
  for (int n = 0; n < grid.nz; ++n) {
    for (int m = 0; m < grid.nx; ++m) {
      f.c(m, n) = c(grid.x(m), grid.z(n));
      const double kv = k(grid.x(m), grid.z(n));
      f.k2(m, n) = kv * kv;
    }
  }
  return f;
}

CoefficientFields coefficient_fields(const MediumModel& medium, const PmlConfig& pml) {
  pml.validate();
  const GridSpec& grid = medium.grid();
  const double omega = medium.omega();
  auto sx = [&](double x) { return stretch_factor(sigma_profile(x, Axis::x, grid, pml), omega); };
  auto sz = [&](double z) { return stretch_factor(sigma_profile(z, Axis::z, grid, pml), omega); };

  CoefficientFields f;
  f.grid = grid;
  f.a_half = Array2D<cplx>(grid.nx + 1, grid.nz);
  f.b_half = Array2D<cplx>(grid.nx, grid.nz + 1);
  f.c = Array2D<cplx>(grid.nx, grid.nz);
  f.k2 = Array2D<double>(grid.nx, grid.nz);

  std::vector<cplx> sz_node(grid.nz), sx_node(grid.nx);
  for (int n = 0; n < grid.nz; ++n) sz_node[n] = sz(grid.z(n));
  for (int m = 0; m < grid.nx; ++m) sx_node[m] = sx(grid.x(m));

  for (int i = 0; i <= grid.nx; ++i) {
    const cplx sxh = sx(grid.x(i - 0.5));
    for (int n = 0; n < grid.nz; ++n) f.a_half(i, n) = sz_node[n] / sxh;
  }
  for (int j = 0; j <= grid.nz; ++j) {
    const cplx szh = sz(grid.z(j - 0.5));
    for (int m = 0; m < grid.nx; ++m) f.b_half(m, j) = sx_node[m] / szh;
  }
  for (int n = 0; n < grid.nz; ++n) {
    for (int m = 0; m < grid.nx; ++m) {
      f.c(m, n) = sx_node[m] * sz_node[n];
      const double kv = medium.wavenumber(m, n);
      f.k2(m, n) = kv * kv;
    }
  }
  return f;
}

}  // namespace pwfd
