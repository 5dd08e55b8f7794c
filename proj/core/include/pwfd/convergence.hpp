#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "pwfd/linsys.hpp"
#include "pwfd/manufactured.hpp"
#include "pwfd/param_select.hpp"

namespace pwfd {

struct ConvergenceConfig {
  ManufacturedProblem problem{};
  SchemeKind kind = SchemeKind::pw17;
  std::vector<int> sizes;  // nodes per side, h = 1 / (N - 1)
  int l = 64;
  int r = 64;
  BoundaryPolicy boundary = BoundaryPolicy::two_ring_dirichlet;
  double solver_tol = kDefaultSolverTol;
  // Skips the per-N fit when set.
  std::optional<Scheme> fixed_scheme;
};

struct ConvergenceRow {
  int N = 0;
  double h = 0.0;
  GInterval ig{};
  Scheme scheme{};
  int unknowns = 0;
  long nonzeros = 0;
  double residual = 0.0;
  double error = 0.0;  // C-norm over the unknowns
  double ratio = 0.0;  // previous error / this error, 0 for the first row
};

// Wavenumber extremes over the nodes that carry an equation (the a priori
// range used for I_G); the fourth-order schemes eliminate two rings.
std::pair<double, double> unknown_wavenumber_range(const MediumModel& medium,
                                                   BoundaryPolicy policy);

struct ManufacturedSolution {
  ConvergenceRow row;
  Field field;  // numerical solution, exact data on the eliminated rings
};

// One manufactured-solution solve; the parameters are refit for this N.
ManufacturedSolution manufactured_solve(const ConvergenceConfig& config, int N);
ConvergenceRow manufactured_run(const ConvergenceConfig& config, int N);

std::vector<ConvergenceRow> convergence_study(const ConvergenceConfig& config);

}  // namespace pwfd
