#include "pwfd/convergence.hpp"

#include <algorithm>
#include <limits>

#include "pwfd/errors.hpp"

namespace pwfd {

std::pair<double, double> unknown_wavenumber_range(const MediumModel& medium,
                                                   BoundaryPolicy policy) {
  const GridSpec& g = medium.grid();
  const int rings = policy == BoundaryPolicy::two_ring_dirichlet ? 2 : 1;
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  for (int n = rings; n < g.nz - rings; ++n) {
    for (int m = rings; m < g.nx - rings; ++m) {
      lo = std::min(lo, medium.wavenumber(m, n));
      hi = std::max(hi, medium.wavenumber(m, n));
    }
  }
  if (!(hi > 0.0)) throw DomainError("grid has no unknown nodes");
  return {lo, hi};
}

ManufacturedSolution manufactured_solve(const ConvergenceConfig& config, int N) {
  if (N < 5) throw DomainError("manufactured run needs at least 5 nodes per side");
  const ManufacturedProblem& prob = config.problem;
  ConvergenceRow row;
  row.N = N;
  row.h = 1.0 / (N - 1);

  GridSpec grid{N, N, row.h, 1.0, 0.0, 0.0};
  const auto medium = MediumModel::from_wavenumber(
      grid, [&](double x, double z) { return prob.wavenumber(x, z); });
  const auto [k_lo, k_hi] = unknown_wavenumber_range(medium, config.boundary);
  const auto est = interval_from_wavenumbers(k_lo, k_hi, row.h);
  row.ig = est.interval;
  FitConfig fit{row.ig, 1.0, config.l, config.r};
  row.scheme = config.fixed_scheme ? *config.fixed_scheme : scheme_for(config.kind, fit);
  const CoefficientFields fields = coefficient_fields(medium, PmlConfig{});

  AssemblyOptions opts;
  opts.boundary = config.boundary;
  opts.boundary_data = [&](double x, double z) { return prob.exact(x, z); };
  const SparseSystem sys =
      assemble(row.scheme, fields, SampledSource{[&](double x, double z) { return prob.rhs(x, z); }},
               opts);
  const SolveResult res = solve(sys, config.solver_tol);

  row.unknowns = sys.dimension();
  row.nonzeros = sys.nonzeros();
  row.residual = res.relative_residual;
  std::vector<cplx> diff(sys.dimension());
  for (int k = 0; k < sys.dimension(); ++k) {
    const NodeIndex nd = sys.node(k);
    diff[k] = res.x(k) - prob.exact(grid.x(nd.m), grid.z(nd.n));
  }
  row.error = cnorm(diff);
  return {row, res.field};
}

ConvergenceRow manufactured_run(const ConvergenceConfig& config, int N) {
  return manufactured_solve(config, N).row;
}

std::vector<ConvergenceRow> convergence_study(const ConvergenceConfig& config) {
  if (config.sizes.empty()) throw DomainError("convergence study needs at least one grid size");
  std::vector<ConvergenceRow> rows;
  for (int N : config.sizes) {
    ConvergenceRow row = manufactured_run(config, N);
    if (!rows.empty() && row.error > 0.0) row.ratio = rows.back().error / row.error;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace pwfd
