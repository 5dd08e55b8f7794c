#include "pwfd/linsys.hpp"

#include <Eigen/UmfPackSupport>
#include <algorithm>
#include <sstream>

#include "pwfd/errors.hpp"

namespace pwfd {

static_assert(std::is_same_v<SparseSystem::Matrix::StorageIndex, SuiteSparse_long>,
              "matrix index type must match the UMFPACK long interface");

BoundaryClosure apply_boundary(BoundaryPolicy policy, const GridSpec& grid, int reach,
                               const BoundaryData& data) {
  grid.validate();
  const int rings = policy == BoundaryPolicy::two_ring_dirichlet ? reach : 1;
  if (grid.nx < 2 * reach + 1 || grid.nz < 2 * reach + 1) {
    throw DomainError("grid too small for the stencil footprint");
  }
  BoundaryClosure c;
  c.roles = Array2D<NodeRole>(grid.nx, grid.nz, NodeRole::full_row);
  c.known = Field(grid);
  for (int n = 0; n < grid.nz; ++n) {
    for (int m = 0; m < grid.nx; ++m) {
      const int ring = std::min({m, n, grid.nx - 1 - m, grid.nz - 1 - n});
      if (ring < rings) {
        c.roles(m, n) = NodeRole::eliminated;
        if (data) c.known(m, n) = data(grid.x(m), grid.z(n));
      } else {
        if (ring < reach) c.roles(m, n) = NodeRole::fallback_row;
        ++c.unknowns;
      }
    }
  }
  return c;
}

Field SparseSystem::scatter(const Eigen::VectorXcd& x) const {
  if (x.size() != dimension()) throw DomainError("solution vector has the wrong length");
  Field f = known_;
  for (int k = 0; k < dimension(); ++k) f(nodes_[k].m, nodes_[k].n) = x(k);
  return f;
}

SparseSystem assemble(const Scheme& scheme, const CoefficientFields& fields, const Source& source,
                      const AssemblyOptions& options) {
  const GridSpec& grid = fields.grid;
  if (fields.c.width() != grid.nx || fields.c.height() != grid.nz ||
      fields.a_half.width() != grid.nx + 1 || fields.b_half.height() != grid.nz + 1) {
    throw DomainError("coefficient fields do not match the grid");
  }
  const int reach = scheme_reach(scheme);
  BoundaryClosure closure = apply_boundary(options.boundary, grid, reach, options.boundary_data);

  SparseSystem sys;
  sys.grid_ = grid;
  sys.index_ = Array2D<int>(grid.nx, grid.nz, -1);
  sys.nodes_.reserve(closure.unknowns);
  for (int n = 0; n < grid.nz; ++n) {
    for (int m = 0; m < grid.nx; ++m) {
      if (closure.roles(m, n) == NodeRole::eliminated) continue;
      sys.index_(m, n) = static_cast<int>(sys.nodes_.size());
      sys.nodes_.push_back({m, n});
    }
  }
  const int dim = static_cast<int>(sys.nodes_.size());
  sys.rhs_ = Eigen::VectorXcd::Zero(dim);
  sys.known_ = std::move(closure.known);

  const auto full_fp = footprint(scheme);
  const auto five_fp = footprint(Conventional5Scheme{});
  std::vector<Eigen::Triplet<cplx, std::int64_t>> triplets;
  triplets.reserve(static_cast<std::size_t>(dim) * full_fp.size());

  for (int row = 0; row < dim; ++row) {
    const NodeIndex node = sys.nodes_[row];
    const bool fallback = closure.roles(node.m, node.n) == NodeRole::fallback_row;
    const Stencil st = fallback ? conventional5_stencil(fields, node)
                                : build_stencil(scheme, fields, node);
    for (const auto& [di, dj] : fallback ? five_fp : full_fp) {
      const int m = node.m + di;
      const int n = node.n + dj;
      const cplx w = st.at(di, dj);
      const int col = sys.index_(m, n);
      if (col >= 0) {
        triplets.emplace_back(row, col, w);
      } else {
        sys.rhs_(row) -= w * sys.known_(m, n);
      }
    }
  }
  sys.matrix_.resize(dim, dim);
  sys.matrix_.setFromTriplets(triplets.begin(), triplets.end());
  sys.matrix_.makeCompressed();

  if (const auto* ps = std::get_if<PointSource>(&source)) {
    const NodeIndex node = nearest_node(grid, ps->x, ps->z);
    const int row = sys.index_(node.m, node.n);
    if (row < 0) throw DomainError("point source falls on an eliminated boundary node");
    if (inside_pml(grid.x(node.m), grid.z(node.n), grid, options.pml)) {
      throw DomainError("point source lies inside the PML");
    }
    sys.rhs_(row) += ps->amplitude / (grid.dx() * grid.dz());
  } else if (const auto* ss = std::get_if<SampledSource>(&source)) {
    if (!ss->g) throw DomainError("sampled source has no function");
    for (int row = 0; row < dim; ++row) {
      const NodeIndex node = sys.nodes_[row];
      const double x = grid.x(node.m);
      const double z = grid.z(node.n);
      if (inside_pml(x, z, grid, options.pml)) continue;
      sys.rhs_(row) += ss->g(x, z);
    }
  }
  return sys;
}

SolveResult solve(const SparseSystem& system, double tol) {
  if (!(tol > 0.0)) throw DomainError("solver tolerance must be positive");
  const auto& A = system.matrix();
  const auto& b = system.rhs();
  SolveResult out;
  const double bnorm = b.norm();
  if (system.dimension() == 0) {
    out.field = system.scatter(Eigen::VectorXcd());
    return out;
  }

  Eigen::UmfPackLU<SparseSystem::Matrix> lu;
  lu.compute(A);
  if (lu.info() != Eigen::Success) {
    throw NumericalError("sparse LU factorization failed (singular or out of memory)");
  }
  if (bnorm == 0.0) {
    out.x = Eigen::VectorXcd::Zero(system.dimension());
    out.field = system.scatter(out.x);
    return out;
  }
  out.x = lu.solve(b);
  if (lu.info() != Eigen::Success) throw NumericalError("sparse LU solve failed");
  Eigen::VectorXcd r = b - A * out.x;
  out.relative_residual = r.norm() / bnorm;
  constexpr int kMaxRefine = 3;
  while (out.relative_residual > 0.1 * tol && out.refinement_steps < kMaxRefine) {
    const Eigen::VectorXcd dx = lu.solve(r);
    const Eigen::VectorXcd trial = out.x + dx;
    const Eigen::VectorXcd rt = b - A * trial;
    const double res = rt.norm() / bnorm;
    ++out.refinement_steps;
    if (!(res < out.relative_residual)) break;
    out.x = trial;
    r = rt;
    out.relative_residual = res;
  }
  if (!std::isfinite(out.relative_residual) || out.relative_residual > tol) {
    std::ostringstream msg;
    msg << "solver missed the residual contract: " << out.relative_residual << " > " << tol;
    throw NumericalError(msg.str(), out.relative_residual);
  }
  out.field = system.scatter(out.x);
  return out;
}

}  // namespace pwfd
