#pragma once

#include <Eigen/Sparse>
#include <cstdint>
#include <functional>
#include <variant>

#include "pwfd/grid.hpp"
#include "pwfd/pml.hpp"
#include "pwfd/stencil.hpp"

namespace pwfd {

enum class BoundaryPolicy {
  two_ring_dirichlet,  // rings within the scheme reach are known values
  fallback_5p,         // outer ring known, next ring uses the 5-point row
};

// Known values on eliminated nodes; an empty function means zero data.
using BoundaryData = std::function<cplx(double x, double z)>;

enum class NodeRole : unsigned char { eliminated, full_row, fallback_row };

struct BoundaryClosure {
  Array2D<NodeRole> roles;
  Field known;  // data on eliminated nodes, zero elsewhere
  int unknowns = 0;
};

BoundaryClosure apply_boundary(BoundaryPolicy policy, const GridSpec& grid, int reach,
                               const BoundaryData& data);

// Delta source at the nearest node, injected as amplitude / (h * gamma h).
struct PointSource {
  double x = 0.0;
  double z = 0.0;
  cplx amplitude{1.0, 0.0};
};

// Right-hand side sampled at the nodes.
struct SampledSource {
  std::function<cplx(double x, double z)> g;
};

using Source = std::variant<std::monostate, PointSource, SampledSource>;

struct AssemblyOptions {
  BoundaryPolicy boundary = BoundaryPolicy::two_ring_dirichlet;
  BoundaryData boundary_data;
  PmlConfig pml{};  // sampled sources are zeroed inside the layer
};

class SparseSystem {
 public:
  // 64-bit indices: large fourth-order systems overflow 32-bit LU workspaces.
  using Matrix = Eigen::SparseMatrix<cplx, Eigen::ColMajor, std::int64_t>;

  const GridSpec& grid() const noexcept { return grid_; }
  int dimension() const noexcept { return static_cast<int>(rhs_.size()); }
  const Matrix& matrix() const noexcept { return matrix_; }
  const Eigen::VectorXcd& rhs() const noexcept { return rhs_; }
  long nonzeros() const noexcept { return matrix_.nonZeros(); }

  // -1 for eliminated nodes.
  int unknown_index(int m, int n) const { return index_(m, n); }
  NodeIndex node(int unknown) const { return nodes_[unknown]; }
  const Field& known() const noexcept { return known_; }

  // Full grid field from an unknown vector plus the eliminated values.
  Field scatter(const Eigen::VectorXcd& x) const;

 private:
  friend SparseSystem assemble(const Scheme&, const CoefficientFields&, const Source&,
                               const AssemblyOptions&);
  GridSpec grid_;
  Matrix matrix_;
  Eigen::VectorXcd rhs_;
  Array2D<int> index_;
  std::vector<NodeIndex> nodes_;
  Field known_;
};

SparseSystem assemble(const Scheme& scheme, const CoefficientFields& fields, const Source& source,
                      const AssemblyOptions& options = {});

struct SolveResult {
  Field field;
  Eigen::VectorXcd x;
  double relative_residual = 0.0;
  int refinement_steps = 0;
};

inline constexpr double kDefaultSolverTol = 1e-10;

// Sparse LU with iterative refinement. Throws NumericalError (carrying the
// achieved residual) on singular factorization or a missed tolerance.
SolveResult solve(const SparseSystem& system, double tol = kDefaultSolverTol);

}  // namespace pwfd
