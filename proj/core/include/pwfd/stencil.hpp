#pragma once

#include <array>
#include <string_view>
#include <variant>
#include <vector>

#include "pwfd/grid.hpp"
#include "pwfd/pml.hpp"

namespace pwfd {

// 25-point weights. a2 = 1 - a1, c1 = 1 - c2 - c3 - c4.
struct SchemeParams25 {
  double a1 = 1.0;
  double c2 = 0.0;
  double c3 = 0.0;
  double c4 = 0.0;

  double a2() const noexcept { return 1.0 - a1; }
  double c1() const noexcept { return 1.0 - c2 - c3 - c4; }
  void validate() const;  // finite values
};

// 17-point weights. b2 = 1 - b1, d1 = 1 - d2 - d3.
struct SchemeParams17 {
  double b1 = 1.0;
  double d2 = 0.0;
  double d3 = 0.0;

  double b2() const noexcept { return 1.0 - b1; }
  double d1() const noexcept { return 1.0 - d2 - d3; }
  void validate() const;
};

// Non-compact fourth-order cross stencil (25-point family at a1 = 1, c = 0).
struct Nc4Scheme {};
// Second-order 5-point scheme, face coefficients taken at the half nodes.
struct Conventional5Scheme {};

using Scheme = std::variant<SchemeParams25, SchemeParams17, Nc4Scheme, Conventional5Scheme>;

enum class SchemeKind { pw25, pw17, nc4, conventional5 };

// Accepts "pw25", "pw17", "nc4", "conventional5" (DomainError otherwise).
SchemeKind parse_scheme_kind(std::string_view name);
std::string_view to_string(SchemeKind kind);
SchemeKind kind_of(const Scheme& scheme);

std::string_view scheme_name(const Scheme& scheme);
// Half width of the footprint: 2 for the fourth-order schemes, 1 for 5-point.
int scheme_reach(const Scheme& scheme);

struct StencilEntry {
  int di = 0;
  int dj = 0;
  cplx weight;
};

// Weights on the 5x5 neighbourhood of a centre node. (di, dj) in [-2, 2]^2.
class Stencil {
 public:
  static constexpr int kReach = 2;
  static constexpr int kWidth = 2 * kReach + 1;

  Stencil() = default;
  explicit Stencil(NodeIndex center) : center_(center) {}

  NodeIndex center() const noexcept { return center_; }
  cplx& at(int di, int dj) { return w_[slot(di, dj)]; }
  const cplx& at(int di, int dj) const { return w_[slot(di, dj)]; }

  // Structurally non-zero entries (exact zeros dropped).
  std::vector<StencilEntry> entries() const;
  int nonzeros() const;

 private:
  static int slot(int di, int dj) { return (dj + kReach) * kWidth + (di + kReach); }
  NodeIndex center_{};
  std::array<cplx, kWidth * kWidth> w_{};
};

// Offsets a scheme may touch, independent of coefficient values.
std::vector<std::pair<int, int>> footprint(const Scheme& scheme);

// Weights of the fourth-order flux difference (A p_x)_x along one line.
// coeff = A at offsets -3/2, -1/2, +1/2, +3/2; result indexed by offset + 2.
std::array<cplx, 5> base_flux_weights(const std::array<cplx, 4>& coeff, double spacing);

// Line operators centred at node, as stencils along x and along z.
Stencil base_flux_stencil_x(const CoefficientFields& fields, NodeIndex node);
Stencil base_flux_stencil_z(const CoefficientFields& fields, NodeIndex node);

// Averaging operators I^(1..4) for the mass term (real weights).
Stencil mass_stencil(int j);

// Assembled row for one interior node. The node must keep the footprint on
// the grid (DomainError otherwise).
Stencil build_stencil(const Scheme& scheme, const CoefficientFields& fields, NodeIndex node);

Stencil pw25_stencil(const SchemeParams25& p, const CoefficientFields& fields, NodeIndex node);
Stencil pw17_stencil(const SchemeParams17& p, const CoefficientFields& fields, NodeIndex node);
Stencil nc4_stencil(const CoefficientFields& fields, NodeIndex node);
Stencil conventional5_stencil(const CoefficientFields& fields, NodeIndex node);

}  // namespace pwfd
