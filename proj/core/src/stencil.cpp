#include "pwfd/stencil.hpp"

#include <cmath>
#include <string>

#include "pwfd/errors.hpp"

namespace pwfd {
namespace {

// Derivative weights at the four half points, over offsets -2..2.
constexpr double kInner[4][5] = {
    {-11.0 / 12.0, 17.0 / 24.0, 3.0 / 8.0, -5.0 / 24.0, 1.0 / 24.0},
    {1.0 / 24.0, -9.0 / 8.0, 9.0 / 8.0, -1.0 / 24.0, 0.0},
    {0.0, 1.0 / 24.0, -9.0 / 8.0, 9.0 / 8.0, -1.0 / 24.0},
    {-1.0 / 24.0, 5.0 / 24.0, -3.0 / 8.0, -17.0 / 24.0, 11.0 / 12.0},
};
constexpr double kOuter[4] = {1.0 / 24.0, -9.0 / 8.0, 9.0 / 8.0, -1.0 / 24.0};
constexpr int kHalfOffsets[4] = {-3, -1, 1, 3};

// Fourth-order midpoint interpolant across the line, offsets -2, -1, 1, 2.
constexpr int kInterpOffsets[4] = {-2, -1, 1, 2};
constexpr double kInterp[4] = {-1.0 / 6.0, 2.0 / 3.0, 2.0 / 3.0, -1.0 / 6.0};

void check_finite(double v, const char* name) {
  if (!std::isfinite(v)) throw DomainError(std::string("scheme parameter ") + name + " is not finite");
}

void require_footprint(const CoefficientFields& fields, NodeIndex node, int reach) {
  const GridSpec& g = fields.grid;
  if (node.m < reach || node.m > g.nx - 1 - reach || node.n < reach || node.n > g.nz - 1 - reach) {
    throw DomainError("stencil footprint leaves the grid at node (" + std::to_string(node.m) +
                      ", " + std::to_string(node.n) + ")");
  }
}

std::array<cplx, 5> flux_x(const CoefficientFields& f, NodeIndex node) {
  std::array<cplx, 4> a;
  for (int q = 0; q < 4; ++q) a[q] = f.a_at(node.m, node.n, kHalfOffsets[q]);
  return base_flux_weights(a, f.grid.dx());
}

std::array<cplx, 5> flux_z(const CoefficientFields& f, NodeIndex node) {
  std::array<cplx, 4> b;
  for (int q = 0; q < 4; ++q) b[q] = f.b_at(node.m, node.n, kHalfOffsets[q]);
  return base_flux_weights(b, f.grid.dz());
}

template <class Weights>
void add_mass(Stencil& s, const CoefficientFields& f, NodeIndex node, const Weights& c) {
  for (int j = 0; j < static_cast<int>(c.size()); ++j) {
    if (c[j] == 0.0) continue;
    const Stencil avg = mass_stencil(j + 1);
    for (const auto& e : avg.entries()) {
      const int m = node.m + e.di;
      const int n = node.n + e.dj;
      s.at(e.di, e.dj) += c[j] * e.weight * f.k2(m, n) * f.c(m, n);
    }
  }
}

}  // namespace

void SchemeParams25::validate() const {
  check_finite(a1, "a1");
  check_finite(c2, "c2");
  check_finite(c3, "c3");
  check_finite(c4, "c4");
}

void SchemeParams17::validate() const {
  check_finite(b1, "b1");
  check_finite(d2, "d2");
  check_finite(d3, "d3");
}

SchemeKind parse_scheme_kind(std::string_view name) {
  for (SchemeKind k : {SchemeKind::pw25, SchemeKind::pw17, SchemeKind::nc4, SchemeKind::conventional5}) {
    if (to_string(k) == name) return k;
  }
  throw DomainError("unknown scheme '" + std::string(name) +
                    "' (expected pw25, pw17, nc4 or conventional5)");
}

std::string_view to_string(SchemeKind kind) {
  switch (kind) {
    case SchemeKind::pw25: return "pw25";
    case SchemeKind::pw17: return "pw17";
    case SchemeKind::nc4: return "nc4";
    case SchemeKind::conventional5: return "conventional5";
  }
  return "?";
}

SchemeKind kind_of(const Scheme& scheme) {
  // Variant alternatives are declared in SchemeKind order.
  return static_cast<SchemeKind>(scheme.index());
}

std::string_view scheme_name(const Scheme& scheme) { return to_string(kind_of(scheme)); }

int scheme_reach(const Scheme& scheme) {
  return std::holds_alternative<Conventional5Scheme>(scheme) ? 1 : 2;
}

std::vector<StencilEntry> Stencil::entries() const {
  std::vector<StencilEntry> out;
  for (int dj = -kReach; dj <= kReach; ++dj) {
    for (int di = -kReach; di <= kReach; ++di) {
      const cplx w = at(di, dj);
      if (w != cplx{}) out.push_back({di, dj, w});
    }
  }
  return out;
}

int Stencil::nonzeros() const { return static_cast<int>(entries().size()); }

std::vector<std::pair<int, int>> footprint(const Scheme& scheme) {
  std::vector<std::pair<int, int>> out;
  const bool is25 = std::holds_alternative<SchemeParams25>(scheme);
  const bool is17 = std::holds_alternative<SchemeParams17>(scheme);
  const int reach = scheme_reach(scheme);
  for (int dj = -reach; dj <= reach; ++dj) {
    for (int di = -reach; di <= reach; ++di) {
      const bool axis = di == 0 || dj == 0;
      const bool diagonal = std::abs(di) == std::abs(dj);
      if (is25 || axis || (is17 && diagonal)) out.emplace_back(di, dj);
    }
  }
  return out;
}

std::array<cplx, 5> base_flux_weights(const std::array<cplx, 4>& coeff, double spacing) {
  std::array<cplx, 5> w{};
  const double inv = 1.0 / (spacing * spacing);
  for (int q = 0; q < 4; ++q) {
    const cplx scale = kOuter[q] * coeff[q] * inv;
    for (int k = 0; k < 5; ++k) w[k] += scale * kInner[q][k];
  }
  return w;
}

Stencil base_flux_stencil_x(const CoefficientFields& fields, NodeIndex node) {
  require_footprint(fields, node, 2);
  Stencil s(node);
  const auto w = flux_x(fields, node);
  for (int i = -2; i <= 2; ++i) s.at(i, 0) = w[i + 2];
  return s;
}

Stencil base_flux_stencil_z(const CoefficientFields& fields, NodeIndex node) {
  require_footprint(fields, node, 2);
  Stencil s(node);
  const auto w = flux_z(fields, node);
  for (int j = -2; j <= 2; ++j) s.at(0, j) = w[j + 2];
  return s;
}

Stencil mass_stencil(int j) {
  Stencil s;
  switch (j) {
    case 1:
      s.at(0, 0) = 1.0;
      break;
    case 2:
      for (int r : {-1, 1}) {
        s.at(r, 0) = s.at(0, r) = 1.0 / 3.0;
        s.at(2 * r, 0) = s.at(0, 2 * r) = -1.0 / 12.0;
      }
      break;
    case 3:
      for (int r : {-1, 1}) {
        for (int t : {-1, 1}) {
          s.at(r, t) = 1.0 / 3.0;
          s.at(2 * r, 2 * t) = -1.0 / 12.0;
        }
      }
      break;
    case 4:
      for (int r : {-1, 1}) {
        for (int t : {-1, 1}) {
          s.at(r, t) = 4.0 / 9.0;
          s.at(2 * r, 2 * t) = 1.0 / 36.0;
          s.at(r, 2 * t) = s.at(2 * r, t) = -1.0 / 9.0;
        }
      }
      break;
    default:
      throw DomainError("mass operator index must be 1..4, got " + std::to_string(j));
  }
  return s;
}

Stencil pw25_stencil(const SchemeParams25& p, const CoefficientFields& fields, NodeIndex node) {
  p.validate();
  require_footprint(fields, node, 2);
  Stencil s(node);
  const auto wx = flux_x(fields, node);
  const auto wz = flux_z(fields, node);
  const double a1 = p.a1;
  const double a2 = p.a2();
  for (int i = -2; i <= 2; ++i) {
    s.at(i, 0) += a1 * wx[i + 2];
    s.at(0, i) += a1 * wz[i + 2];
    if (a2 == 0.0) continue;
    for (int q = 0; q < 4; ++q) {
      const int j = kInterpOffsets[q];
      s.at(i, j) += a2 * kInterp[q] * wx[i + 2];
      s.at(j, i) += a2 * kInterp[q] * wz[i + 2];
    }
  }
  add_mass(s, fields, node, std::array<double, 4>{p.c1(), p.c2, p.c3, p.c4});
  return s;
}

Stencil pw17_stencil(const SchemeParams17& p, const CoefficientFields& fields, NodeIndex node) {
  p.validate();
  require_footprint(fields, node, 2);
  Stencil s(node);
  const auto wx = flux_x(fields, node);
  const auto wz = flux_z(fields, node);
  const double b1 = p.b1;
  const double half_b2 = 0.5 * p.b2();
  for (int i = -2; i <= 2; ++i) {
    const cplx ux = wx[i + 2];
    const cplx uz = wz[i + 2];
    s.at(i, 0) += b1 * ux;
    s.at(0, i) += b1 * uz;
    if (i == 0) continue;
    const int j = std::abs(i);
    s.at(i, j) += half_b2 * ux;
    s.at(i, -j) += half_b2 * ux;
    s.at(0, j) -= half_b2 * ux;
    s.at(0, -j) -= half_b2 * ux;
    s.at(j, i) += half_b2 * uz;
    s.at(-j, i) += half_b2 * uz;
    s.at(j, 0) -= half_b2 * uz;
    s.at(-j, 0) -= half_b2 * uz;
  }
  add_mass(s, fields, node, std::array<double, 3>{p.d1(), p.d2, p.d3});
  return s;
}

Stencil nc4_stencil(const CoefficientFields& fields, NodeIndex node) {
  return pw25_stencil(SchemeParams25{}, fields, node);
}

Stencil conventional5_stencil(const CoefficientFields& fields, NodeIndex node) {
  require_footprint(fields, node, 1);
  Stencil s(node);
  const int m = node.m;
  const int n = node.n;
  const double ix = 1.0 / (fields.grid.dx() * fields.grid.dx());
  const double iz = 1.0 / (fields.grid.dz() * fields.grid.dz());
  const cplx aw = fields.a_at(m, n, -1) * ix;
  const cplx ae = fields.a_at(m, n, 1) * ix;
  const cplx bs = fields.b_at(m, n, -1) * iz;
  const cplx bn = fields.b_at(m, n, 1) * iz;
  s.at(-1, 0) = aw;
  s.at(1, 0) = ae;
  s.at(0, -1) = bs;
  s.at(0, 1) = bn;
  s.at(0, 0) = -(aw + ae + bs + bn) + fields.k2(m, n) * fields.c(m, n);
  return s;
}

Stencil build_stencil(const Scheme& scheme, const CoefficientFields& fields, NodeIndex node) {
  struct {
    const CoefficientFields& f;
    NodeIndex node;
    Stencil operator()(const SchemeParams25& p) const { return pw25_stencil(p, f, node); }
    Stencil operator()(const SchemeParams17& p) const { return pw17_stencil(p, f, node); }
    Stencil operator()(const Nc4Scheme&) const { return nc4_stencil(f, node); }
    Stencil operator()(const Conventional5Scheme&) const { return conventional5_stencil(f, node); }
  } visitor{fields, node};
  return std::visit(visitor, scheme);
}

}  // namespace pwfd
