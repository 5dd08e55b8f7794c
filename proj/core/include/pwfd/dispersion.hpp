#pragma once

#include <array>
#include <variant>

#include "pwfd/stencil.hpp"

namespace pwfd {

using OptimalScheme = std::variant<SchemeParams25, SchemeParams17>;

struct PQ {
  double P = 1.0;
  double Q = 1.0;
};

// P = cos(2 pi cos(theta) / G), Q = cos(gamma 2 pi sin(theta) / G).
PQ pq(double theta, double G, double gamma);

// Closed-form plane-wave symbols. Class order (x-offset, z-offset):
//   25p: (2,2) (1,2) (0,2) (2,1) (1,1) (0,1) (2,0) (1,0) (0,0)
//   17p: (2,2) (0,2) (1,1) (0,1) (2,0) (1,0) (0,0)
std::array<double, 9> symbols_25(const SchemeParams25& p, double k, double h, double eta);
std::array<double, 7> symbols_17(const SchemeParams17& p, double k, double h, double eta);

// Trigonometric weights f_i(P, Q) with sum_i f_i T_i = 0 for a supported plane wave.
std::array<double, 9> class_weights_25(double P, double Q);
std::array<double, 7> class_weights_17(double P, double Q);

// sum_{i,j <= 2} c[i][j] P^i Q^j
struct BiQuadratic {
  std::array<std::array<double, 3>, 3> c{};

  double operator()(double P, double Q) const;
  double dP(double P, double Q) const;
  double dQ(double P, double Q) const;

  // Same polynomial in (u, w) = (1 - P, 1 - Q).
  BiQuadratic shifted() const;
};

// (k_N h)^2 = N(P, Q) / D(P, Q).
struct RationalForm {
  BiQuadratic N;
  BiQuadratic D;
};

RationalForm rational_form(const SchemeParams25& p, double eta);
RationalForm rational_form(const SchemeParams17& p, double eta);
RationalForm rational_form(const OptimalScheme& scheme, double eta);

enum class DispersionStatus { ok, degenerate, evanescent };

struct DispersionResult {
  DispersionStatus status = DispersionStatus::ok;
  double N_val = 0.0;
  double D_val = 0.0;
  double kN_over_k = 0.0;  // == vph_ratio
  double vph_ratio = 0.0;
  double vgr_ratio = 0.0;
};

inline constexpr double kDegenerateDenominator = 1e-12;

// Never throws on degenerate / evanescent samples; inspect status.
DispersionResult evaluate_dispersion(const OptimalScheme& scheme, double theta, double G,
                                     double gamma);

// These throw DispersionError when status != ok.
double numerical_wavenumber(const OptimalScheme& scheme, double theta, double G, double gamma,
                            double h);
double phase_velocity_ratio(const OptimalScheme& scheme, double theta, double G, double gamma);
double group_velocity_ratio(const OptimalScheme& scheme, double theta, double G, double gamma);
// J = (G / 2 pi) sqrt(N / D) - 1.
double dispersion_functional(const OptimalScheme& scheme, double theta, double G, double gamma);

}  // namespace pwfd
