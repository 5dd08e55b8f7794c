#include "pwfd/dispersion.hpp"

#include <cmath>
#include <numbers>

#include "pwfd/errors.hpp"

namespace pwfd {
namespace {

constexpr double kPi = std::numbers::pi;

void check_sample(double G, double gamma) {
  if (!(G > 0.0)) throw DomainError("gridpoints per wavelength G must be positive");
  if (!(gamma > 0.0)) throw DomainError("aspect ratio gamma must be positive");
}

const char* status_text(DispersionStatus s) {
  return s == DispersionStatus::degenerate ? "degenerate denominator" : "evanescent numerical mode";
}

DispersionResult checked(const OptimalScheme& scheme, double theta, double G, double gamma) {
  DispersionResult r = evaluate_dispersion(scheme, theta, G, gamma);
  if (r.status != DispersionStatus::ok) {
    throw DispersionError(std::string("no propagating numerical wave: ") + status_text(r.status));
  }
  return r;
}

}  // namespace

PQ pq(double theta, double G, double gamma) {
  check_sample(G, gamma);
  const double kh = 2.0 * kPi / G;
  return {std::cos(kh * std::cos(theta)), std::cos(gamma * kh * std::sin(theta))};
}

std::array<double, 9> symbols_25(const SchemeParams25& p, double k, double h, double eta) {
  const double a1 = p.a1;
  const double ih2 = 1.0 / (h * h);
  const double k2 = k * k;
  return {
      (1.0 - a1) * eta / 72.0 * ih2 - (3.0 * p.c3 - p.c4) / 36.0 * k2,
      (eta + 3.0) * (a1 - 1.0) / 18.0 * ih2 - p.c4 / 9.0 * k2,
      (5.0 - a1 * (eta + 4.0)) / 12.0 * ih2 - p.c2 / 12.0 * k2,
      (4.0 * eta - 3.0) * (a1 - 1.0) / 18.0 * ih2 - p.c4 / 9.0 * k2,
      8.0 * eta * (1.0 - a1) / 9.0 * ih2 + (3.0 * p.c3 + 4.0 * p.c4) / 9.0 * k2,
      (a1 * (4.0 * eta + 1.0) - 5.0) / 3.0 * ih2 + p.c2 / 3.0 * k2,
      (4.0 * a1 + 5.0 * eta * (1.0 - a1) - 5.0) / 12.0 * ih2 - p.c2 / 12.0 * k2,
      (5.0 * eta * (a1 - 1.0) - a1 + 5.0) / 3.0 * ih2 + p.c2 / 3.0 * k2,
      -5.0 * a1 * eta / 2.0 * ih2 + p.c1() * k2,
  };
}

std::array<double, 7> symbols_17(const SchemeParams17& p, double k, double h, double eta) {
  const double b1 = p.b1;
  const double ih2 = 1.0 / (h * h);
  const double k2 = k * k;
  return {
      (b1 - 1.0) * eta / 24.0 * ih2 - p.d3 / 12.0 * k2,
      (1.0 - b1 * eta) / 12.0 * ih2 - p.d2 / 12.0 * k2,
      2.0 * (1.0 - b1) * eta / 3.0 * ih2 + p.d3 / 3.0 * k2,
      (4.0 * b1 * eta - 4.0) / 3.0 * ih2 + p.d2 / 3.0 * k2,
      ((1.0 - b1) * eta - 1.0) / 12.0 * ih2 - p.d2 / 12.0 * k2,
      (4.0 * (b1 - 1.0) * eta + 4.0) / 3.0 * ih2 + p.d2 / 3.0 * k2,
      -5.0 * b1 * eta / 2.0 * ih2 + p.d1() * k2,
  };
}

std::array<double, 9> class_weights_25(double P, double Q) {
  const double p2 = 2.0 * P * P - 1.0;
  const double q2 = 2.0 * Q * Q - 1.0;
  return {4.0 * p2 * q2, 4.0 * P * q2, 2.0 * q2, 4.0 * Q * p2, 4.0 * P * Q,
          2.0 * Q,       2.0 * p2,     2.0 * P,  1.0};
}

std::array<double, 7> class_weights_17(double P, double Q) {
  const double p2 = 2.0 * P * P - 1.0;
  const double q2 = 2.0 * Q * Q - 1.0;
  return {4.0 * p2 * q2, 2.0 * q2, 4.0 * P * Q, 2.0 * Q, 2.0 * p2, 2.0 * P, 1.0};
}

double BiQuadratic::operator()(double P, double Q) const {
  const double pp[3] = {1.0, P, P * P};
  const double qq[3] = {1.0, Q, Q * Q};
  double s = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) s += c[i][j] * pp[i] * qq[j];
  return s;
}

double BiQuadratic::dP(double P, double Q) const {
  const double qq[3] = {1.0, Q, Q * Q};
  double s = 0.0;
  for (int j = 0; j < 3; ++j) s += (c[1][j] + 2.0 * c[2][j] * P) * qq[j];
  return s;
}

double BiQuadratic::dQ(double P, double Q) const {
  const double pp[3] = {1.0, P, P * P};
  double s = 0.0;
  for (int i = 0; i < 3; ++i) s += (c[i][1] + 2.0 * c[i][2] * Q) * pp[i];
  return s;
}

BiQuadratic BiQuadratic::shifted() const {
  constexpr double binom[3][3] = {{1, 0, 0}, {1, 1, 0}, {1, 2, 1}};
  BiQuadratic s;
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) {
      double v = 0.0;
      for (int i = a; i < 3; ++i)
        for (int j = b; j < 3; ++j) v += c[i][j] * binom[i][a] * binom[j][b];
      s.c[a][b] = ((a + b) % 2 == 0) ? v : -v;
    }
  }
  return s;
}

RationalForm rational_form(const SchemeParams25& p, double eta) {
  const double a1 = p.a1;
  const double c2 = p.c2;
  const double c3 = p.c3;
  const double c4 = p.c4;
  RationalForm f;
  auto& n = f.N.c;
  n[2][2] = 2.0 * eta * (1.0 - a1);
  n[1][1] = 32.0 * eta * (1.0 - a1);
  n[2][1] = 4.0 * (4.0 * eta - 3.0) * (a1 - 1.0);
  n[1][2] = 4.0 * (eta + 3.0) * (a1 - 1.0);
  n[2][0] = 14.0 * (1.0 - a1) * eta + 3.0 * (4.0 * a1 - 5.0);
  n[0][2] = -(2.0 * a1 + 1.0) * eta - 3.0 * (4.0 * a1 - 5.0);
  n[0][0] = -7.0 * (2.0 * a1 + 1.0) * eta;
  n[1][0] = 28.0 * (a1 - 1.0) * eta + 12.0 * (3.0 - a1);
  n[0][1] = 8.0 * (2.0 * a1 + 1.0) * eta + 12.0 * (a1 - 3.0);
  auto& d = f.D.c;
  d[2][2] = 4.0 * (3.0 * c3 - c4);
  d[2][1] = d[1][2] = 8.0 * c4;
  d[2][0] = d[0][2] = 3.0 * c2 - 6.0 * c3 + 2.0 * c4;
  d[1][1] = -4.0 * (3.0 * c3 + 4.0 * c4);
  d[1][0] = d[0][1] = -2.0 * (3.0 * c2 + 2.0 * c4);
  d[0][0] = 6.0 * c2 + 12.0 * c3 + 8.0 * c4 - 9.0;
  return f;
}

RationalForm rational_form(const SchemeParams17& p, double eta) {
  const double b1 = p.b1;
  RationalForm f;
  auto& n = f.N.c;
  n[2][2] = 2.0 * eta * (b1 - 1.0);
  n[2][0] = (2.0 - 2.0 * b1) * eta - 1.0;
  n[1][1] = -8.0 * eta * (b1 - 1.0);
  n[1][0] = 8.0 * ((b1 - 1.0) * eta + 1.0);
  n[0][2] = (1.0 - 2.0 * b1) * eta + 1.0;
  n[0][1] = 8.0 * (b1 * eta - 1.0);
  n[0][0] = -eta - 6.0 * b1 * eta;
  auto& d = f.D.c;
  d[2][2] = 4.0 * p.d3;
  d[2][0] = d[0][2] = p.d2 - 2.0 * p.d3;
  d[1][1] = -4.0 * p.d3;
  d[1][0] = d[0][1] = -2.0 * p.d2;
  d[0][0] = 2.0 * p.d2 + 4.0 * p.d3 - 3.0;
  return f;
}

RationalForm rational_form(const OptimalScheme& scheme, double eta) {
  return std::visit([eta](const auto& p) { return rational_form(p, eta); }, scheme);
}

DispersionResult evaluate_dispersion(const OptimalScheme& scheme, double theta, double G,
                                     double gamma) {
  check_sample(G, gamma);
  const double eta = 1.0 + 1.0 / (gamma * gamma);
  const RationalForm f = rational_form(scheme, eta);
  const double tau = 2.0 * kPi / G;  // kh
  const double cx = std::cos(theta);
  const double sz = gamma * std::sin(theta);

  // Work in u = 1 - P, w = 1 - Q to avoid cancellation for large G. The
  // derivative part annihilates constants, so N has no constant term.
  BiQuadratic N = f.N.shifted();
  const BiQuadratic D = f.D.shifted();
  N.c[0][0] = 0.0;
  const double su = std::sin(0.5 * tau * cx);
  const double sw = std::sin(0.5 * tau * sz);
  const double u = 2.0 * su * su;
  const double w = 2.0 * sw * sw;

  DispersionResult r;
  r.N_val = N(u, w);
  r.D_val = D(u, w);
  if (std::abs(r.D_val) < kDegenerateDenominator) {
    r.status = DispersionStatus::degenerate;
    return r;
  }
  const double ratio = r.N_val / r.D_val;
  if (ratio < 0.0) {
    r.status = DispersionStatus::evanescent;
    return r;
  }
  const double kNh = std::sqrt(ratio);
  r.kN_over_k = kNh / tau;
  r.vph_ratio = r.kN_over_k;

  // d(kN h)/d(kh) through u(tau), w(tau).
  const double du = cx * std::sin(tau * cx);
  const double dw = sz * std::sin(tau * sz);
  const double dN = N.dP(u, w) * du + N.dQ(u, w) * dw;
  const double dD = D.dP(u, w) * du + D.dQ(u, w) * dw;
  const double dratio = (dN * r.D_val - r.N_val * dD) / (r.D_val * r.D_val);
  r.vgr_ratio = kNh > 0.0 ? dratio / (2.0 * kNh) : 0.0;
  return r;
}

double numerical_wavenumber(const OptimalScheme& scheme, double theta, double G, double gamma,
                            double h) {
  if (!(h > 0.0)) throw DomainError("grid spacing h must be positive");
  const DispersionResult r = checked(scheme, theta, G, gamma);
  return std::sqrt(r.N_val / r.D_val) / h;
}

double phase_velocity_ratio(const OptimalScheme& scheme, double theta, double G, double gamma) {
  return checked(scheme, theta, G, gamma).vph_ratio;
}

double group_velocity_ratio(const OptimalScheme& scheme, double theta, double G, double gamma) {
  return checked(scheme, theta, G, gamma).vgr_ratio;
}

double dispersion_functional(const OptimalScheme& scheme, double theta, double G, double gamma) {
  return checked(scheme, theta, G, gamma).vph_ratio - 1.0;
}

}  // namespace pwfd
