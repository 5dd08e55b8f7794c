#include "pwfd/manufactured.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace pwfd {
namespace {

constexpr double kPi = std::numbers::pi;

cplx forcing(const ManufacturedProblem& p, double x, double z, double cross_sign) {
  const double e = std::exp(-p.k0 * (x + z));
  const double sx = std::sin(kPi * x);
  const double sz = std::sin(kPi * z);
  const double cx = std::cos(kPi * x);
  const double cz = std::cos(kPi * z);
  const double ct = std::cos(p.theta);
  const double st = std::sin(p.theta);
  // k^2 - k0^2 = k0^2 e (e + 2)
  const double mass = sx * sz * (p.k0 * p.k0 * e * (e + 2.0) - 2.0 * kPi * kPi);
  const double cross = 2.0 * kPi * p.k0 * (cx * sz * ct + sx * cz * st);
  const cplx phase = std::exp(cplx(0.0, p.k0 * (x * ct + z * st)));
  return phase * cplx(mass, cross_sign * cross);
}

}  // namespace

double cnorm(std::span<const cplx> values) {
  double m = 0.0;
  for (const cplx& v : values) m = std::max(m, std::abs(v));
  return m;
}

cplx ManufacturedProblem::exact(double x, double z) const {
  const double amp = std::sin(kPi * x) * std::sin(kPi * z);
  return amp * std::exp(cplx(0.0, k0 * (x * std::cos(theta) + z * std::sin(theta))));
}

double ManufacturedProblem::wavenumber(double x, double z) const {
  return k0 * (std::exp(-k0 * (x + z)) + 1.0);
}

cplx ManufacturedProblem::rhs(double x, double z) const { return forcing(*this, x, z, 1.0); }

cplx ManufacturedProblem::rhs_opposite_cross_sign(double x, double z) const {
  return forcing(*this, x, z, -1.0);
}

double ManufacturedProblem::k_min() const { return wavenumber(1.0, 1.0); }

double ManufacturedProblem::k_max() const { return wavenumber(0.0, 0.0); }

}  // namespace pwfd
