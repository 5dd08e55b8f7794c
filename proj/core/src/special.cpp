#include "pwfd/special.hpp"

#include <cmath>
#include <numbers>

#include "pwfd/errors.hpp"

namespace pwfd {
namespace {

constexpr long double kPiL = 3.141592653589793238462643383279502884L;
constexpr long double kEulerL = 0.577215664901532860606512090082402431L;
constexpr double kSeriesLimit = 16.0;

struct Pair {
  double j;
  double y;
};

// Ascending series in long double. Order 0 or 1.
Pair series(int order, double xd) {
  const long double x = xd;
  const long double q = -x * x / 4.0L;
  const long double lg = std::log(x / 2.0L);
  long double term = order == 0 ? 1.0L : x / 2.0L;  // (x/2)^order (-x^2/4)^k / (k! (k+order)!)
  long double j = 0.0L;
  long double s = 0.0L;
  // psi(k+1) + psi(k+order+1), psi(n+1) = -gamma + H_n
  long double hk = 0.0L;
  long double hko = order == 0 ? 0.0L : 1.0L;
  for (int k = 0; k < 200; ++k) {
    j += term;
    s += (hk + hko - 2.0L * kEulerL) * term;
    if (k > 4 && std::abs(term) < 1e-22L * (std::abs(j) + std::abs(s))) break;
    term *= q / ((k + 1.0L) * (k + 1.0L + order));
    hk += 1.0L / (k + 1.0L);
    hko += 1.0L / (k + 1.0L + order);
  }
  long double y = (2.0L / kPiL) * lg * j - s / kPiL;
  if (order == 1) y -= 2.0L / (kPiL * x);
  return {static_cast<double>(j), static_cast<double>(y)};
}

// Hankel asymptotic expansion: H^(2)_nu(x) ~ sqrt(2/(pi x)) e^{-i w} sum (-i)^k a_k / x^k.
cplx asymptotic_h2(int order, double x) {
  const double mu = 4.0 * order * order;
  const double w = x - order * std::numbers::pi / 2.0 - std::numbers::pi / 4.0;
  cplx sum = 1.0;
  cplx ik = 1.0;
  double a = 1.0;
  double prev = 1.0;
  for (int k = 1; k < 200; ++k) {
    const double odd = 2.0 * k - 1.0;
    a *= (mu - odd * odd) / (k * 8.0 * x);
    ik *= cplx(0.0, -1.0);
    const double mag = std::abs(a);
    if (mag > prev) break;  // past the smallest term
    sum += ik * a;
    if (mag < 1e-17) break;
    prev = mag;
  }
  return std::sqrt(2.0 / (std::numbers::pi * x)) * std::exp(cplx(0.0, -w)) * sum;
}

Pair eval(int order, double x) {
  if (x <= kSeriesLimit) return series(order, x);
  const cplx h = asymptotic_h2(order, x);
  return {h.real(), -h.imag()};
}

void require_positive(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("Bessel argument must be positive and finite");
}

}  // namespace

double bessel_j0(double x) {
  if (x == 0.0) return 1.0;
  require_positive(std::abs(x));
  return eval(0, std::abs(x)).j;
}

double bessel_j1(double x) {
  if (x == 0.0) return 0.0;
  require_positive(std::abs(x));
  const double v = eval(1, std::abs(x)).j;
  return x < 0.0 ? -v : v;
}

double bessel_y0(double x) {
  require_positive(x);
  return eval(0, x).y;
}

double bessel_y1(double x) {
  require_positive(x);
  return eval(1, x).y;
}

cplx hankel0_2(double x) {
  require_positive(x);
  const Pair p = eval(0, x);
  return {p.j, -p.y};
}

cplx hankel1_2(double x) {
  require_positive(x);
  const Pair p = eval(1, x);
  return {p.j, -p.y};
}

}  // namespace pwfd
