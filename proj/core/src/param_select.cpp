#include "pwfd/param_select.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "pwfd/errors.hpp"

namespace pwfd {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kPi2 = kPi * kPi;
constexpr double kRowDropTol = 1e-12;

IntervalEstimate finish_interval(double lo, double hi) {
  IntervalEstimate est;
  if (lo < kGFloor || hi > kGCeiling) {
    est.clipped = true;
    std::ostringstream msg;
    msg << "G interval [" << lo << ", " << hi << "] clamped into [" << kGFloor << ", "
        << kGCeiling << "]";
    est.warnings.push_back(msg.str());
  }
  lo = std::clamp(lo, kGFloor, kGCeiling);
  hi = std::clamp(hi, kGFloor, kGCeiling);
  if (hi - lo <= 1e-9 * hi) {
    const double mid = lo;
    lo = std::max(kGFloor, 0.95 * mid);
    hi = std::min(kGCeiling, 1.05 * mid);
    if (lo >= hi) throw DomainError("G interval is empty after clipping");
    est.widened = true;
    std::ostringstream msg;
    msg << "degenerate G interval at " << mid << " widened to [" << lo << ", " << hi << "]";
    est.warnings.push_back(msg.str());
  }
  est.interval = {lo, hi};
  return est;
}

template <int Cols, class RowFn>
auto solve_lsq(const FitConfig& config, RowFn row_fn, int& used, int& dropped, double& residual) {
  const auto samples = sample_grid(config);
  Eigen::MatrixXd A(samples.size(), Cols);
  Eigen::VectorXd b(samples.size());
  used = 0;
  dropped = 0;
  for (const Sample& s : samples) {
    const auto row = row_fn(s, config.gamma);
    double mx = 0.0;
    for (double v : row) mx = std::max(mx, std::abs(v));
    if (mx < kRowDropTol) {
      ++dropped;
      continue;
    }
    for (int c = 0; c < Cols; ++c) A(used, c) = row[c];
    b(used) = row[Cols];
    ++used;
  }
  A.conservativeResize(used, Cols);
  b.conservativeResize(used);
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(A);
  if (used < Cols || qr.rank() < Cols) {
    throw NumericalError("least-squares system is rank deficient (rank " +
                         std::to_string(qr.rank()) + " < " + std::to_string(Cols) + ")");
  }
  Eigen::VectorXd x = qr.solve(b);
  residual = (A * x - b).norm();
  return x;
}

}  // namespace

IntervalEstimate estimate_IG(double v_min, double v_max, double f_min, double f_max, double h) {
  if (!(v_min > 0.0) || !(v_max >= v_min)) throw DomainError("need 0 < v_min <= v_max");
  if (!(f_min > 0.0) || !(f_max >= f_min)) throw DomainError("need 0 < f_min <= f_max");
  if (!(h > 0.0)) throw DomainError("grid spacing h must be positive");
  return finish_interval(v_min / (h * f_max), v_max / (h * f_min));
}

IntervalEstimate interval_from_wavenumbers(double k_min, double k_max, double h) {
  if (!(k_min > 0.0) || !(k_max >= k_min)) throw DomainError("need 0 < k_min <= k_max");
  if (!(h > 0.0)) throw DomainError("grid spacing h must be positive");
  return finish_interval(2.0 * kPi / (h * k_max), 2.0 * kPi / (h * k_min));
}

double FitConfig::theta_max() const { return gamma == 1.0 ? kPi / 4.0 : kPi / 2.0; }

void FitConfig::validate() const {
  if (!(ig.min >= kGFloor) || !(ig.max <= kGCeiling) || !(ig.min < ig.max)) {
    std::ostringstream msg;
    msg << "G interval must satisfy 2 <= G_min < G_max <= 400, got [" << ig.min << ", " << ig.max
        << "]";
    throw DomainError(msg.str());
  }
  if (!(gamma > 0.0) || !std::isfinite(gamma)) throw DomainError("gamma must be positive");
  if (l < 2 || r < 2) throw DomainError("need at least two samples in theta and in G");
}

std::vector<Sample> sample_grid(const FitConfig& config) {
  config.validate();
  std::vector<Sample> out;
  out.reserve(static_cast<std::size_t>(config.l) * config.r);
  const double tmax = config.theta_max();
  const double inv_lo = 1.0 / config.ig.max;
  const double inv_hi = 1.0 / config.ig.min;
  for (int m = 0; m < config.l; ++m) {
    const double theta = tmax * m / (config.l - 1);
    for (int n = 0; n < config.r; ++n) {
      const double inv = inv_lo + (inv_hi - inv_lo) * n / (config.r - 1);
      out.push_back({theta, 1.0 / inv});
    }
  }
  return out;
}

std::array<double, 5> lsq_rows_25(const Sample& s, double gamma) {
  const auto [P, Q] = pq(s.theta, s.G, gamma);
  const double eta = 1.0 + 1.0 / (gamma * gamma);
  const double G2 = s.G * s.G;
  const double P2 = P * P;
  const double Q2 = Q * Q;
  const double s1 = -2.0 * G2 * (P - 1.0) * (Q - 1.0) *
                    (eta * P * Q - 7.0 * eta * P + 6.0 * P - eta * Q - 6.0 * Q + 7.0 * eta);
  const double s2 = -12.0 * kPi2 * (P2 - 2.0 * P + Q2 - 2.0 * Q + 2.0);
  const double s3 = -24.0 * kPi2 * (2.0 * P2 * Q2 - P2 - 2.0 * P * Q - Q2 + 2.0);
  const double s4 = 8.0 * kPi2 *
                    (2.0 * P2 * Q2 - 4.0 * P2 * Q - P2 - 4.0 * P * Q2 + 8.0 * P * Q + 2.0 * P -
                     Q2 + 2.0 * Q - 4.0);
  const double s5 = -((Q - 1.0) * (Q - 7.0) * (2.0 * P2 - 4.0 * P - 1.0) * eta +
                      3.0 * (P - Q) * ((4.0 * P - 5.0) * Q - 5.0 * P + 12.0)) *
                        G2 -
                    36.0 * kPi2;
  return {s1, s2, s3, s4, s5};
}

std::array<double, 4> lsq_rows_17(const Sample& s, double gamma) {
  const auto [P, Q] = pq(s.theta, s.G, gamma);
  const double eta = 1.0 + 1.0 / (gamma * gamma);
  const double G2 = s.G * s.G;
  const double P2 = P * P;
  const double Q2 = Q * Q;
  const double w1 = -2.0 * eta * (Q - 1.0) * (P - 1.0) * (P + Q + P * Q - 3.0) * G2;
  const double w2 = 4.0 * kPi2 * (P2 - 2.0 * P + Q2 - 2.0 * Q + 2.0);
  const double w3 = 8.0 * kPi2 * (2.0 * P2 * Q2 - P2 - 2.0 * P * Q - Q2 + 2.0);
  const double w4 = -(((Q - 1.0) * (2.0 * P2 * Q - Q - 8.0 * P + 2.0 * P2 - 1.0) * eta +
                       (P - Q) * (P + Q - 8.0)) *
                          G2 -
                      12.0 * kPi2);
  return {w1, w2, w3, w4};
}

ValidationStats validate_fit(const OptimalScheme& scheme, const FitConfig& config, int n_theta,
                             int n_G) {
  FitConfig grid = config;
  grid.l = n_theta;
  grid.r = n_G;
  ValidationStats stats;
  for (const Sample& s : sample_grid(grid)) {
    const DispersionResult d = evaluate_dispersion(scheme, s.theta, s.G, config.gamma);
    if (d.status != DispersionStatus::ok) {
      ++stats.excluded;
      continue;
    }
    ++stats.evaluated;
    stats.max_abs_J = std::max(stats.max_abs_J, std::abs(d.vph_ratio - 1.0));
  }
  return stats;
}

FitReport<SchemeParams25> fit_params_25(const FitConfig& config) {
  FitReport<SchemeParams25> rep;
  const Eigen::VectorXd x =
      solve_lsq<4>(config, lsq_rows_25, rep.rows_used, rep.rows_dropped, rep.residual_norm);
  rep.params = {x(0), x(1), x(2), x(3)};
  rep.params.validate();
  if (!(rep.params.a1 > 0.0 && rep.params.a1 <= 1.0)) {
    rep.out_of_range = true;
    rep.warnings.push_back("fitted a1 = " + std::to_string(rep.params.a1) + " lies outside (0, 1]");
  }
  rep.fitted = validate_fit(rep.params, config);
  rep.baseline = validate_fit(SchemeParams25{}, config);
  return rep;
}

FitReport<SchemeParams17> fit_params_17(const FitConfig& config) {
  FitReport<SchemeParams17> rep;
  const Eigen::VectorXd x =
      solve_lsq<3>(config, lsq_rows_17, rep.rows_used, rep.rows_dropped, rep.residual_norm);
  rep.params = {x(0), x(1), x(2)};
  rep.params.validate();
  if (!(rep.params.b1 > 0.0 && rep.params.b1 <= 1.0)) {
    rep.out_of_range = true;
    rep.warnings.push_back("fitted b1 = " + std::to_string(rep.params.b1) + " lies outside (0, 1]");
  }
  rep.fitted = validate_fit(rep.params, config);
  rep.baseline = validate_fit(SchemeParams17{}, config);
  return rep;
}

Scheme scheme_for(SchemeKind kind, const FitConfig& config) {
  switch (kind) {
    case SchemeKind::pw25: return fit_params_25(config).params;
    case SchemeKind::pw17: return fit_params_17(config).params;
    case SchemeKind::nc4: return Nc4Scheme{};
    case SchemeKind::conventional5: return Conventional5Scheme{};
  }
  throw DomainError("unknown scheme kind");
}

}  // namespace pwfd
