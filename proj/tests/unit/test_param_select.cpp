#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <random>

#include "pwfd/errors.hpp"
#include "pwfd/param_select.hpp"

namespace {

constexpr double kPi = std::numbers::pi;

TEST(Interval, FromVelocitiesAndFrequencies) {
  const auto e = pwfd::estimate_IG(1500.0, 3000.0, 5.0, 25.0, 10.0);
  EXPECT_DOUBLE_EQ(e.interval.min, 6.0);
  EXPECT_DOUBLE_EQ(e.interval.max, 60.0);
  EXPECT_FALSE(e.clipped);
  EXPECT_FALSE(e.widened);
}

TEST(Interval, ClampedIntoBounds) {
  const auto e = pwfd::estimate_IG(100.0, 5000.0, 1.0, 100.0, 1.0);
  EXPECT_TRUE(e.clipped);
  EXPECT_DOUBLE_EQ(e.interval.min, pwfd::kGFloor);
  EXPECT_DOUBLE_EQ(e.interval.max, pwfd::kGCeiling);
  EXPECT_FALSE(e.warnings.empty());
}

TEST(Interval, DegenerateIsWidened) {
  const auto e = pwfd::estimate_IG(2000.0, 2000.0, 20.0, 20.0, 10.0);
  EXPECT_TRUE(e.widened);
  EXPECT_DOUBLE_EQ(e.interval.min, 9.5);
  EXPECT_DOUBLE_EQ(e.interval.max, 10.5);
}

TEST(Interval, FromWavenumbers) {
  const auto e = pwfd::interval_from_wavenumbers(50.0, 100.0, 0.01);
  EXPECT_NEAR(e.interval.min, 2 * kPi, 1e-12);
  EXPECT_NEAR(e.interval.max, 4 * kPi, 1e-12);
  EXPECT_THROW(pwfd::interval_from_wavenumbers(0.0, 1.0, 0.1), pwfd::DomainError);
  EXPECT_THROW(pwfd::estimate_IG(1.0, 2.0, 1.0, 2.0, -1.0), pwfd::DomainError);
}

TEST(Sampling, GridShape) {
  pwfd::FitConfig c{{4.0, 8.0}, 1.0, 5, 3};
  const auto s = pwfd::sample_grid(c);
  ASSERT_EQ(s.size(), 15u);
  double tmin = 1e9, tmax = -1, gmin = 1e9, gmax = 0;
  for (const auto& x : s) {
    tmin = std::min(tmin, x.theta);
    tmax = std::max(tmax, x.theta);
    gmin = std::min(gmin, x.G);
    gmax = std::max(gmax, x.G);
  }
  EXPECT_DOUBLE_EQ(tmin, 0.0);
  EXPECT_NEAR(tmax, kPi / 4, 1e-15);
  EXPECT_NEAR(gmin, 4.0, 1e-12);
  EXPECT_NEAR(gmax, 8.0, 1e-12);
  // middle G sample is the harmonic mean of the ends
  bool found = false;
  for (const auto& x : s) found |= std::abs(x.G - 2.0 / (1.0 / 4 + 1.0 / 8)) < 1e-12;
  EXPECT_TRUE(found);
  c.gamma = 0.5;
  EXPECT_DOUBLE_EQ(c.theta_max(), kPi / 2);
}

TEST(Sampling, RejectsBadConfig) {
  EXPECT_THROW(pwfd::sample_grid({{1.0, 8.0}, 1.0, 8, 8}), pwfd::DomainError);
  EXPECT_THROW(pwfd::sample_grid({{4.0, 3.0}, 1.0, 8, 8}), pwfd::DomainError);
  EXPECT_THROW(pwfd::sample_grid({{4.0, 8.0}, 1.0, 1, 8}), pwfd::DomainError);
  EXPECT_THROW(pwfd::sample_grid({{4.0, 8.0}, -1.0, 8, 8}), pwfd::DomainError);
}

// Rows are the identity G^2 N - 4 pi^2 D, linear in the free parameters, with
// N and D taken from the rational form.
TEST(LeastSquares, RowsMatchRationalForm25) {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> par(-1.0, 1.5), th(0.0, kPi / 2), GG(2.5, 50.0);
  for (double gamma : {0.5, 1.0, 1.7}) {
    const double eta = 1.0 + 1.0 / (gamma * gamma);
    for (int t = 0; t < 10; ++t) {
      const pwfd::SchemeParams25 p{par(rng), par(rng), par(rng), par(rng)};
      const pwfd::Sample s{th(rng), GG(rng)};
      const auto row = pwfd::lsq_rows_25(s, gamma);
      const auto [P, Q] = pwfd::pq(s.theta, s.G, gamma);
      const auto rf = pwfd::rational_form(p, eta);
      const double lhs = row[0] * p.a1 + row[1] * p.c2 + row[2] * p.c3 + row[3] * p.c4 - row[4];
      const double ref = s.G * s.G * rf.N(P, Q) - 4 * kPi * kPi * rf.D(P, Q);
      EXPECT_NEAR(lhs, ref, 1e-9 * (1.0 + std::abs(ref) + s.G * s.G));
    }
  }
}

TEST(LeastSquares, RowsMatchRationalForm17) {
  std::mt19937 rng(4);
  std::uniform_real_distribution<double> par(-1.0, 1.5), th(0.0, kPi / 2), GG(2.5, 50.0);
  for (double gamma : {0.5, 1.0, 1.7}) {
    const double eta = 1.0 + 1.0 / (gamma * gamma);
    for (int t = 0; t < 10; ++t) {
      const pwfd::SchemeParams17 p{par(rng), par(rng), par(rng)};
      const pwfd::Sample s{th(rng), GG(rng)};
      const auto row = pwfd::lsq_rows_17(s, gamma);
      const auto [P, Q] = pwfd::pq(s.theta, s.G, gamma);
      const auto rf = pwfd::rational_form(p, eta);
      const double lhs = row[0] * p.b1 + row[1] * p.d2 + row[2] * p.d3 - row[3];
      const double ref = s.G * s.G * rf.N(P, Q) - 4 * kPi * kPi * rf.D(P, Q);
      EXPECT_NEAR(lhs, -ref, 1e-9 * (1.0 + std::abs(ref) + s.G * s.G));
    }
  }
}

TEST(LeastSquares, SolutionIsStationary) {
  const pwfd::FitConfig c{{4.0, 5.0}, 1.0, 64, 64};
  const auto rep = pwfd::fit_params_25(c);
  Eigen::Vector4d grad = Eigen::Vector4d::Zero();
  double scale = 0.0;
  for (const auto& s : pwfd::sample_grid(c)) {
    const auto r = pwfd::lsq_rows_25(s, c.gamma);
    const double res = r[0] * rep.params.a1 + r[1] * rep.params.c2 + r[2] * rep.params.c3 +
                       r[3] * rep.params.c4 - r[4];
    for (int i = 0; i < 4; ++i) {
      grad(i) += r[i] * res;
      scale = std::max(scale, std::abs(r[i] * r[4]));
    }
  }
  EXPECT_LT(grad.norm(), 1e-8 * scale * 4096);
  EXPECT_EQ(rep.rows_used + rep.rows_dropped, 64 * 64);
}

TEST(LeastSquares, FitImprovesOnBaseline) {
  const pwfd::GInterval intervals[] = {{2.5, 3.0}, {4.0, 5.0}, {6.0, 8.0}, {10.0, 400.0}};
  for (double gamma : {0.5, 1.0}) {
    for (const auto& ig : intervals) {
      const pwfd::FitConfig c{ig, gamma, 64, 64};
      const auto r25 = pwfd::fit_params_25(c);
      const auto r17 = pwfd::fit_params_17(c);
      EXPECT_LE(r25.fitted.max_abs_J, r25.baseline.max_abs_J) << ig.min << " " << gamma;
      EXPECT_LE(r17.fitted.max_abs_J, r17.baseline.max_abs_J) << ig.min << " " << gamma;
      EXPECT_GT(r25.fitted.evaluated, 0);
      EXPECT_GT(r17.fitted.evaluated, 0);
    }
  }
}

TEST(LeastSquares, StableUnderSampleRefinement) {
  const pwfd::GInterval ig{6.0, 8.0};
  const auto a = pwfd::fit_params_17({ig, 1.0, 64, 64});
  const auto b = pwfd::fit_params_17({ig, 1.0, 128, 128});
  EXPECT_NEAR(a.params.b1, b.params.b1, 1e-3);
  EXPECT_NEAR(a.fitted.max_abs_J, b.fitted.max_abs_J, 0.1 * b.fitted.max_abs_J);
}

TEST(LeastSquares, FixedSchemesPassThrough) {
  const pwfd::FitConfig c{{4.0, 5.0}, 1.0, 16, 16};
  EXPECT_TRUE(std::holds_alternative<pwfd::Nc4Scheme>(pwfd::scheme_for(pwfd::SchemeKind::nc4, c)));
  EXPECT_TRUE(std::holds_alternative<pwfd::SchemeParams17>(
      pwfd::scheme_for(pwfd::SchemeKind::pw17, c)));
}

}  // namespace
