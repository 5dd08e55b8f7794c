#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "pwfd/dispersion.hpp"
#include "pwfd/errors.hpp"
#include "pwfd/stencil.hpp"

namespace {

using pwfd::cplx;

TEST(Stencil, BaseFluxReducesToFivePointFourthOrder) {
  const std::array<cplx, 4> ones{1.0, 1.0, 1.0, 1.0};
  const auto w = pwfd::base_flux_weights(ones, 0.5);
  const double expect[5] = {-1.0 / 12, 4.0 / 3, -5.0 / 2, 4.0 / 3, -1.0 / 12};
  for (int i = 0; i < 5; ++i) EXPECT_NEAR(w[i].real(), expect[i] / 0.25, 1e-13);
}

TEST(Stencil, FluxWeightsAnnihilateConstants) {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> u(0.5, 2.0);
  for (int t = 0; t < 10; ++t) {
    const std::array<cplx, 4> a{cplx(u(rng), u(rng)), cplx(u(rng), 0.1), u(rng), u(rng)};
    const auto w = pwfd::base_flux_weights(a, 0.3);
    cplx sum = 0.0;
    for (const cplx& v : w) sum += v;
    EXPECT_LT(std::abs(sum), 1e-12);
  }
}

TEST(Stencil, MassOperatorsAreNormalisedAverages) {
  for (int j = 1; j <= 4; ++j) {
    const pwfd::Stencil s = pwfd::mass_stencil(j);
    cplx sum = 0.0;
    for (const auto& e : s.entries()) sum += e.weight;
    EXPECT_NEAR(sum.real(), 1.0, 1e-15) << "I" << j;
    EXPECT_EQ(sum.imag(), 0.0);
  }
  EXPECT_THROW(pwfd::mass_stencil(0), pwfd::DomainError);
  EXPECT_THROW(pwfd::mass_stencil(5), pwfd::DomainError);
}

TEST(Stencil, FootprintSizes) {
  EXPECT_EQ(pwfd::footprint(pwfd::SchemeParams25{}).size(), 25u);
  EXPECT_EQ(pwfd::footprint(pwfd::SchemeParams17{}).size(), 17u);
  EXPECT_EQ(pwfd::footprint(pwfd::Nc4Scheme{}).size(), 9u);
  EXPECT_EQ(pwfd::footprint(pwfd::Conventional5Scheme{}).size(), 5u);
}

TEST(Stencil, GeneralWeightsStayInsideFootprint) {
  const auto f = oracle::constant_fields(3.0, 0.1, 0.7);
  const pwfd::SchemeParams25 p25{0.8, 0.2, -0.1, 0.3};
  const pwfd::SchemeParams17 p17{0.9, 0.15, -0.05};
  for (const pwfd::Scheme& s : {pwfd::Scheme{p25}, pwfd::Scheme{p17}}) {
    const auto st = pwfd::build_stencil(s, f, {4, 4});
    const auto fp = pwfd::footprint(s);
    for (const auto& e : st.entries()) {
      EXPECT_NE(std::find(fp.begin(), fp.end(), std::make_pair(e.di, e.dj)), fp.end())
          << e.di << "," << e.dj;
    }
  }
}

TEST(Stencil, NodeTooCloseToEdgeIsRejected) {
  const auto f = oracle::constant_fields(1.0, 0.1, 1.0);
  EXPECT_THROW(pwfd::build_stencil(pwfd::SchemeParams25{}, f, {1, 4}), pwfd::DomainError);
  EXPECT_NO_THROW(pwfd::build_stencil(pwfd::Conventional5Scheme{}, f, {1, 4}));
}

TEST(Stencil, SchemeNamesRoundTrip) {
  for (auto k : {pwfd::SchemeKind::pw25, pwfd::SchemeKind::pw17, pwfd::SchemeKind::nc4,
                 pwfd::SchemeKind::conventional5}) {
    EXPECT_EQ(pwfd::parse_scheme_kind(pwfd::to_string(k)), k);
  }
  EXPECT_THROW(pwfd::parse_scheme_kind("pw9"), pwfd::DomainError);
}

// Baseline parameters must give the non-compact fourth-order stencil, also
// where A, B, C carry PML stretching.
TEST(Stencil, BaselineReducesToNc4IncludingPml) {
  pwfd::GridSpec g{41, 33, 5.0, 0.8, 0.0, 0.0};
  const auto medium = pwfd::MediumModel::from_velocity(
      g, [](double x, double z) { return 1500.0 + 2.0 * x + z; }, 12.0);
  pwfd::PmlConfig pml{40.0, 1.79, 15.0, {}};
  const auto fields = pwfd::coefficient_fields(medium, pml);
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> mi(2, g.nx - 3), ni(2, g.nz - 3);
  int in_pml = 0;
  for (int t = 0; t < 50; ++t) {
    // First half deliberately inside the layer.
    const pwfd::NodeIndex node = t < 25 ? pwfd::NodeIndex{2 + t % 5, ni(rng)}
                                        : pwfd::NodeIndex{mi(rng), ni(rng)};
    in_pml += pwfd::inside_pml(g.x(node.m), g.z(node.n), g, pml);
    const auto ref = pwfd::nc4_stencil(fields, node);
    const auto s25 = pwfd::pw25_stencil(pwfd::SchemeParams25{}, fields, node);
    const auto s17 = pwfd::pw17_stencil(pwfd::SchemeParams17{}, fields, node);
    for (int dj = -2; dj <= 2; ++dj) {
      for (int di = -2; di <= 2; ++di) {
        const double scale = std::max(1.0, std::abs(ref.at(0, 0)));
        EXPECT_LE(std::abs(s25.at(di, dj) - ref.at(di, dj)), 1e-14 * scale);
        EXPECT_LE(std::abs(s17.at(di, dj) - ref.at(di, dj)), 1e-14 * scale);
      }
    }
  }
  EXPECT_GE(in_pml, 25);
}

// Grouping oracle: constant-medium weights collected by offset class.
TEST(Stencil, ConstantMediumWeightsMatchSymbols) {
  std::mt19937 rng(2024);
  std::uniform_real_distribution<double> par(-0.5, 1.2), kk(0.5, 20.0), hh(0.01, 0.2),
      gg(0.4, 2.5);
  const int cls25[9][2] = {{2, 2}, {1, 2}, {0, 2}, {2, 1}, {1, 1}, {0, 1}, {2, 0}, {1, 0}, {0, 0}};
  const int cls17[7][2] = {{2, 2}, {0, 2}, {1, 1}, {0, 1}, {2, 0}, {1, 0}, {0, 0}};
  for (int t = 0; t < 20; ++t) {
    const double k = kk(rng), h = hh(rng), gamma = gg(rng);
    const auto f = oracle::constant_fields(k, h, gamma);
    const pwfd::SchemeParams25 p25{par(rng), par(rng), par(rng), par(rng)};
    const pwfd::SchemeParams17 p17{par(rng), par(rng), par(rng)};
    const double eta = 1.0 + 1.0 / (gamma * gamma);

    const auto s25 = pwfd::pw25_stencil(p25, f, {4, 4});
    const auto T25 = pwfd::symbols_25(p25, k, h, eta);
    for (int c = 0; c < 9; ++c) {
      double spread = 0.0;
      const cplx w = oracle::class_weight(s25, cls25[c][0], cls25[c][1], &spread);
      const double scale = std::max(std::abs(T25[c]), 1.0 / (h * h));
      EXPECT_LE(spread, 1e-12 * scale);
      EXPECT_LE(std::abs(w - T25[c]), 1e-12 * scale) << "T*" << c + 1 << " draw " << t;
    }

    const auto s17 = pwfd::pw17_stencil(p17, f, {4, 4});
    const auto T17 = pwfd::symbols_17(p17, k, h, eta);
    for (int c = 0; c < 7; ++c) {
      double spread = 0.0;
      const cplx w = oracle::class_weight(s17, cls17[c][0], cls17[c][1], &spread);
      const double scale = std::max(std::abs(T17[c]), 1.0 / (h * h));
      EXPECT_LE(spread, 1e-12 * scale);
      EXPECT_LE(std::abs(w - T17[c]), 1e-12 * scale) << "T~" << c + 1 << " draw " << t;
    }
    EXPECT_EQ(s17.at(1, 2), cplx(0.0));
    EXPECT_EQ(s17.at(2, 1), cplx(0.0));
  }
}

double local_order(const pwfd::Scheme& scheme, double gamma) {
  const auto c = oracle::smooth_coefs();
  const auto p = oracle::smooth_p();
  const double e1 = oracle::taylor_defect(scheme, c, p, 0.3, -0.2, 0.04, gamma);
  const double e2 = oracle::taylor_defect(scheme, c, p, 0.3, -0.2, 0.02, gamma);
  return std::log2(e1 / e2);
}

TEST(Stencil, FourthOrderTaylorDefect) {
  const pwfd::SchemeParams25 p25{0.93, -0.4, 0.02, 0.3};
  const pwfd::SchemeParams17 p17{0.97, 0.14, -0.004};
  for (double gamma : {0.5, 1.0, 2.0}) {
    for (const pwfd::Scheme& s :
         {pwfd::Scheme{p25}, pwfd::Scheme{p17}, pwfd::Scheme{pwfd::Nc4Scheme{}}}) {
      const double order = local_order(s, gamma);
      EXPECT_GE(order, 3.7) << pwfd::scheme_name(s) << " gamma " << gamma;
      EXPECT_LE(order, 4.3) << pwfd::scheme_name(s) << " gamma " << gamma;
    }
  }
}

TEST(Stencil, ConventionalIsSecondOrder) {
  const double order = local_order(pwfd::Conventional5Scheme{}, 1.0);
  EXPECT_NEAR(order, 2.0, 0.3);
}

}  // namespace
