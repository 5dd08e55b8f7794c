#pragma once

#include <array>
#include <string>
#include <vector>

#include "pwfd/dispersion.hpp"

namespace pwfd {

struct GInterval {
  double min = 2.0;
  double max = 400.0;
};

inline constexpr double kGFloor = 2.0;
inline constexpr double kGCeiling = 400.0;

struct IntervalEstimate {
  GInterval interval;
  bool clipped = false;   // clamped into [2, 400]
  bool widened = false;   // degenerate interval opened up
  std::vector<std::string> warnings;
};

// [v_min / (h f_max), v_max / (h f_min)], clamped into [2, 400]. A degenerate
// result is widened to +-5 % (inside the bounds).
IntervalEstimate estimate_IG(double v_min, double v_max, double f_min, double f_max, double h);
// Same from a wavenumber range: [2 pi / (h k_max), 2 pi / (h k_min)].
IntervalEstimate interval_from_wavenumbers(double k_min, double k_max, double h);

struct FitConfig {
  GInterval ig{};
  double gamma = 1.0;
  int l = 64;  // theta samples
  int r = 64;  // 1/G samples

  // [0, pi/4] for gamma == 1, [0, pi/2] otherwise.
  double theta_max() const;
  void validate() const;  // throws DomainError
};

struct Sample {
  double theta = 0.0;
  double G = 0.0;
};

std::vector<Sample> sample_grid(const FitConfig& config);

// Rows of the linearised identity G^2 N - 4 pi^2 D = 0. The last entry is the
// right-hand side.
std::array<double, 5> lsq_rows_25(const Sample& s, double gamma);
std::array<double, 4> lsq_rows_17(const Sample& s, double gamma);

struct ValidationStats {
  double max_abs_J = 0.0;
  int evaluated = 0;
  int excluded = 0;  // degenerate or evanescent samples
};

// max |J| over an n_theta x n_G grid spanning the fit ranges.
ValidationStats validate_fit(const OptimalScheme& scheme, const FitConfig& config,
                             int n_theta = 128, int n_G = 128);

template <class Params>
struct FitReport {
  Params params;
  double residual_norm = 0.0;
  int rows_used = 0;
  int rows_dropped = 0;
  ValidationStats fitted;
  ValidationStats baseline;
  bool out_of_range = false;  // a1 or b1 outside (0, 1]
  std::vector<std::string> warnings;
};

FitReport<SchemeParams25> fit_params_25(const FitConfig& config);
FitReport<SchemeParams17> fit_params_17(const FitConfig& config);

// Fitted parameters for pw25 / pw17, the fixed stencil otherwise.
Scheme scheme_for(SchemeKind kind, const FitConfig& config);

}  // namespace pwfd
