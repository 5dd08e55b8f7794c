#pragma once

#include <filesystem>
#include <optional>
#include <vector>

#include "pwfd/linsys.hpp"
#include "pwfd/param_select.hpp"

namespace pwfd {

// (1 - 2 pi^2 f^2 t^2) exp(-pi^2 f^2 t^2)
double ricker(double t, double peak_frequency);

struct RickerSpec {
  double peak_frequency = 15.0;
  double dt = 0.008;
  int samples = 256;
  double delay = 0.0;  // wavelet centre; negative times wrap to the record end
  double amplitude = 1.0;

  double record_length() const noexcept { return samples * dt; }
  double frequency(int j) const noexcept { return j / record_length(); }
  void validate() const;
};

// Periodic samples at t_n = n dt.
std::vector<double> ricker_samples(const RickerSpec& spec);
// Half spectrum of the samples (forward DFT, no scaling).
std::vector<cplx> ricker_spectrum(const RickerSpec& spec);
// Indices j in [1, N/2 - 1] with |X_j| >= threshold * max |X|.
std::vector<int> retained_frequencies(const std::vector<cplx>& spectrum, double threshold);

struct Receiver {
  double x = 0.0;
  double z = 0.0;
};

struct TraceSeries {
  Receiver receiver;
  double dt = 0.0;
  std::vector<double> values;

  std::vector<double> times() const;
};

// Outgoing solution i pi H0^(2)(omega r / v) convolved with the sampled wavelet.
// Throws DomainError when the receiver sits on the source.
TraceSeries homogeneous_exact_trace(double source_x, double source_z, const Receiver& receiver,
                                    double velocity, const RickerSpec& spec);

// t,value rows.
void write_trace_csv(const std::filesystem::path& path, const TraceSeries& trace);

struct FrequencySolve {
  int index = 0;  // DFT index, -1 for a free-standing frequency
  double frequency = 0.0;
  Scheme scheme{};
  GInterval ig{};
  double residual = 0.0;
};

struct TimeRunConfig {
  GridSpec grid{};
  MediumModel::Function velocity;
  double v_min = 0.0;  // bounds used for the G interval
  double v_max = 0.0;
  PmlConfig pml{};
  double source_x = 0.0;
  double source_z = 0.0;
  std::vector<Receiver> receivers;
  RickerSpec ricker{};
  SchemeKind kind = SchemeKind::pw17;
  // Per-frequency fit over I_G = [v_min / (f h), v_max / (f h)] unless a
  // fixed scheme is given.
  std::optional<Scheme> fixed_scheme;
  int l = 64;
  int r = 64;
  BoundaryPolicy boundary = BoundaryPolicy::two_ring_dirichlet;
  double spectrum_threshold = 1e-4;
  double solver_tol = kDefaultSolverTol;
  int threads = 1;
  std::vector<double> snapshot_times;

  void validate() const;
};

struct Snapshot {
  double time = 0.0;
  Field field;  // real wavefield stored in the real part
};

struct TimeRunResult {
  std::vector<TraceSeries> traces;
  std::vector<FrequencySolve> solves;  // in frequency order
  std::vector<Snapshot> snapshots;
};

struct MonofrequencyResult {
  Field field;
  FrequencySolve info;
};

// One Helmholtz-PML solve with a point source of the given amplitude
// (4 pi times the source spectrum in a time run).
MonofrequencyResult solve_frequency(const TimeRunConfig& config, double frequency,
                                    cplx amplitude);

// Per-frequency solves, receiver gathering and inverse DFT. A failing solve
// raises NumericalError naming the frequency.
TimeRunResult time_synthesis(const TimeRunConfig& config);

// Horizontal layers: velocities[i] applies above interfaces[i] (depths, ascending).
struct LayeredModel {
  std::vector<double> velocities{2000.0, 2500.0, 3000.0};
  std::vector<double> interfaces{800.0, 1400.0};

  double velocity(double z) const;
  void validate() const;
};

struct LayeredDemoConfig {
  int physical_nodes = 201;  // per side
  double h = 10.0;
  int pml_cells = 50;
  double a0 = 1.79;
  double peak_frequency = 20.0;
  LayeredModel model{};
  // Optional velocity grid on the physical nodes (row per z line); extended
  // into the PML by clamping.
  std::optional<std::vector<double>> velocity_grid;
  double source_x = 1000.0;
  double source_z = 0.0;
  Receiver receiver{500.0, 0.0};
  SchemeKind kind = SchemeKind::pw17;
  double wavefield_frequency = 62.5;
  bool time_run = true;
  RickerSpec ricker{20.0, 0.004, 256, 0.0, 1.0};
  std::vector<double> snapshot_times{0.52};
  int l = 64;
  int r = 64;
  double solver_tol = kDefaultSolverTol;
  int threads = 1;

  TimeRunConfig run_config() const;
};

struct LayeredDemoResult {
  GridSpec grid{};
  Field wavefield;
  FrequencySolve wavefield_solve;
  double pml_decay = 0.0;
  TimeRunResult run;
};

// max |field| on the outermost unknown ring over max |field| on the non-PML nodes.
double pml_decay_metric(const Field& field, const PmlConfig& pml, int eliminated_rings);

LayeredDemoResult layered_demo(const LayeredDemoConfig& config);

}  // namespace pwfd
