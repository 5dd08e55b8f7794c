#include "pwfd/seismic.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <fstream>
#include <iomanip>
#include <mutex>
#include <numbers>
#include <sstream>
#include <thread>

#include "pwfd/errors.hpp"
#include "pwfd/special.hpp"
#include "pwfd/spectrum.hpp"

namespace pwfd {
namespace {

constexpr double kPi = std::numbers::pi;

// Highest DFT index strictly below Nyquist.
int last_positive_index(int n) { return n % 2 == 0 ? n / 2 - 1 : (n - 1) / 2; }

int ring_of(const GridSpec& g, int m, int n) {
  return std::min({m, n, g.nx - 1 - m, g.nz - 1 - n});
}

}  // namespace

double ricker(double t, double peak_frequency) {
  const double a = kPi * kPi * peak_frequency * peak_frequency * t * t;
  return (1.0 - 2.0 * a) * std::exp(-a);
}

void RickerSpec::validate() const {
  if (!(peak_frequency > 0.0)) throw DomainError("Ricker peak frequency must be positive");
  if (!(dt > 0.0)) throw DomainError("time step must be positive");
  if (samples < 4) throw DomainError("record needs at least 4 samples");
  if (!std::isfinite(delay) || !std::isfinite(amplitude)) {
    throw DomainError("Ricker delay and amplitude must be finite");
  }
}

std::vector<double> ricker_samples(const RickerSpec& spec) {
  spec.validate();
  const double T = spec.record_length();
  std::vector<double> out(spec.samples);
  for (int n = 0; n < spec.samples; ++n) {
    double tau = n * spec.dt - spec.delay;
    tau -= T * std::floor((tau + 0.5 * T) / T);
    out[n] = spec.amplitude * ricker(tau, spec.peak_frequency);
  }
  return out;
}

std::vector<cplx> ricker_spectrum(const RickerSpec& spec) { return real_dft(ricker_samples(spec)); }

std::vector<int> retained_frequencies(const std::vector<cplx>& spectrum, double threshold) {
  double peak = 0.0;
  for (const cplx& c : spectrum) peak = std::max(peak, std::abs(c));
  std::vector<int> out;
  if (peak == 0.0) return out;
  const int n = 2 * (static_cast<int>(spectrum.size()) - 1);
  const int last = std::min(last_positive_index(n), static_cast<int>(spectrum.size()) - 1);
  for (int j = 1; j <= last; ++j) {
    if (std::abs(spectrum[j]) >= threshold * peak) out.push_back(j);
  }
  return out;
}

std::vector<double> TraceSeries::times() const {
  std::vector<double> t(values.size());
  for (std::size_t i = 0; i < t.size(); ++i) t[i] = i * dt;
  return t;
}

TraceSeries homogeneous_exact_trace(double source_x, double source_z, const Receiver& receiver,
                                    double velocity, const RickerSpec& spec) {
  spec.validate();
  if (!(velocity > 0.0)) throw DomainError("velocity must be positive");
  const double r = std::hypot(receiver.x - source_x, receiver.z - source_z);
  if (!(r > 0.0)) throw DomainError("receiver coincides with the source");
  const auto spectrum = ricker_spectrum(spec);
  std::vector<cplx> half(spectrum.size());
  const int last = last_positive_index(spec.samples);
  for (int j = 1; j <= last; ++j) {
    const double omega = 2.0 * kPi * spec.frequency(j);
    half[j] = cplx(0.0, kPi) * hankel0_2(omega * r / velocity) * spectrum[j];
  }
  TraceSeries tr;
  tr.receiver = receiver;
  tr.dt = spec.dt;
  tr.values = inverse_real_dft(half, spec.samples);
  return tr;
}

void write_trace_csv(const std::filesystem::path& path, const TraceSeries& trace) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << "t,value\n" << std::setprecision(17);
  for (std::size_t i = 0; i < trace.values.size(); ++i) {
    out << i * trace.dt << ',' << trace.values[i] << '\n';
  }
  if (!out) throw IoError("write failed for " + path.string());
}

void TimeRunConfig::validate() const {
  grid.validate();
  pml.validate();
  ricker.validate();
  if (!velocity) throw DomainError("time run needs a velocity model");
  if (!(v_min > 0.0) || !(v_max >= v_min)) throw DomainError("need 0 < v_min <= v_max");
  if (threads < 1) throw DomainError("thread count must be at least 1");
  if (!(spectrum_threshold >= 0.0)) throw DomainError("spectrum threshold must be non-negative");
}

MonofrequencyResult solve_frequency(const TimeRunConfig& config, double frequency,
                                    cplx amplitude) {
  config.validate();
  if (!(frequency > 0.0)) throw DomainError("frequency must be positive");
  MonofrequencyResult out;
  out.info.index = -1;
  out.info.frequency = frequency;
  if (config.fixed_scheme) {
    out.info.scheme = *config.fixed_scheme;
  } else {
    const auto est =
        estimate_IG(config.v_min, config.v_max, frequency, frequency, config.grid.h);
    out.info.ig = est.interval;
    out.info.scheme = scheme_for(config.kind, FitConfig{est.interval, config.grid.gamma,
                                                        config.l, config.r});
  }
  const auto medium = MediumModel::from_velocity(config.grid, config.velocity, frequency);
  const CoefficientFields fields = coefficient_fields(medium, config.pml);
  AssemblyOptions opts;
  opts.boundary = config.boundary;
  opts.pml = config.pml;
  const SparseSystem sys =
      assemble(out.info.scheme, fields, PointSource{config.source_x, config.source_z, amplitude},
               opts);
  SolveResult res = solve(sys, config.solver_tol);
  out.info.residual = res.relative_residual;
  out.field = std::move(res.field);
  return out;
}

TimeRunResult time_synthesis(const TimeRunConfig& config) {
  config.validate();
  const GridSpec& grid = config.grid;
  const int N = config.ricker.samples;
  const auto spectrum = ricker_spectrum(config.ricker);
  const auto retained = retained_frequencies(spectrum, config.spectrum_threshold);

  std::vector<NodeIndex> rec_nodes;
  for (const Receiver& r : config.receivers) {
    if (r.x < grid.x0 || r.x > grid.x_max() || r.z < grid.z0 || r.z > grid.z_max()) {
      throw DomainError("receiver lies outside the grid");
    }
    rec_nodes.push_back(nearest_node(grid, r.x, r.z));
  }
  const bool keep_fields = !config.snapshot_times.empty();

  struct Slot {
    FrequencySolve info;
    std::vector<cplx> at_receivers;
    std::vector<cplx> field;
    std::exception_ptr error;
  };
  std::vector<Slot> slots(retained.size());
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};

  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= retained.size() || failed.load()) return;
      Slot& slot = slots[i];
      const int j = retained[i];
      try {
        const double f = config.ricker.frequency(j);
        MonofrequencyResult mono = solve_frequency(config, f, 4.0 * kPi * spectrum[j]);
        slot.info = mono.info;
        slot.info.index = j;
        for (const NodeIndex& nd : rec_nodes) slot.at_receivers.push_back(mono.field(nd.m, nd.n));
        if (keep_fields) slot.field = std::move(mono.field.values());
      } catch (...) {
        slot.error = std::current_exception();
        failed.store(true);
      }
    }
  };
  {
    const int nthreads = std::max(1, std::min<int>(config.threads, static_cast<int>(retained.size())));
    std::vector<std::jthread> pool;
    for (int t = 1; t < nthreads; ++t) pool.emplace_back(worker);
    worker();
  }

  for (std::size_t i = 0; i < slots.size(); ++i) {
    if (!slots[i].error) continue;
    const double f = config.ricker.frequency(retained[i]);
    try {
      std::rethrow_exception(slots[i].error);
    } catch (const NumericalError& e) {
      std::ostringstream msg;
      msg << "solve at f = " << f << " Hz failed: " << e.what();
      throw NumericalError(msg.str(), e.residual());
    } catch (const std::exception& e) {
      std::ostringstream msg;
      msg << "solve at f = " << f << " Hz failed: " << e.what();
      throw NumericalError(msg.str());
    }
  }

  TimeRunResult out;
  for (const Slot& s : slots) out.solves.push_back(s.info);
  for (std::size_t r = 0; r < rec_nodes.size(); ++r) {
    std::vector<cplx> half(spectrum.size());
    for (std::size_t i = 0; i < slots.size(); ++i) half[retained[i]] = slots[i].at_receivers[r];
    TraceSeries tr;
    tr.receiver = config.receivers[r];
    tr.dt = config.ricker.dt;
    tr.values = inverse_real_dft(half, N);
    out.traces.push_back(std::move(tr));
  }
  const double T = config.ricker.record_length();
  for (double t : config.snapshot_times) {
    Snapshot snap;
    snap.time = t;
    snap.field = Field(grid);
    auto& dst = snap.field.values();
    for (std::size_t i = 0; i < slots.size(); ++i) {
      const cplx rot = std::exp(cplx(0.0, 2.0 * kPi * retained[i] * t / T)) * (2.0 / N);
      const auto& src = slots[i].field;
      for (std::size_t k = 0; k < dst.size(); ++k) dst[k] += (src[k] * rot).real();
    }
    out.snapshots.push_back(std::move(snap));
  }
  return out;
}

double LayeredModel::velocity(double z) const {
  std::size_t i = 0;
  while (i < interfaces.size() && z >= interfaces[i]) ++i;
  return velocities[i];
}

void LayeredModel::validate() const {
  if (velocities.empty() || velocities.size() != interfaces.size() + 1) {
    throw DomainError("layered model needs one more velocity than interfaces");
  }
  for (double v : velocities) {
    if (!(v > 0.0)) throw DomainError("layer velocities must be positive");
  }
  if (!std::is_sorted(interfaces.begin(), interfaces.end())) {
    throw DomainError("layer interfaces must be ascending");
  }
}

TimeRunConfig LayeredDemoConfig::run_config() const {
  if (physical_nodes < 5 || pml_cells < 0) throw DomainError("bad layered grid size");
  TimeRunConfig c;
  const int n = physical_nodes + 2 * pml_cells;
  c.grid = GridSpec{n, n, h, 1.0, -pml_cells * h, -pml_cells * h};
  c.pml = PmlConfig{pml_cells * h, a0, peak_frequency, PmlSides{}};
  if (velocity_grid) {
    const auto& vg = *velocity_grid;
    const int np = physical_nodes;
    if (static_cast<int>(vg.size()) != np * np) {
      throw DomainError("velocity grid must hold " + std::to_string(np) + "x" +
                        std::to_string(np) + " values");
    }
    const double hh = h;
    c.velocity = [vg, np, hh](double x, double z) {
      const int m = std::clamp(static_cast<int>(std::lround(x / hh)), 0, np - 1);
      const int k = std::clamp(static_cast<int>(std::lround(z / hh)), 0, np - 1);
      return vg[static_cast<std::size_t>(k) * np + m];
    };
    const auto [lo, hi] = std::minmax_element(vg.begin(), vg.end());
    c.v_min = *lo;
    c.v_max = *hi;
  } else {
    model.validate();
    const LayeredModel mdl = model;
    c.velocity = [mdl](double, double z) { return mdl.velocity(z); };
    const auto [lo, hi] = std::minmax_element(model.velocities.begin(), model.velocities.end());
    c.v_min = *lo;
    c.v_max = *hi;
  }
  c.source_x = source_x;
  c.source_z = source_z;
  c.receivers = {receiver};
  c.ricker = ricker;
  c.kind = kind;
  c.l = l;
  c.r = r;
  c.solver_tol = solver_tol;
  c.threads = threads;
  c.snapshot_times = snapshot_times;
  return c;
}

double pml_decay_metric(const Field& field, const PmlConfig& pml, int eliminated_rings) {
  const GridSpec& g = field.grid();
  double edge = 0.0;
  double interior = 0.0;
  for (int n = 0; n < g.nz; ++n) {
    for (int m = 0; m < g.nx; ++m) {
      const double a = std::abs(field(m, n));
      if (ring_of(g, m, n) == eliminated_rings) edge = std::max(edge, a);
      if (!inside_pml(g.x(m), g.z(n), g, pml)) interior = std::max(interior, a);
    }
  }
  if (interior == 0.0) throw NumericalError("field vanishes in the interior");
  return edge / interior;
}

LayeredDemoResult layered_demo(const LayeredDemoConfig& config) {
  LayeredDemoResult out;
  const TimeRunConfig run = config.run_config();
  out.grid = run.grid;
  MonofrequencyResult mono = solve_frequency(run, config.wavefield_frequency, cplx(1.0, 0.0));
  out.wavefield = std::move(mono.field);
  out.wavefield_solve = mono.info;
  out.pml_decay = pml_decay_metric(out.wavefield, run.pml, scheme_reach(mono.info.scheme));
  if (config.time_run) out.run = time_synthesis(run);
  return out;
}

}  // namespace pwfd
