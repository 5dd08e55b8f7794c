#include <cmath>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <sstream>

#include "cli.hpp"
#include "pwfd/convergence.hpp"
#include "pwfd/field_io.hpp"
#include "pwfd/seismic.hpp"
#include "spec.hpp"

namespace pwfd::cli {
namespace {

namespace fs = std::filesystem;
using OJson = nlohmann::ordered_json;

constexpr double kPi = std::numbers::pi;

const Shape kParams{leaf("a1"), leaf("c2"), leaf("c3"), leaf("c4"),
                    leaf("b1"), leaf("d2"), leaf("d3")};
const Shape kIG{leaf("vmin"), leaf("vmax"), leaf("fmin"), leaf("fmax"), leaf("h")};
const Shape kFit{{"IG", kIG}, leaf("l"), leaf("r")};
const Shape kGrid{leaf("nx"), leaf("nz"), leaf("h"), leaf("gamma"), leaf("x0"), leaf("z0")};
const Shape kSides{leaf("x_min"), leaf("x_max"), leaf("z_min"), leaf("z_max")};
const Shape kPml{leaf("thickness"), leaf("a0"), leaf("peak_frequency"), {"sides", kSides}};
const Shape kPoint{leaf("x"), leaf("z"), leaf("amplitude")};
const Shape kRicker{leaf("peak_frequency"), leaf("dt"), leaf("samples"), leaf("delay"),
                    leaf("amplitude")};

std::ostream& log(const Context& ctx) { return *ctx.log; }

std::string fmt(double v) {
  std::ostringstream s;
  s << std::setprecision(10) << v;
  return s.str();
}

OJson params_json(const Scheme& s) {
  OJson j;
  j["scheme"] = std::string(scheme_name(s));
  if (const auto* p = std::get_if<SchemeParams25>(&s)) {
    j["a1"] = p->a1, j["a2"] = p->a2(), j["c1"] = p->c1();
    j["c2"] = p->c2, j["c3"] = p->c3, j["c4"] = p->c4;
  } else if (const auto* q = std::get_if<SchemeParams17>(&s)) {
    j["b1"] = q->b1, j["b2"] = q->b2(), j["d1"] = q->d1(), j["d2"] = q->d2, j["d3"] = q->d3;
  }
  return j;
}

std::string describe(const Scheme& s) {
  std::string out(scheme_name(s));
  const OJson p = params_json(s);
  for (const auto& [k, v] : p.items()) {
    if (k != "scheme") out += " " + k + "=" + fmt(v.get<double>());
  }
  return out;
}

// Explicit parameters for the optimal schemes; missing entries keep the
// baseline value.
Scheme explicit_scheme(SchemeKind kind, const Json& p) {
  switch (kind) {
    case SchemeKind::pw25:
      return SchemeParams25{get_or(p, "a1", 1.0), get_or(p, "c2", 0.0), get_or(p, "c3", 0.0),
                            get_or(p, "c4", 0.0)};
    case SchemeKind::pw17:
      return SchemeParams17{get_or(p, "b1", 1.0), get_or(p, "d2", 0.0), get_or(p, "d3", 0.0)};
    case SchemeKind::nc4: return Nc4Scheme{};
    case SchemeKind::conventional5: return Conventional5Scheme{};
  }
  throw SpecError("unknown scheme");
}

SchemeKind scheme_kind(const Json& j, const char* fallback = nullptr) {
  if (!j.contains("scheme") && fallback) return parse_scheme_kind(fallback);
  try {
    return parse_scheme_kind(require<std::string>(j, "scheme"));
  } catch (const DomainError& e) {
    throw SpecError(e.what());
  }
}

// "IG": [min, max] or {vmin, vmax, fmin, fmax, h}.
IntervalEstimate interval_spec(const Json& ig) {
  if (ig.is_array()) {
    if (ig.size() != 2 || !ig[0].is_number() || !ig[1].is_number()) {
      throw SpecError("IG must be [G_min, G_max]");
    }
    IntervalEstimate est;
    est.interval = {ig[0].get<double>(), ig[1].get<double>()};
    return est;
  }
  if (ig.is_object()) {
    return estimate_IG(require<double>(ig, "vmin"), require<double>(ig, "vmax"),
                       require<double>(ig, "fmin"), require<double>(ig, "fmax"),
                       require<double>(ig, "h"));
  }
  throw SpecError("IG must be an array or an object");
}

GridSpec grid_spec(const Json& g) {
  GridSpec grid{require<int>(g, "nx"), require<int>(g, "nz"), require<double>(g, "h"),
                get_or(g, "gamma", 1.0), get_or(g, "x0", 0.0), get_or(g, "z0", 0.0)};
  grid.validate();
  return grid;
}

PmlConfig pml_spec(const Json& j, PmlConfig pml = {}) {
  pml.thickness = get_or(j, "thickness", pml.thickness);
  pml.a0 = get_or(j, "a0", pml.a0);
  pml.peak_frequency = get_or(j, "peak_frequency", pml.peak_frequency);
  if (j.contains("sides")) {
    const Json& s = j.at("sides");
    pml.sides = {get_or(s, "x_min", true), get_or(s, "x_max", true), get_or(s, "z_min", true),
                 get_or(s, "z_max", true)};
  }
  pml.validate();
  return pml;
}

RickerSpec ricker_spec(const Json& j, RickerSpec r) {
  r.peak_frequency = get_or(j, "peak_frequency", r.peak_frequency);
  r.dt = get_or(j, "dt", r.dt);
  r.samples = get_or(j, "samples", r.samples);
  r.delay = get_or(j, "delay", r.delay);
  r.amplitude = get_or(j, "amplitude", r.amplitude);
  r.validate();
  return r;
}

BoundaryPolicy boundary_spec(const Json& j) {
  const auto b = get_or<std::string>(j, "boundary", "two_ring");
  if (b == "two_ring") return BoundaryPolicy::two_ring_dirichlet;
  if (b == "fallback_5p") return BoundaryPolicy::fallback_5p;
  throw SpecError("boundary must be 'two_ring' or 'fallback_5p', got '" + b + "'");
}

Receiver point_spec(const Json& j, const char* what) {
  if (j.is_array() && j.size() == 2) return {j[0].get<double>(), j[1].get<double>()};
  if (j.is_object()) return {require<double>(j, "x"), require<double>(j, "z")};
  throw SpecError(std::string(what) + " must be [x, z] or {x, z}");
}

void write_json(const fs::path& path, const OJson& j, const Context& ctx) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << j.dump(2) << '\n';
  if (!out) throw IoError("write failed for " + path.string());
  log(ctx) << "wrote " << path.string() << '\n';
}

void write_field(const fs::path& stem, const Field& f, const std::string& format,
                 const Context& ctx) {
  if (format == "csv") {
    write_field_csv(stem, f);
  } else if (format == "binary") {
    write_field_binary(stem, f);
  } else {
    throw SpecError("output format must be 'csv' or 'binary', got '" + format + "'");
  }
  log(ctx) << "wrote " << stem.string() << (format == "csv" ? "_{re,im}.csv" : ".{bin,json}")
           << '\n';
}

std::ofstream open_csv(const fs::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << std::setprecision(17);
  return out;
}

OJson interval_json(const IntervalEstimate& e) {
  return {{"min", e.interval.min},
          {"max", e.interval.max},
          {"clipped", e.clipped},
          {"widened", e.widened}};
}

void log_header(const char* cmd, const Context& ctx) {
  log(ctx) << "pwfd " << cmd << ": solver_tol=" << ctx.solver_tol << " threads=" << ctx.threads
           << " out=" << ctx.out_dir.string() << '\n';
}

std::vector<double> velocity_grid(const fs::path& path, int nx, int nz) {
  if (!fs::exists(path)) throw IoError("velocity file not found: " + path.string());
  return read_real_grid_csv(path, nx, nz);
}

}  // namespace

int cmd_fit(const fs::path& spec_path, const Context& ctx) {
  const Json spec = load_spec(spec_path);
  check_shape(spec, {leaf("scheme"), leaf("gamma"), {"IG", kIG}, leaf("l"), leaf("r"),
                     leaf("output")});
  log_header("fit", ctx);
  const SchemeKind kind = scheme_kind(spec);
  if (kind != SchemeKind::pw25 && kind != SchemeKind::pw17) {
    throw SpecError("fit needs scheme pw25 or pw17");
  }
  if (!spec.contains("IG")) throw SpecError("spec key 'IG' is required");
  const IntervalEstimate est = interval_spec(spec.at("IG"));
  const FitConfig cfg{est.interval, get_or(spec, "gamma", 1.0), get_or(spec, "l", 64),
                      get_or(spec, "r", 64)};
  cfg.validate();

  OJson rep;
  rep["scheme"] = std::string(to_string(kind));
  rep["gamma"] = cfg.gamma;
  rep["IG"] = interval_json(est);
  rep["l"] = cfg.l;
  rep["r"] = cfg.r;
  std::vector<std::string> warnings = est.warnings;
  auto fill = [&](const auto& fit) {
    rep["params"] = params_json(fit.params);
    rep["residual"] = fit.residual_norm;
    rep["rows_used"] = fit.rows_used;
    rep["rows_dropped"] = fit.rows_dropped;
    rep["maxJ"] = fit.fitted.max_abs_J;
    rep["baseline_maxJ"] = fit.baseline.max_abs_J;
    rep["validation_excluded"] = fit.fitted.excluded;
    rep["out_of_range"] = fit.out_of_range;
    warnings.insert(warnings.end(), fit.warnings.begin(), fit.warnings.end());
    log(ctx) << "fitted " << describe(fit.params) << " over G in [" << cfg.ig.min << ", "
             << cfg.ig.max << "]: max|J| " << fit.fitted.max_abs_J << " (baseline "
             << fit.baseline.max_abs_J << ")\n";
  };
  if (kind == SchemeKind::pw25) {
    fill(fit_params_25(cfg));
  } else {
    fill(fit_params_17(cfg));
  }
  rep["warnings"] = warnings;
  for (const auto& w : warnings) log(ctx) << "warning: " << w << '\n';
  write_json(ctx.out_dir / get_or<std::string>(spec, "output", "fit_report.json"), rep, ctx);
  return kOk;
}

int cmd_dispersion(const fs::path& spec_path, const Context& ctx) {
  const Json spec = load_spec(spec_path);
  const Shape entry{leaf("scheme"), leaf("label"), {"params", kParams}, {"fit", kFit}};
  check_shape(spec, {{"schemes", entry}, leaf("gammas"), leaf("thetas"), leaf("G"),
                     leaf("samples")});
  log_header("dispersion", ctx);

  Json entries = get_or(spec, "schemes", Json::array());
  if (entries.empty()) {
    entries = Json::array({{{"scheme", "pw25"}, {"label", "pw25"}, {"fit", {{"IG", {4.0, 10.0}}}}},
                           {{"scheme", "pw17"}, {"label", "pw17"}, {"fit", {{"IG", {4.0, 10.0}}}}}});
  }
  const auto gammas = get_or(spec, "gammas", std::vector<double>{0.25, 0.5, 0.75, 1.0});
  const auto thetas = get_or(spec, "thetas", std::vector<double>{0.0, kPi / 8, kPi / 4});
  const auto G = get_or(spec, "G", std::vector<double>{2.0, 400.0});
  const int samples = get_or(spec, "samples", 200);
  if (G.size() != 2 || !(G[0] > 0.0) || !(G[1] > G[0])) throw SpecError("G must be [min, max]");
  if (samples < 2) throw SpecError("samples must be at least 2");

  for (std::size_t e = 0; e < entries.size(); ++e) {
    const Json& ent = entries[e];
    const SchemeKind kind = scheme_kind(ent);
    if (kind != SchemeKind::pw25 && kind != SchemeKind::pw17) {
      throw SpecError("dispersion curves need scheme pw25 or pw17");
    }
    const std::string label = get_or<std::string>(
        ent, "label", std::string(to_string(kind)) + (entries.size() > 1 ? "_" + std::to_string(e) : ""));
    for (double gamma : gammas) {
      Scheme scheme = explicit_scheme(kind, get_or(ent, "params", Json::object()));
      if (ent.contains("fit")) {
        const Json& f = ent.at("fit");
        const IntervalEstimate est = interval_spec(get_or(f, "IG", Json::array({4.0, 10.0})));
        scheme = scheme_for(kind, {est.interval, gamma, get_or(f, "l", 64), get_or(f, "r", 64)});
      }
      log(ctx) << label << " gamma=" << gamma << ": " << describe(scheme) << '\n';
      const OptimalScheme opt = kind == SchemeKind::pw25
                                    ? OptimalScheme{std::get<SchemeParams25>(scheme)}
                                    : OptimalScheme{std::get<SchemeParams17>(scheme)};
      std::ostringstream name;
      name << "dispersion_" << label << "_gamma" << gamma << ".csv";
      const fs::path path = ctx.out_dir / name.str();
      std::ofstream out = open_csv(path);
      out << "theta,G,vph_ratio,vgr_ratio\n";
      int excluded = 0;
      for (double theta : thetas) {
        for (int i = 0; i < samples; ++i) {
          // uniform in 1/G, ascending G
          const double inv = 1.0 / G[0] + (1.0 / G[1] - 1.0 / G[0]) * i / (samples - 1);
          const double g = 1.0 / inv;
          const DispersionResult d = evaluate_dispersion(opt, theta, g, gamma);
          out << theta << ',' << g << ',';
          if (d.status == DispersionStatus::ok) {
            out << d.vph_ratio << ',' << d.vgr_ratio << '\n';
          } else {
            ++excluded;
            out << "nan,nan\n";
          }
        }
      }
      if (!out) throw IoError("write failed for " + path.string());
      log(ctx) << "wrote " << path.string();
      if (excluded) log(ctx) << " (" << excluded << " samples without a propagating wave)";
      log(ctx) << '\n';
    }
  }
  return kOk;
}

int cmd_solve(const fs::path& spec_path, const Context& ctx) {
  const Json spec = load_spec(spec_path);
  const Shape manufactured{leaf("k0"), leaf("theta"), leaf("N")};
  const Shape medium{leaf("velocity"), leaf("velocity_csv")};
  check_shape(spec, {leaf("scheme"), {"params", kParams}, {"fit", kFit}, leaf("boundary"),
                     {"manufactured", manufactured}, {"grid", kGrid}, leaf("frequency"),
                     {"medium", medium}, {"pml", kPml}, {"source", kPoint},
                     {"output", {leaf("stem"), leaf("format")}}});
  log_header("solve", ctx);
  const SchemeKind kind = scheme_kind(spec);
  const Json fit = get_or(spec, "fit", Json::object());
  const Json output = get_or(spec, "output", Json::object());
  const auto stem = ctx.out_dir / get_or<std::string>(output, "stem", "field");
  const auto format = get_or<std::string>(output, "format", "csv");
  const BoundaryPolicy boundary = boundary_spec(spec);

  OJson rep;
  rep["solver_tol"] = ctx.solver_tol;
  if (spec.contains("manufactured")) {
    const Json& m = spec.at("manufactured");
    ConvergenceConfig cfg;
    cfg.problem.k0 = get_or(m, "k0", 75.0);
    cfg.problem.theta = get_or(m, "theta", kPi / 4);
    cfg.kind = kind;
    cfg.l = get_or(fit, "l", 64);
    cfg.r = get_or(fit, "r", 64);
    cfg.boundary = boundary;
    cfg.solver_tol = ctx.solver_tol;
    if (spec.contains("params")) cfg.fixed_scheme = explicit_scheme(kind, spec.at("params"));
    const int N = require<int>(m, "N");
    const ManufacturedSolution sol = manufactured_solve(cfg, N);
    const ConvergenceRow& row = sol.row;
    log(ctx) << "manufactured k0=" << cfg.problem.k0 << " N=" << N << " G in [" << row.ig.min
             << ", " << row.ig.max << "]: " << describe(row.scheme) << '\n';
    log(ctx) << "unknowns=" << row.unknowns << " nonzeros=" << row.nonzeros
             << " residual=" << row.residual << " (tol " << ctx.solver_tol << ")"
             << " cnorm_error=" << row.error << '\n';
    rep["problem"] = {{"k0", cfg.problem.k0}, {"theta", cfg.problem.theta}, {"N", N}};
    rep["IG"] = {{"min", row.ig.min}, {"max", row.ig.max}};
    rep["params"] = params_json(row.scheme);
    rep["unknowns"] = row.unknowns;
    rep["nonzeros"] = row.nonzeros;
    rep["residual"] = row.residual;
    rep["error"] = row.error;
    write_field(stem, sol.field, format, ctx);
  } else {
    const GridSpec grid = grid_spec(require<Json>(spec, "grid"));
    const double f = require<double>(spec, "frequency");
    const Json med = require<Json>(spec, "medium");
    MediumModel model;
    if (med.contains("velocity_csv")) {
      const auto v = velocity_grid(require<std::string>(med, "velocity_csv"), grid.nx, grid.nz);
      model = MediumModel::from_velocity(
          grid,
          [&](double x, double z) {
            const NodeIndex n = nearest_node(grid, x, z);
            return v[grid.index(n.m, n.n)];
          },
          f);
    } else {
      model = MediumModel::constant(grid, require<double>(med, "velocity"), f);
    }
    const PmlConfig pml = pml_spec(get_or(spec, "pml", Json::object()));
    const Json src = require<Json>(spec, "source");
    const PointSource source{require<double>(src, "x"), require<double>(src, "z"),
                             complex_or(src, "amplitude", {1.0, 0.0})};
    const double omega = model.omega();
    IntervalEstimate est = estimate_IG(omega / model.k_max(), omega / model.k_min(), f, f, grid.h);
    if (fit.contains("IG")) est = interval_spec(fit.at("IG"));
    const Scheme scheme =
        spec.contains("params")
            ? explicit_scheme(kind, spec.at("params"))
            : scheme_for(kind, {est.interval, grid.gamma, get_or(fit, "l", 64), get_or(fit, "r", 64)});
    log(ctx) << "f=" << f << " Hz, G in [" << est.interval.min << ", " << est.interval.max
             << "]: " << describe(scheme) << '\n';
    for (const auto& w : est.warnings) log(ctx) << "warning: " << w << '\n';
    AssemblyOptions opt;
    opt.boundary = boundary;
    opt.pml = pml;
    const SparseSystem sys = assemble(scheme, coefficient_fields(model, pml), source, opt);
    const SolveResult res = solve(sys, ctx.solver_tol);
    log(ctx) << "unknowns=" << sys.dimension() << " nonzeros=" << sys.nonzeros()
             << " residual=" << res.relative_residual << " (tol " << ctx.solver_tol << ")\n";
    rep["frequency"] = f;
    rep["IG"] = interval_json(est);
    rep["params"] = params_json(scheme);
    rep["unknowns"] = sys.dimension();
    rep["nonzeros"] = sys.nonzeros();
    rep["residual"] = res.relative_residual;
    rep["refinement_steps"] = res.refinement_steps;
    write_field(stem, res.field, format, ctx);
  }
  write_json(ctx.out_dir / "solve_report.json", rep, ctx);
  return kOk;
}

int cmd_convergence(const fs::path& spec_path, const Context& ctx) {
  const Json spec = load_spec(spec_path);
  check_shape(spec, {leaf("scheme"), leaf("schemes"), leaf("k0"), leaf("theta"), leaf("sizes"),
                     leaf("l"), leaf("r"), leaf("boundary")});
  log_header("convergence", ctx);
  std::vector<std::string> names;
  if (spec.contains("schemes")) {
    names = require<std::vector<std::string>>(spec, "schemes");
  } else {
    names.push_back(get_or<std::string>(spec, "scheme", "pw17"));
  }
  ConvergenceConfig cfg;
  cfg.problem.k0 = get_or(spec, "k0", 75.0);
  cfg.problem.theta = get_or(spec, "theta", kPi / 4);
  cfg.sizes = get_or(spec, "sizes", std::vector<int>{131, 261, 521});
  cfg.l = get_or(spec, "l", 64);
  cfg.r = get_or(spec, "r", 64);
  cfg.boundary = boundary_spec(spec);
  cfg.solver_tol = ctx.solver_tol;

  std::ofstream csv = open_csv(ctx.out_dir / "convergence.csv");
  csv << "scheme,k0,theta,N,h,G_min,G_max,unknowns,nonzeros,residual,error,ratio\n";
  OJson rows = OJson::array();
  log(ctx) << std::left << std::setw(14) << "scheme" << std::setw(7) << "N" << std::setw(14)
           << "error" << "ratio\n";
  for (const auto& name : names) {
    try {
      cfg.kind = parse_scheme_kind(name);
    } catch (const DomainError& e) {
      throw SpecError(e.what());
    }
    if (cfg.sizes.empty()) throw SpecError("sizes must not be empty");
    for (const ConvergenceRow& row : convergence_study(cfg)) {
      log(ctx) << std::setw(14) << name << std::setw(7) << row.N << std::setw(14) << row.error
               << (row.ratio > 0 ? fmt(row.ratio) : "-") << "   " << describe(row.scheme)
               << '\n';
      csv << name << ',' << cfg.problem.k0 << ',' << cfg.problem.theta << ',' << row.N << ','
          << row.h << ',' << row.ig.min << ',' << row.ig.max << ',' << row.unknowns << ','
          << row.nonzeros << ',' << row.residual << ',' << row.error << ',' << row.ratio << '\n';
      rows.push_back({{"scheme", name},
                      {"k0", cfg.problem.k0},
                      {"theta", cfg.problem.theta},
                      {"N", row.N},
                      {"error", row.error},
                      {"ratio", row.ratio},
                      {"residual", row.residual},
                      {"params", params_json(row.scheme)}});
    }
  }
  if (!csv) throw IoError("write failed for convergence.csv");
  log(ctx) << "wrote " << (ctx.out_dir / "convergence.csv").string() << '\n';
  write_json(ctx.out_dir / "convergence.json", {{"rows", rows}}, ctx);
  return kOk;
}

int cmd_seismogram(const fs::path& spec_path, const Context& ctx) {
  const Json spec = load_spec(spec_path);
  check_shape(spec, {leaf("scheme"), {"params", kParams}, {"fit", {leaf("l"), leaf("r")}},
                     {"grid", kGrid}, leaf("velocity"), {"pml", kPml}, {"source", kPoint},
                     {"receivers", kPoint}, {"ricker", kRicker}, leaf("spectrum_threshold"),
                     leaf("boundary")});
  log_header("seismogram", ctx);
  TimeRunConfig run;
  run.grid = spec.contains("grid") ? grid_spec(spec.at("grid"))
                                   : GridSpec{101, 101, 20.0, 1.0, -500.0, -500.0};
  const double v = get_or(spec, "velocity", 2000.0);
  if (!(v > 0.0)) throw SpecError("velocity must be positive");
  run.velocity = [v](double, double) { return v; };
  run.v_min = run.v_max = v;
  run.pml = pml_spec(get_or(spec, "pml", Json::object()), PmlConfig{500.0, 1.79, 15.0, {}});
  const Json src = get_or(spec, "source", Json::object());
  run.source_x = get_or(src, "x", 700.0);
  run.source_z = get_or(src, "z", 500.0);
  if (spec.contains("receivers")) {
    for (const Json& r : spec.at("receivers")) run.receivers.push_back(point_spec(r, "receiver"));
  } else {
    run.receivers = {{100, 500}, {300, 300}, {700, 700}, {100, 700},
                     {900, 500}, {700, 300}, {300, 900}, {500, 900}};
  }
  run.ricker = ricker_spec(get_or(spec, "ricker", Json::object()), RickerSpec{15.0, 0.008, 256});
  run.kind = scheme_kind(spec, "pw17");
  if (spec.contains("params")) run.fixed_scheme = explicit_scheme(run.kind, spec.at("params"));
  const Json fit = get_or(spec, "fit", Json::object());
  run.l = get_or(fit, "l", 64);
  run.r = get_or(fit, "r", 64);
  run.boundary = boundary_spec(spec);
  run.spectrum_threshold = get_or(spec, "spectrum_threshold", 1e-4);
  run.solver_tol = ctx.solver_tol;
  run.threads = ctx.threads;

  const TimeRunResult res = time_synthesis(run);
  OJson solves = OJson::array();
  for (const FrequencySolve& s : res.solves) {
    log(ctx) << "f=" << fmt(s.frequency) << " Hz G in [" << fmt(s.ig.min) << ", " << fmt(s.ig.max)
             << "] residual=" << s.residual << " " << describe(s.scheme) << '\n';
    solves.push_back({{"index", s.index},
                      {"frequency", s.frequency},
                      {"residual", s.residual},
                      {"G_min", s.ig.min},
                      {"G_max", s.ig.max},
                      {"params", params_json(s.scheme)}});
  }
  OJson receivers = OJson::array();
  for (std::size_t i = 0; i < run.receivers.size(); ++i) {
    const Receiver& r = run.receivers[i];
    const TraceSeries exact = homogeneous_exact_trace(run.source_x, run.source_z, r, v, run.ricker);
    std::vector<cplx> diff(exact.values.size());
    double peak = 0.0;
    for (std::size_t k = 0; k < diff.size(); ++k) {
      diff[k] = res.traces[i].values[k] - exact.values[k];
      peak = std::max(peak, std::abs(exact.values[k]));
    }
    const double err = cnorm(diff);
    const std::string tag = "r" + std::to_string(i + 1);
    write_trace_csv(ctx.out_dir / ("trace_" + tag + ".csv"), res.traces[i]);
    write_trace_csv(ctx.out_dir / ("exact_" + tag + ".csv"), exact);
    log(ctx) << "receiver " << i + 1 << " (" << r.x << ", " << r.z << "): cnorm error " << err
             << " (exact peak " << peak << ")\n";
    receivers.push_back(
        {{"index", i + 1}, {"x", r.x}, {"z", r.z}, {"error", err}, {"exact_peak", peak}});
  }
  write_json(ctx.out_dir / "seismogram.json",
             {{"solver_tol", ctx.solver_tol}, {"receivers", receivers}, {"solves", solves}}, ctx);
  return kOk;
}

int cmd_layered(const fs::path& spec_path, const Context& ctx) {
  const Json spec = load_spec(spec_path);
  check_shape(spec, {leaf("scheme"), leaf("physical_nodes"), leaf("h"), leaf("pml_cells"),
                     leaf("a0"), leaf("peak_frequency"),
                     {"model", {leaf("velocities"), leaf("interfaces")}}, leaf("velocity_csv"),
                     {"source", kPoint}, {"receiver", kPoint}, leaf("frequency"),
                     leaf("time_run"), {"ricker", kRicker}, leaf("snapshot_times"),
                     {"fit", {leaf("l"), leaf("r")}}, leaf("format")});
  log_header("layered", ctx);
  LayeredDemoConfig cfg;
  cfg.physical_nodes = get_or(spec, "physical_nodes", cfg.physical_nodes);
  cfg.h = get_or(spec, "h", cfg.h);
  cfg.pml_cells = get_or(spec, "pml_cells", cfg.pml_cells);
  cfg.a0 = get_or(spec, "a0", cfg.a0);
  cfg.peak_frequency = get_or(spec, "peak_frequency", cfg.peak_frequency);
  if (spec.contains("model")) {
    const Json& m = spec.at("model");
    cfg.model.velocities = get_or(m, "velocities", cfg.model.velocities);
    cfg.model.interfaces = get_or(m, "interfaces", cfg.model.interfaces);
    cfg.model.validate();
  }
  if (spec.contains("velocity_csv")) {
    cfg.velocity_grid = velocity_grid(require<std::string>(spec, "velocity_csv"),
                                      cfg.physical_nodes, cfg.physical_nodes);
  }
  const Json src = get_or(spec, "source", Json::object());
  cfg.source_x = get_or(src, "x", cfg.source_x);
  cfg.source_z = get_or(src, "z", cfg.source_z);
  const Json rec = get_or(spec, "receiver", Json::object());
  cfg.receiver = {get_or(rec, "x", cfg.receiver.x), get_or(rec, "z", cfg.receiver.z)};
  cfg.kind = scheme_kind(spec, "pw17");
  cfg.wavefield_frequency = get_or(spec, "frequency", cfg.wavefield_frequency);
  cfg.time_run = get_or(spec, "time_run", cfg.time_run);
  cfg.ricker = ricker_spec(get_or(spec, "ricker", Json::object()), cfg.ricker);
  cfg.snapshot_times = get_or(spec, "snapshot_times", cfg.snapshot_times);
  const Json fit = get_or(spec, "fit", Json::object());
  cfg.l = get_or(fit, "l", cfg.l);
  cfg.r = get_or(fit, "r", cfg.r);
  cfg.solver_tol = ctx.solver_tol;
  cfg.threads = ctx.threads;
  const auto format = get_or<std::string>(spec, "format", "csv");

  const LayeredDemoResult res = layered_demo(cfg);
  const FrequencySolve& w = res.wavefield_solve;
  log(ctx) << "wavefield f=" << w.frequency << " Hz G in [" << fmt(w.ig.min) << ", "
           << fmt(w.ig.max) << "] residual=" << w.residual << " " << describe(w.scheme) << '\n';
  log(ctx) << "pml decay metric " << res.pml_decay << '\n';
  write_field(ctx.out_dir / ("wavefield_f" + fmt(w.frequency)), res.wavefield, format, ctx);

  OJson solves = OJson::array();
  for (const FrequencySolve& s : res.run.solves) {
    log(ctx) << "f=" << fmt(s.frequency) << " Hz G in [" << fmt(s.ig.min) << ", " << fmt(s.ig.max)
             << "] residual=" << s.residual << " " << describe(s.scheme) << '\n';
    solves.push_back({{"frequency", s.frequency},
                      {"residual", s.residual},
                      {"params", params_json(s.scheme)}});
  }
  for (const Snapshot& snap : res.run.snapshots) {
    std::ostringstream name;
    name << "snapshot_t" << std::fixed << std::setprecision(3) << snap.time;
    write_field(ctx.out_dir / name.str(), snap.field, format, ctx);
  }
  if (!res.run.traces.empty()) {
    write_trace_csv(ctx.out_dir / "trace_receiver.csv", res.run.traces.front());
    log(ctx) << "wrote " << (ctx.out_dir / "trace_receiver.csv").string() << '\n';
  }
  OJson rep;
  rep["grid"] = {{"nx", res.grid.nx}, {"nz", res.grid.nz}, {"h", res.grid.h},
                 {"x0", res.grid.x0}, {"z0", res.grid.z0}};
  rep["solver_tol"] = ctx.solver_tol;
  rep["pml_decay"] = res.pml_decay;
  rep["wavefield"] = {{"frequency", w.frequency},
                      {"residual", w.residual},
                      {"G_min", w.ig.min},
                      {"G_max", w.ig.max},
                      {"params", params_json(w.scheme)}};
  rep["solves"] = solves;
  write_json(ctx.out_dir / "layered.json", rep, ctx);
  return kOk;
}

}  // namespace pwfd::cli
