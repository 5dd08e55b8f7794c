#include "cli.hpp"

#include <CLI11.hpp>
#include <functional>
#include <iostream>
#include <json.hpp>

#include "pwfd/errors.hpp"

namespace pwfd::cli {

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Helmholtz-PML solver with optimal point-weighting stencils", "pwfd"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string spec;
  std::string out_dir = ".";
  double solver_tol = 1e-10;
  int threads = 1;
  app.add_option("--spec", spec, "JSON run spec")->required();
  app.add_option("--out", out_dir, "output directory")->capture_default_str();
  app.add_option("--solver-tol", solver_tol, "relative residual required of every solve")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  app.add_option("--threads", threads, "worker threads for per-frequency solves")
      ->capture_default_str()
      ->check(CLI::Range(1, 256));

  using Command = std::function<int(const std::filesystem::path&, const Context&)>;
  const std::pair<const char*, std::pair<const char*, Command>> table[] = {
      {"fit", {"least-squares parameter fit over a G interval", cmd_fit}},
      {"dispersion", {"phase and group velocity curves", cmd_dispersion}},
      {"solve", {"assemble and solve one Helmholtz-PML problem", cmd_solve}},
      {"convergence", {"manufactured-solution convergence table", cmd_convergence}},
      {"seismogram", {"homogeneous-model traces against the exact solution", cmd_seismogram}},
      {"layered", {"layered-model wavefield, snapshot and trace", cmd_layered}},
  };
  Command chosen;
  for (const auto& [name, entry] : table) {
    CLI::App* sub = app.add_subcommand(name, entry.first);
    sub->callback([&chosen, fn = entry.second] { chosen = fn; });
  }

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e, out, err);
    return rc == 0 ? kOk : kSpecError;
  }

  Context ctx;
  ctx.out_dir = out_dir;
  ctx.solver_tol = solver_tol;
  ctx.threads = threads;
  ctx.log = &out;
  try {
    std::filesystem::create_directories(ctx.out_dir);
    return chosen(spec, ctx);
  } catch (const SpecError& e) {
    err << "spec error: " << e.what() << '\n';
    return kSpecError;
  } catch (const DomainError& e) {
    err << "spec error: " << e.what() << '\n';
    return kSpecError;
  } catch (const nlohmann::json::exception& e) {
    err << "spec error: " << e.what() << '\n';
    return kSpecError;
  } catch (const NumericalError& e) {
    err << "numerical error: " << e.what() << '\n';
    return kNumericalError;
  } catch (const DispersionError& e) {
    err << "numerical error: " << e.what() << '\n';
    return kNumericalError;
  } catch (const IoError& e) {
    err << "i/o error: " << e.what() << '\n';
    return kIoError;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "i/o error: " << e.what() << '\n';
    return kIoError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kFailure;
  }
}

}  // namespace pwfd::cli
