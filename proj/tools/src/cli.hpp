#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace pwfd::cli {

enum ExitCode : int {
  kOk = 0,
  kFailure = 1,
  kSpecError = 2,
  kNumericalError = 3,
  kIoError = 4,
};

struct Context {
  std::filesystem::path out_dir = ".";
  double solver_tol = 1e-10;
  int threads = 1;
  std::ostream* log = nullptr;
};

// args[0] is the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int cmd_fit(const std::filesystem::path& spec, const Context& ctx);
int cmd_dispersion(const std::filesystem::path& spec, const Context& ctx);
int cmd_solve(const std::filesystem::path& spec, const Context& ctx);
int cmd_convergence(const std::filesystem::path& spec, const Context& ctx);
int cmd_seismogram(const std::filesystem::path& spec, const Context& ctx);
int cmd_layered(const std::filesystem::path& spec, const Context& ctx);

}  // namespace pwfd::cli
