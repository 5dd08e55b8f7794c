#include "pwfd/spectrum.hpp"

#include <fftw3.h>

#include <mutex>

#include "pwfd/errors.hpp"

namespace pwfd {
namespace {

// FFTW planning is not thread safe; execution on distinct plans is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace

std::vector<cplx> real_dft(const std::vector<double>& x) {
  const int n = static_cast<int>(x.size());
  if (n < 1) throw DomainError("DFT needs at least one sample");
  std::vector<double> in(x);
  std::vector<cplx> out(n / 2 + 1);
  fftw_plan plan;
  {
    std::lock_guard lock(planner_mutex());
    plan = fftw_plan_dft_r2c_1d(n, in.data(), reinterpret_cast<fftw_complex*>(out.data()),
                                FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(plan);
  }
  return out;
}

std::vector<double> inverse_real_dft(const std::vector<cplx>& half, int n) {
  if (n < 1 || static_cast<int>(half.size()) != n / 2 + 1) {
    throw DomainError("half spectrum length does not match the signal length");
  }
  std::vector<cplx> in(half);  // c2r destroys its input
  std::vector<double> out(n);
  fftw_plan plan;
  {
    std::lock_guard lock(planner_mutex());
    plan = fftw_plan_dft_c2r_1d(n, reinterpret_cast<fftw_complex*>(in.data()), out.data(),
                                FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(plan);
  }
  for (double& v : out) v /= n;
  return out;
}

}  // namespace pwfd
