#include "dft.hpp"

#include <fftw3.h>

#include <mutex>
#include <stdexcept>

namespace wegnerlab::internal {

namespace {
// FFTW planning is not thread safe; execution of a created plan is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}
}  // namespace

std::vector<std::complex<double>> inverse_dft(
    const std::vector<std::complex<double>>& in, const std::vector<int>& dims) {
  std::size_t total = 1;
  for (int n : dims) {
    if (n < 1) throw std::invalid_argument("inverse_dft: dims must be >= 1");
    total *= static_cast<std::size_t>(n);
  }
  if (in.size() != total)
    throw std::invalid_argument("inverse_dft: input size mismatch");

  std::vector<std::complex<double>> work(in);
  std::vector<std::complex<double>> out(total);
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(planner_mutex());
    plan = fftw_plan_dft(
        static_cast<int>(dims.size()), dims.data(),
        reinterpret_cast<fftw_complex*>(work.data()),
        reinterpret_cast<fftw_complex*>(out.data()),
        FFTW_BACKWARD, FFTW_ESTIMATE);
  }
  if (!plan) throw std::runtime_error("inverse_dft: fftw planning failed");
  fftw_execute(plan);
  {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(plan);
  }
  const double scale = 1.0 / static_cast<double>(total);
  for (auto& v : out) v *= scale;
  return out;
}

}  // namespace wegnerlab::internal
