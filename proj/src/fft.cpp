#include "besov/fft.hpp"

#include <fftw3.h>

#include <memory>
#include <mutex>
#include <unordered_map>

#include "besov/errors.hpp"

namespace besov {
namespace {

// FFTW's planner is not reentrant; execution on distinct plans is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

class Plan {
 public:
  explicit Plan(std::size_t n) : n_(n) {
    real_ = fftw_alloc_real(n);
    spec_ = fftw_alloc_complex(n / 2 + 1);
    std::lock_guard<std::mutex> lock(planner_mutex());
    const int len = static_cast<int>(n);
    forward_ = fftw_plan_dft_r2c_1d(len, real_, spec_, FFTW_ESTIMATE);
    backward_ = fftw_plan_dft_c2r_1d(len, spec_, real_, FFTW_ESTIMATE);
  }
  ~Plan() {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(forward_);
    fftw_destroy_plan(backward_);
    fftw_free(real_);
    fftw_free(spec_);
  }
  Plan(const Plan&) = delete;
  Plan& operator=(const Plan&) = delete;

  std::vector<Complex> forward(std::span<const double> x) {
    for (std::size_t i = 0; i < n_; ++i) real_[i] = x[i];
    fftw_execute(forward_);
    const double scale = 1.0 / static_cast<double>(n_);
    std::vector<Complex> out(n_ / 2 + 1);
    for (std::size_t k = 0; k < out.size(); ++k) {
      out[k] = Complex(spec_[k][0] * scale, spec_[k][1] * scale);
    }
    return out;
  }

  std::vector<double> backward(std::span<const Complex> c) {
    for (std::size_t k = 0; k < n_ / 2 + 1; ++k) {
      spec_[k][0] = c[k].real();
      spec_[k][1] = c[k].imag();
    }
    // c2r ignores the imaginary parts of the self-conjugate modes.
    spec_[0][1] = 0.0;
    spec_[n_ / 2][1] = 0.0;
    fftw_execute(backward_);
    return std::vector<double>(real_, real_ + n_);
  }

 private:
  std::size_t n_;
  double* real_;
  fftw_complex* spec_;
  fftw_plan forward_;
  fftw_plan backward_;
};

Plan& plan_for(std::size_t n) {
  thread_local std::unordered_map<std::size_t, std::unique_ptr<Plan>> cache;
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<Plan>(n);
  return *slot;
}

void require_even(std::size_t n) {
  if (n < 2 || n % 2 != 0) throw PreconditionError("FFT grid size must be even and >= 2");
}

}  // namespace

std::vector<Complex> rfft(std::span<const double> samples) {
  require_even(samples.size());
  return plan_for(samples.size()).forward(samples);
}

std::vector<double> irfft(std::span<const Complex> half_spectrum, std::size_t grid_size) {
  require_even(grid_size);
  if (half_spectrum.size() != grid_size / 2 + 1) {
    throw PreconditionError("half spectrum length must be N/2 + 1");
  }
  return plan_for(grid_size).backward(half_spectrum);
}

}  // namespace besov
