#include "bhw/fft.hpp"

#include <fftw3.h>

#include <cstring>
#include <mutex>

namespace bhw {

namespace {
std::mutex& plan_mutex() {
  static std::mutex m;
  return m;
}
}  // namespace

Fft::Fft(int n) : n_(n) {
  std::lock_guard<std::mutex> lock(plan_mutex());
  buf_ = reinterpret_cast<std::complex<double>*>(fftw_alloc_complex(n));
  auto* b = reinterpret_cast<fftw_complex*>(buf_);
  plan_fwd_ = fftw_plan_dft_1d(n, b, b, FFTW_FORWARD, FFTW_MEASURE);
  plan_inv_ = fftw_plan_dft_1d(n, b, b, FFTW_BACKWARD, FFTW_MEASURE);
}

Fft::~Fft() {
  std::lock_guard<std::mutex> lock(plan_mutex());
  fftw_destroy_plan(static_cast<fftw_plan>(plan_fwd_));
  fftw_destroy_plan(static_cast<fftw_plan>(plan_inv_));
  fftw_free(buf_);
}

void Fft::forward(Eigen::VectorXcd& v) {
  std::memcpy(buf_, v.data(), sizeof(std::complex<double>) * n_);
  fftw_execute(static_cast<fftw_plan>(plan_fwd_));
  std::memcpy(v.data(), buf_, sizeof(std::complex<double>) * n_);
}

void Fft::inverse(Eigen::VectorXcd& v) {
  std::memcpy(buf_, v.data(), sizeof(std::complex<double>) * n_);
  fftw_execute(static_cast<fftw_plan>(plan_inv_));
  const double s = 1.0 / n_;
  for (int i = 0; i < n_; ++i) v[i] = buf_[i] * s;
}

}  // namespace bhw
