#pragma once

#include <complex>

#include <Eigen/Core>

namespace bhw {

/// Thin RAII wrapper over FFTW's 1D complex transforms. Each instance
/// owns its plans and scratch buffer, so separate instances can run on
/// separate threads; plan creation itself is serialized internally
/// (FFTW planning is not thread-safe).
class Fft {
 public:
  explicit Fft(int n);
  ~Fft();

  Fft(const Fft&) = delete;
  Fft& operator=(const Fft&) = delete;

  int size() const { return n_; }

  /// In-place unnormalized forward transform.
  void forward(Eigen::VectorXcd& v);

  /// In-place inverse transform, normalized by 1/n.
  void inverse(Eigen::VectorXcd& v);

 private:
  int n_;
  void* plan_fwd_;
  void* plan_inv_;
  std::complex<double>* buf_;
};

}  // namespace bhw
