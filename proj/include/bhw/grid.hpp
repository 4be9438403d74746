#pragma once

#include <Eigen/Core>

namespace bhw {

/// Uniform periodic 1D spatial grid. Sample points span
/// [x_min, x_max - dx]; the missing right endpoint is identified with
/// x_min, which is what the spectral propagator assumes.
class Grid {
 public:
  Grid(int n_points, double x_min, double x_max);

  /// 128 points on [-1, 1].
  static Grid standard();

  int n_points() const { return n_points_; }
  double x_min() const { return x_min_; }
  double x_max() const { return x_max_; }
  double dx() const { return dx_; }
  double length() const { return x_max_ - x_min_; }

  const Eigen::VectorXd& x() const { return x_; }

  /// Angular wavenumbers in FFT ordering (0, +, ..., -, -dk).
  const Eigen::VectorXd& k() const { return k_; }

  bool compatible(const Grid& other) const;

 private:
  int n_points_;
  double x_min_;
  double x_max_;
  double dx_;
  Eigen::VectorXd x_;
  Eigen::VectorXd k_;
};

}  // namespace bhw
