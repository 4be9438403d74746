#include "bhw/grid.hpp"

#include <cmath>
#include <numbers>

#include "bhw/errors.hpp"

namespace bhw {

Grid::Grid(int n_points, double x_min, double x_max)
    : n_points_(n_points), x_min_(x_min), x_max_(x_max) {
  if (n_points < 2) throw DegenerateError("grid needs at least 2 points");
  if (!(x_max > x_min)) throw BoundsError("grid requires x_max > x_min");
  dx_ = (x_max - x_min) / n_points;
  x_.resize(n_points);
  for (int i = 0; i < n_points; ++i) x_[i] = x_min + i * dx_;

  const double dk = 2.0 * std::numbers::pi / length();
  k_.resize(n_points);
  for (int i = 0; i < n_points; ++i) {
    const int m = (i < n_points / 2) ? i : i - n_points;
    k_[i] = dk * m;
  }
}

Grid Grid::standard() { return Grid(128, -1.0, 1.0); }

bool Grid::compatible(const Grid& other) const {
  return n_points_ == other.n_points_ && x_min_ == other.x_min_ &&
         x_max_ == other.x_max_;
}

}  // namespace bhw
