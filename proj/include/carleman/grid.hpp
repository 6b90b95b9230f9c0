#pragma once

#include <stdexcept>

#include <Eigen/Core>

namespace carleman {

/// Uniform cell-centered grid on the unit interval.
///
/// Coordinates are represented as (i + 1/2)/nx, so nx cells of width 1/nx
/// tile (0, 1) exactly regardless of rounding in dx itself.
class Grid1D {
 public:
  Grid1D() = default;
  explicit Grid1D(int nx) : nx_(nx) {
    if (nx < 4) throw std::invalid_argument("Grid1D: at least 4 cells required");
  }

  int nx() const { return nx_; }
  double dx() const { return 1.0 / nx_; }
  double center(int i) const { return (i + 0.5) / nx_; }

  Eigen::ArrayXd centers() const {
    Eigen::ArrayXd x(nx_);
    for (int i = 0; i < nx_; ++i) x[i] = center(i);
    return x;
  }

  bool operator==(const Grid1D& other) const { return nx_ == other.nx_; }
  bool operator!=(const Grid1D& other) const { return nx_ != other.nx_; }

 private:
  int nx_ = 4;
};

}  // namespace carleman
