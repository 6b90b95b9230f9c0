#pragma once

#include <vector>

#include <Eigen/Core>

#include "carleman/grid.hpp"

namespace carleman {

/// A scalar field sampled on one grid at a nondecreasing list of times.
struct FieldSeries {
  Grid1D grid;
  std::vector<double> times;
  std::vector<Eigen::ArrayXd> values;

  void push(double t, Eigen::ArrayXd v) {
    times.push_back(t);
    values.push_back(std::move(v));
  }
};

/// Linear interpolation in time; clamps outside [times.front(), times.back()].
Eigen::ArrayXd sample_linear(const FieldSeries& s, double t);

/// Block mean of groups of `factor` fine cells: the conservative restriction
/// of a cell-averaged field onto a `factor`-times coarser grid.
Eigen::ArrayXd restrict_mean(const Eigen::ArrayXd& fine, int factor);

/// Piecewise-constant injection onto a `factor`-times finer grid.
Eigen::ArrayXd prolong_constant(const Eigen::ArrayXd& coarse, int factor);

/// Resamples in time onto `times` and restricts in space onto `coarse`.
FieldSeries align_series(const FieldSeries& s, const std::vector<double>& times,
                         const Grid1D& coarse);

}  // namespace carleman
