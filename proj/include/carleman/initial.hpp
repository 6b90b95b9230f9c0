#pragma once

#include <string>

#include <Eigen/Core>

#include "carleman/grid.hpp"

namespace carleman {

/// Recipe for initial data; realized on a concrete grid by build_initial.
/// Keeping the recipe (rather than only the arrays) lets the sweep harness
/// re-evaluate presets on refined grids deterministically.
struct InitialSpec {
  enum class Kind { Constant, Step, Bump, Random, File };

  Kind kind = Kind::Constant;

  // constant
  double u0 = 1.0;
  double v0 = 1.0;

  // step: left values for x < x_split, right values otherwise
  double u_left = 1.0;
  double u_right = 1.0;
  double v_left = 1.0;
  double v_right = 1.0;
  double x_split = 0.5;

  // bump: base + amp * exp(-(x-center)^2 / (2 width^2)), both species
  double base = 1.0;
  double amp = 0.5;
  double center = 0.5;
  double width = 0.1;

  // random: per-cell uniform in [lo, hi], split generator, reproducible
  double lo = 0.0;
  double hi = 1.0;
  unsigned long long seed = 0;

  // file
  std::string file;
};

struct InitialData {
  Eigen::ArrayXd u_in;
  Eigen::ArrayXd v_in;
};

InitialData build_initial(const InitialSpec& spec, const Grid1D& grid);

/// Plain text, one "u v" pair per line, exactly nx lines.
InitialData load_initial(const std::string& path, const Grid1D& grid);
void save_initial(const InitialData& data, const std::string& path);

}  // namespace carleman
