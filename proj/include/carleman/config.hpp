#pragma once

#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "carleman/boundary.hpp"
#include "carleman/harness.hpp"
#include "carleman/initial.hpp"

namespace carleman {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Flat key=value configuration shared by every subcommand. Unknown keys are
/// hard errors; every error names the offending key and line.
struct AppConfig {
  double alpha = 0.0;
  std::vector<double> epsilons;  // "epsilon" or comma list "epsilons"
  int nx = 100;
  double cfl = 1.0;
  double t_end = 1.0;
  double dt_par = 1e-3;
  BoundaryData bc;  // horizon set to t_end
  InitialSpec init;
  Window window;
  std::vector<double> ledger_betas;  // "alpha" token resolved against alpha
  long stride = 1;
  NewtonParams newton;

  std::set<std::string> present;  // keys that appeared in the file
  bool has(const std::string& key) const { return present.count(key) != 0; }
};

AppConfig parse_config(const std::string& path);

/// Resolved key=value echo (defaults included), deterministic ordering.
std::string config_echo(const AppConfig& cfg);

}  // namespace carleman
