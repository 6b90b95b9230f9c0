#pragma once

#include <string>

namespace carleman {

inline const char* tool_version() { return "carleman 0.1.0"; }

/// Provenance record written as manifest.txt in every run directory before
/// exit, including on failure.
struct RunManifest {
  std::string subcommand;
  std::string config_echo;
  std::string start_time;
  std::string end_time;
  int exit_status = 0;
};

std::string current_timestamp();

void write_manifest(const RunManifest& m, const std::string& dir);

}  // namespace carleman
