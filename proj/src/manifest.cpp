#include "carleman/manifest.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>

namespace carleman {

std::string current_timestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  localtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y%m%d-%H%M%S", &tm);
  return buf;
}

void write_manifest(const RunManifest& m, const std::string& dir) {
  std::ofstream out(dir + "/manifest.txt");
  if (!out) return;  // manifest IO must not mask the primary failure
  out << "tool=" << tool_version() << "\n";
  out << "subcommand=" << m.subcommand << "\n";
  out << "start=" << m.start_time << "\n";
  out << "end=" << m.end_time << "\n";
  out << "exit_status=" << m.exit_status << "\n";
  out << "config:\n";
  out << m.config_echo;
}

}  // namespace carleman
