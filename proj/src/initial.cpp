#include "carleman/initial.hpp"

#include <cmath>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace carleman {

namespace {

// splitmix64; used instead of <random> distributions so that seeded initial
// data are bit-identical across standard library implementations.
struct SplitMix64 {
  std::uint64_t state;
  explicit SplitMix64(std::uint64_t seed) : state(seed) {}
  std::uint64_t next_u64() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }
};

}  // namespace

InitialData build_initial(const InitialSpec& spec, const Grid1D& grid) {
  const int n = grid.nx();
  InitialData d;
  d.u_in.resize(n);
  d.v_in.resize(n);

  switch (spec.kind) {
    case InitialSpec::Kind::Constant:
      d.u_in.setConstant(spec.u0);
      d.v_in.setConstant(spec.v0);
      break;
    case InitialSpec::Kind::Step:
      for (int i = 0; i < n; ++i) {
        const bool left = grid.center(i) < spec.x_split;
        d.u_in[i] = left ? spec.u_left : spec.u_right;
        d.v_in[i] = left ? spec.v_left : spec.v_right;
      }
      break;
    case InitialSpec::Kind::Bump: {
      if (spec.width <= 0.0) throw std::invalid_argument("initial bump: width must be > 0");
      const double inv = 1.0 / (2.0 * spec.width * spec.width);
      for (int i = 0; i < n; ++i) {
        const double dxc = grid.center(i) - spec.center;
        const double val = spec.base + spec.amp * std::exp(-dxc * dxc * inv);
        d.u_in[i] = val;
        d.v_in[i] = val;
      }
      break;
    }
    case InitialSpec::Kind::Random: {
      if (spec.hi < spec.lo) throw std::invalid_argument("initial random: hi < lo");
      SplitMix64 rng(spec.seed);
      for (int i = 0; i < n; ++i) d.u_in[i] = spec.lo + (spec.hi - spec.lo) * rng.next_unit();
      for (int i = 0; i < n; ++i) d.v_in[i] = spec.lo + (spec.hi - spec.lo) * rng.next_unit();
      break;
    }
    case InitialSpec::Kind::File:
      return load_initial(spec.file, grid);
  }
  return d;
}

InitialData load_initial(const std::string& path, const Grid1D& grid) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("initial data file not found: " + path);

  InitialData d;
  d.u_in.resize(grid.nx());
  d.v_in.resize(grid.nx());

  std::string line;
  int row = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (row >= grid.nx())
      throw std::runtime_error("initial data file " + path + ": more lines than grid cells");
    std::istringstream ls(line);
    double u, v;
    if (!(ls >> u >> v))
      throw std::runtime_error("initial data file " + path + ": bad line " + std::to_string(row + 1));
    d.u_in[row] = u;
    d.v_in[row] = v;
    ++row;
  }
  if (row != grid.nx())
    throw std::runtime_error("initial data file " + path + ": expected " +
                             std::to_string(grid.nx()) + " lines, got " + std::to_string(row));
  return d;
}

void save_initial(const InitialData& data, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  char buf[80];
  for (Eigen::Index i = 0; i < data.u_in.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%.17g %.17g\n", data.u_in[i], data.v_in[i]);
    out << buf;
  }
}

}  // namespace carleman
