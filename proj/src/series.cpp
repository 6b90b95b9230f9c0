#include "carleman/series.hpp"

#include <algorithm>
#include <stdexcept>

namespace carleman {

Eigen::ArrayXd sample_linear(const FieldSeries& s, double t) {
  if (s.times.empty()) throw std::invalid_argument("sample_linear: empty series");
  if (t <= s.times.front()) return s.values.front();
  if (t >= s.times.back()) return s.values.back();
  const auto it = std::upper_bound(s.times.begin(), s.times.end(), t);
  const std::size_t hi = static_cast<std::size_t>(it - s.times.begin());
  const std::size_t lo = hi - 1;
  const double span = s.times[hi] - s.times[lo];
  if (span <= 0.0) return s.values[hi];
  const double w = (t - s.times[lo]) / span;
  return (1.0 - w) * s.values[lo] + w * s.values[hi];
}

Eigen::ArrayXd restrict_mean(const Eigen::ArrayXd& fine, int factor) {
  if (factor < 1) throw std::invalid_argument("restrict_mean: factor must be >= 1");
  if (fine.size() % factor != 0)
    throw std::invalid_argument("restrict_mean: size not divisible by factor");
  const Eigen::Index n = fine.size() / factor;
  Eigen::ArrayXd coarse(n);
  for (Eigen::Index i = 0; i < n; ++i) coarse[i] = fine.segment(i * factor, factor).mean();
  return coarse;
}

Eigen::ArrayXd prolong_constant(const Eigen::ArrayXd& coarse, int factor) {
  if (factor < 1) throw std::invalid_argument("prolong_constant: factor must be >= 1");
  Eigen::ArrayXd fine(coarse.size() * factor);
  for (Eigen::Index i = 0; i < coarse.size(); ++i)
    fine.segment(i * factor, factor).setConstant(coarse[i]);
  return fine;
}

FieldSeries align_series(const FieldSeries& s, const std::vector<double>& times,
                         const Grid1D& coarse) {
  if (s.grid.nx() % coarse.nx() != 0)
    throw std::invalid_argument("align_series: grids are not nested");
  const int factor = s.grid.nx() / coarse.nx();
  FieldSeries out;
  out.grid = coarse;
  out.times.reserve(times.size());
  out.values.reserve(times.size());
  for (double t : times) out.push(t, restrict_mean(sample_linear(s, t), factor));
  return out;
}

}  // namespace carleman
