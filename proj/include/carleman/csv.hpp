#pragma once

#include <cstdio>
#include <initializer_list>
#include <ostream>
#include <string>

namespace carleman::csv {

// All CSV output goes through these helpers: '.' decimal separator,
// shortest-exact %.17g doubles, '\n' line endings, no locale dependence.

inline std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

inline void row_prefix(std::ostream& os, std::initializer_list<double> values) {
  bool first = true;
  for (double v : values) {
    if (!first) os << ',';
    os << num(v);
    first = false;
  }
}

inline void row(std::ostream& os, std::initializer_list<double> values) {
  row_prefix(os, values);
  os << '\n';
}

}  // namespace carleman::csv
