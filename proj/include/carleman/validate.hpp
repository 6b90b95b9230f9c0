#pragma once

#include <string>
#include <vector>

#include "carleman/boundary.hpp"
#include "carleman/initial.hpp"

namespace carleman {

struct ValidationReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
  std::string joined() const;
};

/// Admissibility of boundary and initial data for exponent alpha.
/// Collects every violated condition; never throws for bad data.
ValidationReport validate_admissible(const BoundaryData& bc, const InitialData& init,
                                     double alpha);

}  // namespace carleman
