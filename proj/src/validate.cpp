#include "carleman/validate.hpp"

#include <cmath>
#include <sstream>

namespace carleman {

namespace {

// Positivity of each descriptor family on [0, T]. For the sinusoid the rule
// a - |b| > 0 is used regardless of how much of a period [0, T] covers.
void check_positive(const TimeFunction& f, double T, const std::string& name,
                    std::vector<std::string>& out) {
  bool positive = true;
  switch (f.kind) {
    case TimeFunction::Kind::Constant: positive = f.a > 0.0; break;
    case TimeFunction::Kind::Ramp: positive = f.a > 0.0 && f.a + f.b * T > 0.0; break;
    case TimeFunction::Kind::Sinusoid: positive = f.a - std::abs(f.b) > 0.0; break;
  }
  if (!positive)
    out.push_back("positivity of " + name + " on [0, T] is violated (" + f.describe() + ")");
  if (!std::isfinite(f.a) || !std::isfinite(f.b) || !std::isfinite(f.omega))
    out.push_back(name + " has non-finite parameters");
}

}  // namespace

std::string ValidationReport::joined() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < violations.size(); ++i) {
    if (i) os << "; ";
    os << violations[i];
  }
  return os.str();
}

ValidationReport validate_admissible(const BoundaryData& bc, const InitialData& init,
                                     double alpha) {
  ValidationReport r;

  if (!(alpha >= -1.0 && alpha <= 1.0))
    r.violations.push_back("alpha must lie in [-1, 1]");

  if (!(bc.horizon > 0.0) || !std::isfinite(bc.horizon))
    r.violations.push_back("time horizon T must be positive and finite");
  else {
    check_positive(bc.phi_minus, bc.horizon, "phi-", r.violations);
    check_positive(bc.phi_plus, bc.horizon, "phi+", r.violations);
  }

  if (init.u_in.size() != init.v_in.size())
    r.violations.push_back("u_in and v_in must have equal length");
  if (init.u_in.size() == 0)
    r.violations.push_back("initial data is empty");

  for (Eigen::Index i = 0; i < init.u_in.size(); ++i) {
    if (!(init.u_in[i] >= 0.0)) {  // also catches NaN
      r.violations.push_back("u_in must be nonnegative in every cell (cell " +
                             std::to_string(i) + ")");
      break;
    }
  }
  for (Eigen::Index i = 0; i < init.v_in.size(); ++i) {
    if (!(init.v_in[i] >= 0.0)) {
      r.violations.push_back("v_in must be nonnegative in every cell (cell " +
                             std::to_string(i) + ")");
      break;
    }
  }

  return r;
}

}  // namespace carleman
