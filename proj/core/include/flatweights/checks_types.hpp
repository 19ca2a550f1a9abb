#pragma once

#include <map>
#include <optional>
#include <string>

#include "flatweights/grid.hpp"

namespace flatweights {

// Outcome of one inequality check: lhs <= rhs up to tol, ratio = lhs/rhs.
struct CheckResult {
  std::string id;
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;
  bool pass = false;
  double tol = 0.0;
  std::optional<Cube> witness;
  std::map<std::string, double> params;
};

// ratio = lhs/rhs (0 when both vanish, huge when only rhs does);
// pass iff ratio <= 1 + tol.
CheckResult make_check(std::string id, double lhs, double rhs, double tol,
                       std::optional<Cube> witness = std::nullopt);

// Tolerance for checks whose inequality is provable verbatim for discrete
// averages; empirically expected checks use tol 0 and report margins.
inline constexpr double kGuaranteedTol = 1e-9;

}  // namespace flatweights
