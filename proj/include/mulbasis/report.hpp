#pragma once

#include <string>
#include <vector>

namespace mulbasis {

// A single checked inequality lhs <= rhs. Both sides are computed values.
struct InequalityReport {
  std::string name;
  double lhs = 0;
  double rhs = 0;
  bool hypotheses_ok = true;
  bool holds = false;
};

inline InequalityReport check_le(std::string name, double lhs, double rhs, bool hypotheses_ok = true) {
  return {std::move(name), lhs, rhs, hypotheses_ok, lhs <= rhs};
}

// An identity lhs == rhs, recorded as the two one-sided reports.
inline void check_eq(std::vector<InequalityReport>& out, const std::string& name, double lhs, double rhs,
                     bool hypotheses_ok = true) {
  out.push_back(check_le(name + ".le", lhs, rhs, hypotheses_ok));
  out.push_back(check_le(name + ".ge", rhs, lhs, hypotheses_ok));
}

// A report fails only when its hypotheses were met and the inequality did not hold.
inline bool all_hold(const std::vector<InequalityReport>& reports) {
  for (const auto& r : reports)
    if (r.hypotheses_ok && !r.holds) return false;
  return true;
}

}  // namespace mulbasis
