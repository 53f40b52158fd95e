#ifndef QBOUNCER_CORE_CHECKS_HPP
#define QBOUNCER_CORE_CHECKS_HPP

#include <string>
#include <vector>

#include "constants.hpp"

namespace qbouncer {

struct CheckResult {
  std::string name;
  double value = 0.0;      // measured discrepancy (>= 0)
  double tolerance = 0.0;  // pass iff value <= tolerance
  bool pass = false;
  double margin() const {
    return value > 0.0 ? tolerance / value : 1e308;
  }
};

// Every module's invariant suite at desk-scale cost (a few seconds).
// tighten > 1 shrinks each tolerance by that factor.
std::vector<CheckResult> run_checks(const Constants& c, double tighten = 1.0);

std::string checks_to_json(const std::vector<CheckResult>& checks,
                           double tighten);

}  // namespace qbouncer

#endif
