#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace corruptmatch {

/// One statistical or exact check. Exact checks use tolerance 0.
struct VerifyCheck {
  std::string name;
  double value = 0.0;
  double target = 0.0;
  double tolerance = 0.0;
  bool passed = false;
};

struct VerifyReport {
  std::string suite;
  std::vector<VerifyCheck> checks;

  bool passed() const;
};

// mgf, hypergeom, guessing, zstat, orbits, imitation, overwhelm.
const std::vector<std::string>& verify_suite_names();

// Runs a suite with fixed seeds. Throws std::invalid_argument listing the
// available suites when `suite` is unknown.
VerifyReport verify_theory(const std::string& suite);

// One line per check with its margin, then a PASS/FAIL line for the suite.
void print_report(std::ostream& out, const VerifyReport& report);

}  // namespace corruptmatch
