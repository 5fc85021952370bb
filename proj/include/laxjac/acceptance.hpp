#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace laxjac {

struct AcceptanceOptions {
  std::uint64_t seed = 20240611;
  double tol = 1e-12;  // integrator tolerance
};

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;              // measured values against their thresholds
  std::vector<std::string> notes;  // extra diagnostics, printed under the line
  double seconds = 0.0;
};

inline constexpr int kCriterionCount = 10;

/// Runs criterion id (1..10). Module errors are caught and reported as a failure.
CriterionResult run_criterion(int id, const AcceptanceOptions& opt = {});

/// "acceptance_07 PASS linearization: ... (3.1 s)" followed by indented notes.
std::string format_result(const CriterionResult& r);

}  // namespace laxjac
