#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace spinlab {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

/// Runs the built-in acceptance criteria 1..10. Randomized fixtures are
/// drawn from the seed. A criterion that throws is reported as failed.
std::vector<CriterionResult> run_acceptance(std::uint64_t seed = 1);

/// Runs a single criterion by id.
CriterionResult run_criterion(int id, std::uint64_t seed = 1);

/// One line per criterion plus a summary line.
std::string format_results(const std::vector<CriterionResult>& results);

}  // namespace spinlab
