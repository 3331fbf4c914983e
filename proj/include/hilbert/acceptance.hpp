#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace hilbert {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
  // Failed only on a sub-check shown to be out of reach for finite nets
  // (the disk spread of criterion 8); every other part passed.
  bool known_infeasible = false;
};

struct AcceptanceOptions {
  std::uint64_t seed = 1;
  std::vector<int> only;  // empty: all thirteen
};

/// Runs the acceptance suite; one line per criterion goes to `log` as soon as
/// it finishes.
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opt, std::ostream& log);

std::string format_result(const CriterionResult& r);

}  // namespace hilbert
