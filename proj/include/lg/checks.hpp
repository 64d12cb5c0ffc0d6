#pragma once
// Seeded property-check suites, one per module.  Each suite sweeps its
// properties over deterministic pseudo-random samples (parallelized with
// OpenMP when available; results are independent of the thread count) and
// reports the worst error per property.

#include <cstdint>
#include <string>
#include <vector>

#include "lg/core.hpp"

namespace lg::checks {

struct PropertyResult {
  std::string name;
  int samples = 0;
  double max_error = 0.0;
  double tol = 0.0;
  std::int64_t worst_sample = -1;  // sample index of max_error
  bool pass = false;
};

struct SuiteResult {
  std::string suite;
  std::vector<PropertyResult> properties;
  bool pass() const;
};

// {"cl33", "gc4", "plucker", "versor", "screw"}.
std::vector<std::string> suite_names();

// Runs one suite.  tol_scale multiplies every property tolerance (so a
// --tol/GA_TOL override scales the whole suite uniformly).
// Error("UnknownSuite") for unknown names.
SuiteResult run_suite(const std::string& name, std::uint64_t seed,
                      double tol_scale = 1.0);

}  // namespace lg::checks
