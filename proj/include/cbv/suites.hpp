#pragma once

#include <map>
#include <string>
#include <vector>

#include "cbv/report.hpp"

namespace cbv {

// Runner configuration.  Unknown suite names are rejected by run_suites with
// a std::invalid_argument.
struct SuiteConfig {
  std::string metric = "minkowski";
  std::map<std::string, double> params;  // e.g. {"m", 1.0}
  std::vector<std::string> suites;       // subset of suite_names()
  std::uint64_t seed = 0;
  int samples = 4;
  std::string provider = "analytic";     // "analytic" | "fd"
  double fd_step = 1e-5;
  std::map<std::string, double> tolerance_overrides;  // per-suite
};

const std::vector<std::string>& suite_names();

// Runs the selected suites over seeded sample points and assembles the
// report (ordered merge by check id; deterministic per (config, seed)).
VerificationReport run_suites(const SuiteConfig& cfg);

}  // namespace cbv
