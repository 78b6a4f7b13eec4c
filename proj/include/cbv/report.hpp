#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace cbv {

// One verification record: a named identity evaluated at seeded sample
// points, with the worst residual and the pinned tolerance.
struct CheckRecord {
  std::string id;              // "suite/check-name"
  std::string paper_eq_label;  // equation label the check verifies
  std::string metric;
  std::string inputs_digest;   // FNV-1a hash of the sample inputs
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct ReportEnvironment {
  std::string provider = "analytic";
  double fd_step = 1e-5;
  std::uint64_t seed = 0;
  int samples = 0;
};

struct VerificationReport {
  std::vector<CheckRecord> checks;  // sorted by id
  ReportEnvironment environment;
};

bool report_all_pass(const VerificationReport& r);

// Machine-readable form: schema-stable JSON with lexicographically ordered
// keys; byte-identical for identical (config, seed).
std::string report_json(const VerificationReport& r);
// Human-readable form: markdown grouped by suite with pass/fail badges.
std::string report_markdown(const VerificationReport& r);

// Digest helper shared by the suite runners.
std::string fnv1a_digest(const std::vector<double>& values);

}  // namespace cbv
