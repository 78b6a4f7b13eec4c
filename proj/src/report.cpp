#include "cbv/report.hpp"

#include <algorithm>
#include <cstdio>
#include <cstring>

#include <json.hpp>

namespace cbv {

bool report_all_pass(const VerificationReport& r) {
  return std::all_of(r.checks.begin(), r.checks.end(),
                     [](const CheckRecord& c) { return c.pass; });
}

namespace {

// shortest round-trip representation keeps the json byte-stable
std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  double back;
  std::sscanf(buf, "%lf", &back);
  if (back == v) {
    for (int prec = 1; prec < 17; ++prec) {
      char s[64];
      std::snprintf(s, sizeof(s), "%.*g", prec, v);
      std::sscanf(s, "%lf", &back);
      if (back == v) return s;
    }
  }
  return buf;
}

}  // namespace

std::string report_json(const VerificationReport& r) {
  // nlohmann::json objects keep keys lexicographically ordered
  nlohmann::json j;
  j["environment"] = {{"fd_step", num(r.environment.fd_step)},
                      {"provider", r.environment.provider},
                      {"samples", r.environment.samples},
                      {"seed", r.environment.seed}};
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : r.checks) {
    checks.push_back({{"id", c.id},
                      {"inputs_digest", c.inputs_digest},
                      {"metric", c.metric},
                      {"paper_eq_label", c.paper_eq_label},
                      {"pass", c.pass},
                      {"residual", num(c.residual)},
                      {"tolerance", num(c.tolerance)}});
  }
  j["checks"] = std::move(checks);
  j["pass"] = report_all_pass(r);
  return j.dump(2) + "\n";
}

std::string report_markdown(const VerificationReport& r) {
  std::string out = "# verification report\n\n";
  out += "- provider: " + r.environment.provider + "\n";
  out += "- fd_step: " + num(r.environment.fd_step) + "\n";
  out += "- seed: " + std::to_string(r.environment.seed) + "\n";
  out += "- samples: " + std::to_string(r.environment.samples) + "\n";
  std::string suite;
  for (const auto& c : r.checks) {
    std::string s = c.id.substr(0, c.id.find('/'));
    if (s != suite) {
      suite = s;
      out += "\n## " + suite + "\n\n";
      out += "| check | eq | metric | residual | tolerance | status |\n";
      out += "|---|---|---|---|---|---|\n";
    }
    out += "| " + c.id.substr(c.id.find('/') + 1) + " | " + c.paper_eq_label +
           " | " + c.metric + " | " + num(c.residual) + " | " +
           num(c.tolerance) + " | " + (c.pass ? "PASS" : "**FAIL**") + " |\n";
  }
  out += "\n**overall: " +
         std::string(report_all_pass(r) ? "PASS" : "FAIL") + "**\n";
  return out;
}

std::string fnv1a_digest(const std::vector<double>& values) {
  std::uint64_t h = 1469598103934665603ull;
  for (double v : values) {
    unsigned char bytes[sizeof(double)];
    std::memcpy(bytes, &v, sizeof(double));
    for (unsigned char b : bytes) {
      h ^= b;
      h *= 1099511628211ull;
    }
  }
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace cbv
