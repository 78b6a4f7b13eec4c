// cbv_verify: run verification suites over a builtin spacetime and emit a
// machine-readable (json) or human-readable (markdown) report.
//
// Exit codes: 0 all checks pass, 1 any check failed, 2 configuration error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cbv/report.hpp"
#include "cbv/suites.hpp"

namespace {

// Splits "key=value"; throws on malformed input.
std::pair<std::string, std::string> split_kv(const std::string& s) {
  auto eq = s.find('=');
  if (eq == std::string::npos || eq == 0)
    throw std::invalid_argument("expected key=value, got: " + s);
  return {s.substr(0, eq), s.substr(eq + 1)};
}

// Config file: one `key = value` per line, '#' comments.  Recognized keys:
// metric, suites (comma list), seed, samples, provider, fd_step, out,
// format, param.<name>, tolerance.<suite>.
struct FileConfig {
  cbv::SuiteConfig cfg;
  std::string out;
  std::string format = "json";
};

void apply_key(FileConfig& fc, const std::string& key,
               const std::string& value) {
  if (key == "metric") fc.cfg.metric = value;
  else if (key == "seed") fc.cfg.seed = std::stoull(value);
  else if (key == "samples") fc.cfg.samples = std::stoi(value);
  else if (key == "provider") fc.cfg.provider = value;
  else if (key == "fd_step") fc.cfg.fd_step = std::stod(value);
  else if (key == "out") fc.out = value;
  else if (key == "format") fc.format = value;
  else if (key == "suites") {
    fc.cfg.suites.clear();
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ','))
      if (!item.empty()) fc.cfg.suites.push_back(item);
  } else if (key.rfind("param.", 0) == 0) {
    fc.cfg.params[key.substr(6)] = std::stod(value);
  } else if (key.rfind("tolerance.", 0) == 0) {
    fc.cfg.tolerance_overrides[key.substr(10)] = std::stod(value);
  } else {
    throw std::invalid_argument("unknown config key: " + key);
  }
}

void load_config_file(FileConfig& fc, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file: " + path);
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    // trim
    auto strip = [](std::string s) {
      auto b = s.find_first_not_of(" \t\r");
      auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    line = strip(line);
    if (line.empty()) continue;
    auto [k, v] = split_kv(line);
    apply_key(fc, strip(k), strip(v));
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Clifford-bundle verification suites"};

  std::string config_path, metric, provider, out_path, format;
  std::vector<std::string> params, suites;
  std::uint64_t seed = 0;
  int samples = -1;
  double fd_step = -1.0;

  app.add_option("--config", config_path, "config file (key = value lines)");
  app.add_option("--metric", metric,
                 "builtin spacetime name (default minkowski)");
  app.add_option("--param", params, "metric parameter, e.g. m=1.0")
      ->take_all();
  app.add_option("--suite", suites,
                 "suite to run (repeatable; default: all suites)")
      ->take_all();
  auto* seed_opt = app.add_option("--seed", seed, "rng seed");
  app.add_option("--samples", samples, "sample points per suite");
  app.add_option("--provider", provider,
                 "derivative provider: analytic | fd");
  app.add_option("--fd-step", fd_step, "finite-difference step scale");
  app.add_option("--out", out_path, "output path (default stdout)");
  app.add_option("--format", format, "report format: json | markdown")
      ->check(CLI::IsMember({"json", "markdown"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  FileConfig fc;
  try {
    if (!config_path.empty()) load_config_file(fc, config_path);
    // flags win over the config file
    if (!metric.empty()) fc.cfg.metric = metric;
    for (const auto& p : params) {
      auto [k, v] = split_kv(p);
      fc.cfg.params[k] = std::stod(v);
    }
    if (!suites.empty()) fc.cfg.suites = suites;
    if (seed_opt->count() > 0) fc.cfg.seed = seed;
    if (samples >= 0) fc.cfg.samples = samples;
    if (!provider.empty()) fc.cfg.provider = provider;
    if (fd_step > 0.0) fc.cfg.fd_step = fd_step;
    if (!out_path.empty()) fc.out = out_path;
    if (!format.empty()) fc.format = format;

    // no suite selection anywhere -> run everything
    if (fc.cfg.suites.empty() && suites.empty() && config_path.empty())
      fc.cfg.suites = cbv::suite_names();

    cbv::VerificationReport report = cbv::run_suites(fc.cfg);
    std::string doc = fc.format == "markdown" ? cbv::report_markdown(report)
                                              : cbv::report_json(report);
    if (fc.out.empty()) {
      std::cout << doc;
    } else {
      std::ofstream o(fc.out);
      if (!o) throw std::invalid_argument("cannot write: " + fc.out);
      o << doc;
    }
    return cbv::report_all_pass(report) ? 0 : 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
