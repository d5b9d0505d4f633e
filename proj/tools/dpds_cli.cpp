// Experiment harness: runs seeded experiments of the private mechanisms
// against exact brute-force oracles and emits one CSV row per
// (seed, checkpoint). Exit codes: 0 pass, 1 acceptance failure, 2 config
// error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "harness/runner.hpp"

int main(int argc, char** argv) {
  CLI::App app{"dpds experiment harness"};
  std::string config_path;
  std::string out_path;
  std::string noise_override;
  std::int64_t seed_override = -1;
  app.add_option("--config", config_path, "experiment config (JSON)")->required();
  app.add_option("--seed", seed_override, "override the base seed");
  app.add_option("--noise", noise_override, "override noise mode: off|live")
      ->check(CLI::IsMember({"off", "live"}));
  app.add_option("--out", out_path, "CSV output path (default: stdout)");
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  harness::ExperimentConfig cfg;
  try {
    std::ifstream in(config_path, std::ios::binary);
    if (!in) {
      std::cerr << "config error: cannot open " << config_path << "\n";
      return 2;
    }
    std::stringstream buf;
    buf << in.rdbuf();
    cfg = harness::parse_config(buf.str());
    if (seed_override >= 0) cfg.seed0 = static_cast<std::uint64_t>(seed_override);
    if (noise_override == "off") cfg.noise_off = true;
    if (noise_override == "live") cfg.noise_off = false;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  }

  harness::ExperimentReport report;
  try {
    report = harness::run_experiment(cfg);
  } catch (const std::exception& e) {
    std::cerr << "run error: " << e.what() << "\n";
    return 2;
  }

  if (out_path.empty()) {
    std::cout << report.csv;
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
      std::cerr << "config error: cannot write " << out_path << "\n";
      return 2;
    }
    out << report.csv;
  }
  std::cerr << "runs=" << cfg.seeds << " violated=" << report.violated_runs
            << " fraction=" << report.violation_fraction
            << (report.passed ? " PASS" : " FAIL") << "\n";
  return report.passed ? 0 : 1;
}
