#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "adlab/report.hpp"

namespace adlab {

/**
 * Full configuration of one experiment run.  Every knob is a flag; there is
 * no environment-variable input, so (config, seed) determines the report.
 */
struct ExperimentConfig {
  std::string command;  // brz-verify | chang-scan | plunnecke-scan | shiftset-scan |
                        // croot-trial | nmc-distance | nmc-sweep | lintest | evasive-search
  std::uint32_t p = 2;
  std::uint32_t n = 2;
  std::uint64_t seed = 1;
  std::uint64_t budget = std::uint64_t{1} << 26;
  std::string output;           // empty = stdout
  std::string format = "json";  // json | csv

  std::uint64_t instances = 20;  // seeded instances for scan commands
  std::uint64_t trials = 8;      // per-instance trials where applicable

  // Shift-set / Bogolyubov knobs.
  std::uint32_t t_max = 2;
  double threshold = 0.98;
  std::vector<double> thresholds = {0.98, 0.99, 0.999};

  // Chang / Plünnecke knobs.
  std::vector<double> gammas = {0.3, 0.5, 0.8};
  std::uint32_t kmax = 4;

  // Almost-periodicity trial knobs.
  double q_norm = 2.0;
  double eps = 0.25;
  double c_param = 4.0;

  // Tampering-family knobs.
  std::string family = "identity";  // identity | constant | affine | coordperm | random
  std::uint64_t const1 = 0;
  std::uint64_t const2 = 0;
  std::uint32_t nmax = 2;

  // Evasive-set search knobs.
  std::uint32_t evasive_size = 0;  // 0 = (p + 1) / 2
  std::string evasive_mode = "exhaustive";

  // Linearity-test knobs.
  std::vector<double> corrupt = {0.0};

  // Optional file inputs (override the seeded generator for one instance).
  std::string input_set;
  std::string input_fn;
};

struct RunResult {
  Json report;
  int exit_code = 0;  // 0 ok, 1 runtime/budget failure (partial report)
};

/// Dispatches the experiment; identical (config, seed) gives byte-identical reports.
RunResult run(const ExperimentConfig& cfg);

/// Serializes per cfg.format ("json" pretty-printed, "csv" flat projection).
std::string render_report(const Json& report, const std::string& format);

}  // namespace adlab
