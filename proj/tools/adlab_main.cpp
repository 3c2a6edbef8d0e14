#include <exception>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "adlab/cli.hpp"
#include "adlab/group.hpp"

namespace {

using adlab::ExperimentConfig;

void add_common(CLI::App* cmd, ExperimentConfig& cfg, bool with_n = true) {
  cmd->add_option("--p", cfg.p, "Field characteristic (prime)")->capture_default_str();
  if (with_n) {
    cmd->add_option("--n", cfg.n, "Dimension of F_p^n")->capture_default_str();
  }
  cmd->add_option("--seed", cfg.seed, "64-bit experiment seed")->capture_default_str();
  cmd->add_option("--budget", cfg.budget, "Max element-enumeration count")
      ->capture_default_str();
  cmd->add_option("--output,-o", cfg.output, "Report path (default: stdout)");
  cmd->add_option("--format", cfg.format, "Report format: json | csv")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
}

int emit(const adlab::RunResult& result, const ExperimentConfig& cfg) {
  const std::string text = adlab::render_report(result.report, cfg.format);
  if (cfg.output.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(cfg.output);
    if (!out) {
      std::cerr << "error: cannot open " << cfg.output << " for writing\n";
      return 1;
    }
    out << text;
  }
  return result.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"additive-lab: exact sumset, Fourier, subspace-extraction and "
               "tampering-distance experiments over F_p^n"};
  app.require_subcommand(1);
  ExperimentConfig cfg;

  auto* brz = app.add_subcommand("brz-verify",
                                 "Subspace extraction from low-doubling sets, with "
                                 "containment verification");
  add_common(brz, cfg);
  brz->add_option("--instances", cfg.instances, "Seeded instances")->capture_default_str();
  brz->add_option("--thresholds", cfg.thresholds, "Shift-set thresholds tried in order")
      ->capture_default_str();
  brz->add_option("--set", cfg.input_set, "Run on a set file instead of seeded instances");

  auto* chang = app.add_subcommand("chang-scan", "Large-spectrum dimension bound scan");
  add_common(chang, cfg);
  chang->add_option("--instances", cfg.instances, "Seeded instances")->capture_default_str();
  chang->add_option("--gammas", cfg.gammas, "Spectrum thresholds")->capture_default_str();

  auto* plun = app.add_subcommand("plunnecke-scan", "Iterated sumset growth bound scan");
  add_common(plun, cfg);
  plun->add_option("--instances", cfg.instances, "Seeded instances")->capture_default_str();
  plun->add_option("--kmax", cfg.kmax, "Max k+l checked")->capture_default_str();

  auto* shift = app.add_subcommand("shiftset-scan", "Gentle shift-set closure scan");
  add_common(shift, cfg);
  shift->add_option("--instances", cfg.instances, "Seeded instances")->capture_default_str();
  shift->add_option("--t-max", cfg.t_max, "Max fold depth t")->capture_default_str();
  shift->add_option("--threshold", cfg.threshold, "Shift-set selection threshold")
      ->capture_default_str();
  shift->add_option("--set", cfg.input_set, "Run on a set file instead of seeded instances");

  auto* croot = app.add_subcommand("croot-trial",
                                   "Sampled almost-periodicity trials with pigeonhole "
                                   "shift-set verification");
  add_common(croot, cfg);
  croot->add_option("--instances", cfg.instances, "Seeded instances")->capture_default_str();
  croot->add_option("--trials", cfg.trials, "Sampled tuples per instance")
      ->capture_default_str();
  croot->add_option("--q", cfg.q_norm, "Norm exponent q")->capture_default_str();
  croot->add_option("--eps", cfg.eps, "Approximation accuracy")->capture_default_str();
  croot->add_option("--c", cfg.c_param, "Norm-bound constant C")->capture_default_str();
  croot->add_option("--set", cfg.input_set, "Run on a set file instead of seeded instances");

  auto* nmcd = app.add_subcommand("nmc-distance",
                                  "Exact LP distance from a tampering experiment to the "
                                  "affine simulation family");
  add_common(nmcd, cfg);
  nmcd->add_option("--instances", cfg.instances, "Instances (random families only)")
      ->capture_default_str();
  nmcd->add_option("--family", cfg.family,
                   "Tampering family: identity | constant | affine | coordperm | random")
      ->capture_default_str();
  nmcd->add_option("--const1", cfg.const1, "Left constant (constant family)")
      ->capture_default_str();
  nmcd->add_option("--const2", cfg.const2, "Right constant (constant family)")
      ->capture_default_str();

  auto* nmcs = app.add_subcommand("nmc-sweep",
                                  "Distance sweep of a coordinatewise-lifted tampering pair "
                                  "over n = 1..nmax");
  add_common(nmcs, cfg, /*with_n=*/false);
  nmcs->add_option("--family", cfg.family,
                   "Base family at n = 1: identity | constant | affine | coordperm | random")
      ->capture_default_str();
  nmcs->add_option("--const1", cfg.const1, "Left constant (constant family)")
      ->capture_default_str();
  nmcs->add_option("--const2", cfg.const2, "Right constant (constant family)")
      ->capture_default_str();
  nmcs->add_option("--nmax", cfg.nmax, "Largest dimension swept")->capture_default_str();

  auto* lin = app.add_subcommand("lintest",
                                 "Difference linearity test with exact best-linear agreement");
  add_common(lin, cfg);
  lin->add_option("--trials", cfg.trials, "Trials per corruption rate")->capture_default_str();
  lin->add_option("--corrupt", cfg.corrupt, "Corruption rates in [0, 1]")
      ->capture_default_str();
  lin->add_option("--fn", cfg.input_fn, "Analyze a function file instead of seeded maps");

  auto* eva = app.add_subcommand("evasive-search",
                                 "Minimum affine-intersection subset of F_p");
  add_common(eva, cfg, /*with_n=*/false);
  eva->add_option("--size", cfg.evasive_size, "Target set size (default (p+1)/2)")
      ->capture_default_str();
  eva->add_option("--mode", cfg.evasive_mode, "exhaustive | greedy")
      ->check(CLI::IsMember({"exhaustive", "greedy"}))
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;  // 0 covers --help; anything else is a usage error
  }

  cfg.command = app.get_subcommands().front()->get_name();
  try {
    return emit(adlab::run(cfg), cfg);
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
