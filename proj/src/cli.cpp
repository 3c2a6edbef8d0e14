#include "adlab/cli.hpp"

#include <algorithm>
#include <chrono>
#include <stdexcept>

#include "adlab/bogolyubov.hpp"
#include "adlab/fourier.hpp"
#include "adlab/gen.hpp"
#include "adlab/group.hpp"
#include "adlab/io.hpp"
#include "adlab/lintest.hpp"
#include "adlab/nmc.hpp"
#include "adlab/setops.hpp"

namespace adlab {
namespace {

Json float_list(const std::vector<double>& v) {
  Json a = Json::array();
  for (double x : v) a.push_back(num_float(x));
  return a;
}

Json echo_config(const ExperimentConfig& c) {
  Json j;
  j["command"] = c.command;
  j["p"] = num_exact(std::uint64_t{c.p});
  j["n"] = num_exact(std::uint64_t{c.n});
  j["seed"] = num_exact(c.seed);
  j["budget"] = num_exact(c.budget);
  j["format"] = c.format;
  j["instances"] = num_exact(c.instances);
  j["trials"] = num_exact(c.trials);
  j["t_max"] = num_exact(std::uint64_t{c.t_max});
  j["threshold"] = num_float(c.threshold);
  j["thresholds"] = float_list(c.thresholds);
  j["gammas"] = float_list(c.gammas);
  j["kmax"] = num_exact(std::uint64_t{c.kmax});
  j["q_norm"] = num_float(c.q_norm);
  j["eps"] = num_float(c.eps);
  j["c_param"] = num_float(c.c_param);
  j["family"] = c.family;
  j["const1"] = num_exact(c.const1);
  j["const2"] = num_exact(c.const2);
  j["nmax"] = num_exact(std::uint64_t{c.nmax});
  j["evasive_size"] = num_exact(std::uint64_t{c.evasive_size});
  j["evasive_mode"] = c.evasive_mode;
  j["corrupt"] = float_list(c.corrupt);
  j["input_set"] = c.input_set;
  j["input_fn"] = c.input_fn;
  return j;
}

const char* method_name(BrzMethod m) {
  return m == BrzMethod::pipeline ? "pipeline" : "brute-force";
}

void cmd_brz_verify(const ExperimentConfig& cfg, Json& records, Json& summary) {
  const GroupCtx ctx(cfg.p, cfg.n);
  const BrzConfig bc{cfg.thresholds, cfg.budget};
  const std::uint64_t count = cfg.input_set.empty() ? cfg.instances : 1;
  std::uint64_t contained = 0, pipeline_hits = 0;
  for (std::uint64_t i = 0; i < count; ++i) {
    SplitMix64 rng(cfg.seed, i);
    const FpSet a = cfg.input_set.empty() ? random_low_doubling(ctx, 2, rng)
                                          : load_set_file(cfg.input_set);
    const DoublingReport dr = doubling(a);
    const BrzResult r = brz_pipeline(a, bc);
    if (r.contained) ++contained;
    if (r.method == BrzMethod::pipeline) ++pipeline_hits;
    Json rec;
    rec["instance"] = num_exact(i);
    rec["size_a"] = num_exact(dr.size_a);
    rec["doubling"] = num_exact(dr.K);
    rec["contained"] = r.contained;
    rec["method"] = method_name(r.method);
    rec["threshold_used"] = num_float(r.threshold_used);
    rec["v_dim"] = num_exact(std::uint64_t{r.V.dim()});
    rec["v_size"] = num_exact(r.V.size());
    rec["size_ratio"] = num_exact(r.size_ratio);
    records.push_back(std::move(rec));
  }
  summary["instances"] = num_exact(count);
  summary["contained"] = num_exact(contained);
  summary["all_contained"] = contained == count;
  summary["pipeline"] = num_exact(pipeline_hits);
  summary["fallback"] = num_exact(count - pipeline_hits);
}

void cmd_chang_scan(const ExperimentConfig& cfg, Json& records, Json& summary) {
  const GroupCtx ctx(cfg.p, cfg.n);
  std::uint64_t violations = 0;
  double min_slack = 0;
  bool have_slack = false;
  for (std::uint64_t i = 0; i < cfg.instances; ++i) {
    SplitMix64 rng(cfg.seed, i);
    const FpSet x = random_set(ctx, rng);
    for (double gamma : cfg.gammas) {
      const ChangReport cr = chang_check(x, gamma, LogBase::natural);
      if (!cr.ok) ++violations;
      if (!have_slack || cr.slack < min_slack) {
        min_slack = cr.slack;
        have_slack = true;
      }
      Json rec;
      rec["instance"] = num_exact(i);
      rec["size_x"] = num_exact(x.size());
      rec["gamma"] = num_float(gamma);
      rec["dim"] = num_exact(std::uint64_t{cr.dim});
      rec["bound"] = num_float(cr.bound);
      rec["slack"] = num_float(cr.slack);
      rec["ok"] = cr.ok;
      records.push_back(std::move(rec));
    }
  }
  summary["instances"] = num_exact(cfg.instances);
  summary["violations"] = num_exact(violations);
  summary["min_slack"] = num_float(min_slack);
}

void cmd_plunnecke_scan(const ExperimentConfig& cfg, Json& records, Json& summary) {
  const GroupCtx ctx(cfg.p, cfg.n);
  std::uint64_t violations = 0;
  for (std::uint64_t i = 0; i < cfg.instances; ++i) {
    SplitMix64 rng(cfg.seed, i);
    const FpSet a = random_set(ctx, rng);
    const PlunneckeReport pr = plunnecke_check(a, cfg.kmax);
    for (const PlunneckeEntry& e : pr.entries) {
      if (!e.ok) ++violations;
      Json rec;
      rec["instance"] = num_exact(i);
      rec["size_a"] = num_exact(a.size());
      rec["doubling"] = num_exact(pr.K);
      rec["k"] = num_exact(std::uint64_t{e.k});
      rec["l"] = num_exact(std::uint64_t{e.l});
      rec["size"] = num_exact(e.size);
      rec["bound"] = num_exact(e.bound);
      rec["margin"] = num_exact(e.margin);
      rec["ok"] = e.ok;
      records.push_back(std::move(rec));
    }
  }
  summary["instances"] = num_exact(cfg.instances);
  summary["violations"] = num_exact(violations);
}

void cmd_shiftset_scan(const ExperimentConfig& cfg, Json& records, Json& summary) {
  const GroupCtx ctx(cfg.p, cfg.n);
  std::uint64_t failures = 0;
  for (std::uint64_t i = 0; i < cfg.instances; ++i) {
    SplitMix64 rng(cfg.seed, i);
    const FpSet a = cfg.input_set.empty() ? random_low_doubling(ctx, 2, rng)
                                          : load_set_file(cfg.input_set);
    const FpSet x = gentle_shift_set(a, cfg.threshold);
    const ShiftSetReport sr = shift_closure_check(a, x, cfg.t_max, cfg.threshold);
    for (const auto& pt : sr.per_t) {
      if (!pt.ok) ++failures;
      Json rec;
      rec["instance"] = num_exact(i);
      rec["size_a"] = num_exact(a.size());
      rec["size_x"] = num_exact(x.size());
      rec["t"] = num_exact(std::uint64_t{pt.t});
      rec["min_expectation"] = num_exact(pt.min_expectation);
      rec["argmin_x"] = num_exact(pt.argmin_x);
      rec["ok"] = pt.ok;
      records.push_back(std::move(rec));
    }
    if (!cfg.input_set.empty()) break;
  }
  summary["instances"] = num_exact(cfg.input_set.empty() ? cfg.instances : 1);
  summary["failures"] = num_exact(failures);
}

void cmd_croot_trial(const ExperimentConfig& cfg, Json& records, Json& summary) {
  const GroupCtx ctx(cfg.p, cfg.n);
  std::uint64_t verified_all = 0;
  const std::uint64_t count = cfg.input_set.empty() ? cfg.instances : 1;
  for (std::uint64_t i = 0; i < count; ++i) {
    SplitMix64 rng(cfg.seed, i);
    const FpSet a = cfg.input_set.empty()
                        ? random_set_of_size(ctx, std::max<std::uint64_t>(1, ctx.order() / 4), rng)
                        : load_set_file(cfg.input_set);
    std::vector<double> fv(a.ctx().order());
    for (double& v : fv) v = rng.unit();
    const DensityFn f(a.ctx(), std::move(fv));
    const CrootReport cr = croot_sisask_trial(a, f, cfg.q_norm, cfg.eps, cfg.c_param, cfg.trials,
                                              rng, cfg.budget);
    const bool all_ok = cr.shift_set_verified == cr.shift_set_size;
    if (all_ok) ++verified_all;
    Json rec;
    rec["instance"] = num_exact(i);
    rec["size_a"] = num_exact(a.size());
    rec["ell"] = num_exact(std::uint64_t{cr.ell});
    rec["trials"] = num_exact(cr.trials);
    rec["successes"] = num_exact(cr.successes);
    rec["success_fraction"] = num_float(cr.success_fraction);
    rec["best_tuple_good_x"] = num_exact(cr.best_tuple_good_x);
    rec["shift_set_size"] = num_exact(cr.shift_set_size);
    rec["shift_set_verified"] = num_exact(cr.shift_set_verified);
    rec["shift_set_all_ok"] = all_ok;
    records.push_back(std::move(rec));
  }
  summary["instances"] = num_exact(count);
  summary["shift_sets_fully_verified"] = num_exact(verified_all);
}

TamperPair make_family(const GroupCtx& ctx, const ExperimentConfig& cfg, SplitMix64& rng) {
  if (cfg.family == "identity") return tamper_identity(ctx);
  if (cfg.family == "constant") return tamper_constant(ctx, cfg.const1, cfg.const2);
  if (cfg.family == "affine") {
    const LinearMap m1 = LinearMap::random(ctx.p(), ctx.n(), ctx.n(), rng);
    const LinearMap m2 = LinearMap::random(ctx.p(), ctx.n(), ctx.n(), rng);
    const std::uint64_t c1 = rng.below(ctx.order());
    const std::uint64_t c2 = rng.below(ctx.order());
    return tamper_affine(ctx, m1, c1, m2, c2);
  }
  if (cfg.family == "coordperm") {
    auto perm = [&](std::uint32_t n) {
      std::vector<std::uint32_t> v(n);
      for (std::uint32_t k = 0; k < n; ++k) v[k] = k;
      for (std::uint32_t k = n; k-- > 1;) {
        const std::uint64_t j = rng.below(k + 1);
        std::swap(v[k], v[j]);
      }
      return v;
    };
    return tamper_coord_perm(ctx, perm(ctx.n()), perm(ctx.n()));
  }
  if (cfg.family == "random") return tamper_random(ctx, rng);
  throw std::invalid_argument("unknown tampering family: " + cfg.family);
}

bool family_is_random(const std::string& family) {
  return family == "affine" || family == "coordperm" || family == "random";
}

void cmd_nmc_distance(const ExperimentConfig& cfg, Json& records, Json& summary) {
  const GroupCtx ctx(cfg.p, cfg.n);
  const std::uint64_t count = family_is_random(cfg.family) ? cfg.instances : 1;
  mpq_class max_distance = 0;
  bool all_certified = true;
  for (std::uint64_t i = 0; i < count; ++i) {
    SplitMix64 rng(cfg.seed, i);
    const TamperPair tp = make_family(ctx, cfg, rng);
    const JointDist jd = joint_dist(tp);
    const FamilyDistanceResult fd = family_distance(jd);
    max_distance = std::max(max_distance, fd.distance);
    all_certified = all_certified && fd.certified;
    Json mixture = Json::array();
    for (const mpq_class& w : fd.d) mixture.push_back(num_exact(w));
    Json rec;
    rec["instance"] = num_exact(i);
    rec["family"] = cfg.family;
    rec["distance"] = num_exact(fd.distance);
    rec["replug"] = num_exact(fd.replug);
    rec["certified"] = fd.certified;
    rec["lp_pivots"] = num_exact(fd.lp_pivots);
    rec["mixture"] = std::move(mixture);
    records.push_back(std::move(rec));
  }
  summary["instances"] = num_exact(count);
  summary["max_distance"] = num_exact(max_distance);
  summary["all_certified"] = all_certified;
}

void cmd_nmc_sweep(const ExperimentConfig& cfg, Json& records, Json& summary) {
  if (cfg.nmax < 1) throw std::invalid_argument("nmc-sweep: nmax must be at least 1");
  const GroupCtx base_ctx(cfg.p, 1);
  SplitMix64 rng(cfg.seed, 0);
  const TamperPair base = make_family(base_ctx, cfg, rng);
  bool all_certified = true;
  for (std::uint32_t n = 1; n <= cfg.nmax; ++n) {
    const TamperPair tp = (n == 1) ? base : lift_coordinatewise(base, n);
    const JointDist jd = joint_dist(tp);
    const FamilyDistanceResult fd = family_distance(jd);
    all_certified = all_certified && fd.certified;
    Json rec;
    rec["n"] = num_exact(std::uint64_t{n});
    rec["order"] = num_exact(tp.ctx.order());
    rec["family"] = cfg.family;
    rec["distance"] = num_exact(fd.distance);
    rec["certified"] = fd.certified;
    records.push_back(std::move(rec));
  }
  summary["nmax"] = num_exact(std::uint64_t{cfg.nmax});
  summary["all_certified"] = all_certified;
}

std::string matrix_digits(const LinearMap& m) {
  std::string s;
  s.reserve(m.a.size());
  for (std::uint32_t v : m.a) {
    s += static_cast<char>(v < 10 ? '0' + v : 'a' + (v - 10));
  }
  return s;
}

void cmd_lintest(const ExperimentConfig& cfg, Json& records, Json& summary) {
  const GroupCtx ctx(cfg.p, cfg.n);
  if (!cfg.input_fn.empty()) {
    const FnTable f = load_fn_file(cfg.input_fn);
    const mpq_class acc = accept_prob(f);
    const BestLinearReport bl = best_linear_agreement(f, cfg.budget);
    Json rec;
    rec["source"] = cfg.input_fn;
    rec["accept_prob"] = num_exact(acc);
    rec["agreement"] = num_exact(bl.agreement);
    rec["matrix"] = matrix_digits(bl.m);
    rec["exhaustive"] = bl.exhaustive;
    records.push_back(std::move(rec));
    summary["instances"] = num_exact(std::uint64_t{1});
    return;
  }
  SplitMix64 rng(cfg.seed, 0);
  const std::uint64_t trials = std::max<std::uint64_t>(1, cfg.trials);
  const SoundnessReport sw = soundness_sweep(ctx, cfg.corrupt, trials, rng, cfg.budget);
  for (const SoundnessPoint& pt : sw.points) {
    Json rec;
    rec["rate"] = num_float(pt.rate);
    rec["trial"] = num_exact(pt.trial);
    rec["corrupted"] = num_exact(pt.corrupted);
    rec["accept_prob"] = num_exact(pt.accept);
    rec["agreement"] = num_exact(pt.agreement);
    records.push_back(std::move(rec));
  }
  Json rates = Json::array();
  for (std::size_t i = 0; i < cfg.corrupt.size(); ++i) {
    Json r;
    r["rate"] = num_float(cfg.corrupt[i]);
    r["mean_accept"] = num_exact(sw.mean_accept[i]);
    r["mean_agreement"] = num_exact(sw.mean_agreement[i]);
    rates.push_back(std::move(r));
  }
  summary["trials"] = num_exact(trials);
  summary["rates"] = std::move(rates);
}

void cmd_evasive_search(const ExperimentConfig& cfg, Json& records, Json& summary) {
  if (!is_prime(cfg.p)) throw std::invalid_argument("evasive-search: p must be prime");
  const std::uint32_t size = cfg.evasive_size ? cfg.evasive_size : (cfg.p + 1) / 2;
  EvasiveMode mode;
  if (cfg.evasive_mode == "exhaustive") {
    mode = EvasiveMode::exhaustive;
  } else if (cfg.evasive_mode == "greedy") {
    mode = EvasiveMode::greedy;
  } else {
    throw std::invalid_argument("evasive-search: mode must be exhaustive or greedy");
  }
  SplitMix64 rng(cfg.seed, 0);
  const AffineEvasiveSet r = search_affine_evasive(cfg.p, size, mode, rng, cfg.budget);
  Json elems = Json::array();
  for (std::uint32_t s : r.S) elems.push_back(num_exact(std::uint64_t{s}));
  Json rec;
  rec["p"] = num_exact(std::uint64_t{cfg.p});
  rec["size"] = num_exact(std::uint64_t{size});
  rec["mode"] = cfg.evasive_mode;
  rec["set"] = std::move(elems);
  rec["profile"] = num_exact(r.profile);
  rec["worst_a"] = num_exact(std::uint64_t{r.worst_a});
  rec["worst_b"] = num_exact(std::uint64_t{r.worst_b});
  records.push_back(std::move(rec));
  summary["profile"] = num_exact(r.profile);
}

void dispatch(const ExperimentConfig& cfg, Json& records, Json& summary) {
  if (cfg.command == "brz-verify") return cmd_brz_verify(cfg, records, summary);
  if (cfg.command == "chang-scan") return cmd_chang_scan(cfg, records, summary);
  if (cfg.command == "plunnecke-scan") return cmd_plunnecke_scan(cfg, records, summary);
  if (cfg.command == "shiftset-scan") return cmd_shiftset_scan(cfg, records, summary);
  if (cfg.command == "croot-trial") return cmd_croot_trial(cfg, records, summary);
  if (cfg.command == "nmc-distance") return cmd_nmc_distance(cfg, records, summary);
  if (cfg.command == "nmc-sweep") return cmd_nmc_sweep(cfg, records, summary);
  if (cfg.command == "lintest") return cmd_lintest(cfg, records, summary);
  if (cfg.command == "evasive-search") return cmd_evasive_search(cfg, records, summary);
  throw std::invalid_argument("unknown command: " + cfg.command);
}

}  // namespace

RunResult run(const ExperimentConfig& cfg) {
  if (cfg.format != "json" && cfg.format != "csv") {
    throw std::invalid_argument("format must be json or csv");
  }
  if (cfg.instances == 0) throw std::invalid_argument("instances must be positive");
  if (cfg.budget == 0) throw std::invalid_argument("budget must be positive");

  RunResult out;
  out.report = report_shell(echo_config(cfg));
  out.report["rng"] = Json{{"name", SplitMix64::name()},
                           {"seed", num_exact(cfg.seed)},
                           {"stream_policy", "stream = instance index"}};
  Json records = Json::array();
  Json summary = Json::object();
  const auto t0 = std::chrono::steady_clock::now();
  try {
    dispatch(cfg, records, summary);
  } catch (const BudgetError& e) {
    out.report["error"] = Json{{"type", "budget"}, {"message", e.what()}};
    out.exit_code = 1;
  }
  const auto t1 = std::chrono::steady_clock::now();
  out.report["records"] = std::move(records);
  out.report["summary"] = std::move(summary);
  out.report["timing"] =
      Json{{"seconds", num_float(std::chrono::duration<double>(t1 - t0).count())}};
  return out;
}

std::string render_report(const Json& report, const std::string& format) {
  if (format == "csv") return report_to_csv(report);
  return report.dump(2) + "\n";
}

}  // namespace adlab
