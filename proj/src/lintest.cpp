#include "adlab/lintest.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <string>

namespace adlab {
namespace {

void check_pair_budget(const GroupCtx& ctx, const char* where) {
  if (ctx.order() > (std::uint64_t{1} << 15)) {
    throw BudgetError(std::string(where) + ": p^(2n) > 2^30 pairs; rejected");
  }
}

void check_map_shape(const GroupCtx& ctx, const LinearMap& m, const char* where) {
  if (m.p != ctx.p() || m.rows != ctx.n() || m.cols != ctx.n()) {
    throw std::invalid_argument(std::string(where) + ": map shape mismatch");
  }
}

// Distinct uniform sample of `k` values from [0, n) with O(k) memory.
std::set<std::uint64_t> sample_distinct(std::uint64_t n, std::uint64_t k, SplitMix64& rng) {
  std::set<std::uint64_t> out;
  for (std::uint64_t j = n - k; j < n; ++j) {
    const std::uint64_t t = rng.below(j + 1);
    if (!out.insert(t).second) out.insert(j);
  }
  return out;
}

std::uint64_t count_agreement(const FnTable& f, const LinearMap& m) {
  const GroupCtx& ctx = f.ctx;
  std::uint64_t hits = 0;
  for (std::uint64_t x = 0; x < ctx.order(); ++x) {
    if (m.apply(x) == f.table[x]) ++hits;
  }
  return hits;
}

mpq_class exact_fraction(std::uint64_t num, std::uint64_t den) {
  mpq_class q(static_cast<unsigned long>(num), static_cast<unsigned long>(den));
  q.canonicalize();
  return q;
}

}  // namespace

FnTable::FnTable(const GroupCtx& c, std::vector<std::uint32_t> t) : ctx(c), table(std::move(t)) {
  if (table.size() != ctx.order()) throw std::invalid_argument("FnTable: table must be total");
  for (std::uint32_t v : table) {
    if (v >= ctx.order()) throw std::invalid_argument("FnTable: value out of range");
  }
}

FpVec FnTable::value_vec(std::uint64_t x) const { return make_vec(ctx, table[x]); }

FnTable linear_fn(const GroupCtx& ctx, const LinearMap& m) {
  check_map_shape(ctx, m, "linear_fn");
  std::vector<std::uint32_t> t(ctx.order());
  for (std::uint64_t x = 0; x < ctx.order(); ++x) {
    t[x] = static_cast<std::uint32_t>(m.apply(x));
  }
  return FnTable(ctx, std::move(t));
}

FnTable affine_fn(const GroupCtx& ctx, const LinearMap& m, std::uint64_t c) {
  check_map_shape(ctx, m, "affine_fn");
  if (c >= ctx.order()) throw std::invalid_argument("affine_fn: shift out of range");
  std::vector<std::uint32_t> t(ctx.order());
  for (std::uint64_t x = 0; x < ctx.order(); ++x) {
    t[x] = static_cast<std::uint32_t>(ctx.add(m.apply(x), c));
  }
  return FnTable(ctx, std::move(t));
}

FnTable random_fn(const GroupCtx& ctx, SplitMix64& rng) {
  std::vector<std::uint32_t> t(ctx.order());
  for (auto& v : t) v = static_cast<std::uint32_t>(rng.below(ctx.order()));
  return FnTable(ctx, std::move(t));
}

FnTable corrupt_fn(FnTable f, std::uint64_t points, SplitMix64& rng) {
  const std::uint64_t order = f.ctx.order();
  if (points > order) throw std::invalid_argument("corrupt_fn: more points than arguments");
  for (std::uint64_t x : sample_distinct(order, points, rng)) {
    f.table[x] = static_cast<std::uint32_t>(rng.below(order));
  }
  return f;
}

mpq_class accept_prob(const FnTable& f) {
  check_pair_budget(f.ctx, "accept_prob");
  const std::uint64_t order = f.ctx.order();
  return exact_fraction(kernels::linearity_census_parallel(f), order * order);
}

SampledAcceptance accept_prob_sampled(const FnTable& f, std::uint64_t samples, SplitMix64& rng) {
  if (samples == 0) throw std::invalid_argument("accept_prob_sampled: need samples >= 1");
  const GroupCtx& ctx = f.ctx;
  SampledAcceptance out;
  out.samples = samples;
  for (std::uint64_t i = 0; i < samples; ++i) {
    const std::uint64_t x = rng.below(ctx.order());
    const std::uint64_t xp = rng.below(ctx.order());
    const std::uint64_t d = ctx.sub(x, xp);
    if (f.table[d] == ctx.sub(f.table[x], f.table[xp])) ++out.successes;
  }
  out.estimate = static_cast<double>(out.successes) / static_cast<double>(samples);
  out.hoeffding_halfwidth_99 =
      std::sqrt(std::log(2.0 / 0.01) / (2.0 * static_cast<double>(samples)));
  return out;
}

BestLinearReport best_linear_agreement(const FnTable& f, std::uint64_t budget,
                                       bool allow_sampling, std::uint64_t samples,
                                       SplitMix64* rng) {
  const GroupCtx& ctx = f.ctx;
  const std::uint32_t nn = ctx.n() * ctx.n();
  mpz_class total_maps;
  mpz_ui_pow_ui(total_maps.get_mpz_t(), ctx.p(), nn);
  const mpz_class cost = total_maps * ctx.order();

  if (cost <= budget) {
    const std::int64_t nmaps = static_cast<std::int64_t>(total_maps.get_ui());
    std::int64_t best_id = 0;
    std::uint64_t best_hits = 0;
    bool have = false;
#pragma omp parallel
    {
      std::int64_t my_id = 0;
      std::uint64_t my_hits = 0;
      bool my_have = false;
#pragma omp for schedule(static) nowait
      for (std::int64_t id = 0; id < nmaps; ++id) {
        const LinearMap m = LinearMap::from_index(ctx.p(), ctx.n(), ctx.n(),
                                                  static_cast<std::uint64_t>(id));
        const std::uint64_t hits = count_agreement(f, m);
        if (!my_have || hits > my_hits || (hits == my_hits && id < my_id)) {
          my_have = true;
          my_hits = hits;
          my_id = id;
        }
      }
#pragma omp critical
      {
        if (my_have &&
            (!have || my_hits > best_hits || (my_hits == best_hits && my_id < best_id))) {
          have = true;
          best_hits = my_hits;
          best_id = my_id;
        }
      }
    }
    BestLinearReport out{
        LinearMap::from_index(ctx.p(), ctx.n(), ctx.n(), static_cast<std::uint64_t>(best_id)),
        exact_fraction(best_hits, ctx.order()), true, static_cast<std::uint64_t>(nmaps)};
    return out;
  }

  if (!allow_sampling) {
    throw BudgetError("best_linear_agreement: exhaustive scan needs " + cost.get_str() +
                      " evaluations, budget is " + std::to_string(budget) +
                      " and sampling fallback is disabled");
  }
  if (rng == nullptr || samples == 0) {
    throw std::invalid_argument("best_linear_agreement: sampling mode needs rng and samples");
  }
  LinearMap best = LinearMap::zero(ctx.p(), ctx.n(), ctx.n());
  std::uint64_t best_hits = count_agreement(f, best);
  for (std::uint64_t i = 0; i < samples; ++i) {
    const LinearMap m = LinearMap::random(ctx.p(), ctx.n(), ctx.n(), *rng);
    const std::uint64_t hits = count_agreement(f, m);
    if (hits > best_hits) {
      best_hits = hits;
      best = m;
    }
  }
  return BestLinearReport{best, exact_fraction(best_hits, ctx.order()), false, samples};
}

SoundnessReport soundness_sweep(const GroupCtx& ctx, const std::vector<double>& rates,
                                std::uint64_t trials, SplitMix64& rng, std::uint64_t budget) {
  if (trials == 0) throw std::invalid_argument("soundness_sweep: need trials >= 1");
  SoundnessReport out;
  const double order = static_cast<double>(ctx.order());
  for (double rate : rates) {
    if (rate < 0.0 || rate > 1.0) {
      throw std::invalid_argument("soundness_sweep: rate outside [0, 1]");
    }
    const auto corrupted =
        std::min<std::uint64_t>(ctx.order(), static_cast<std::uint64_t>(std::ceil(rate * order)));
    mpq_class acc_sum = 0, agr_sum = 0;
    for (std::uint64_t trial = 0; trial < trials; ++trial) {
      const LinearMap m = LinearMap::random(ctx.p(), ctx.n(), ctx.n(), rng);
      const FnTable f = corrupt_fn(linear_fn(ctx, m), corrupted, rng);
      SoundnessPoint pt;
      pt.rate = rate;
      pt.trial = trial;
      pt.corrupted = corrupted;
      pt.accept = accept_prob(f);
      pt.agreement = best_linear_agreement(f, budget).agreement;
      acc_sum += pt.accept;
      agr_sum += pt.agreement;
      out.points.push_back(std::move(pt));
    }
    out.mean_accept.push_back(acc_sum / trials);
    out.mean_agreement.push_back(agr_sum / trials);
  }
  return out;
}

namespace ref {

std::uint64_t linearity_census(const FnTable& f) {
  const GroupCtx& ctx = f.ctx;
  std::uint64_t count = 0;
  for (std::uint64_t x = 0; x < ctx.order(); ++x) {
    for (std::uint64_t xp = 0; xp < ctx.order(); ++xp) {
      const std::uint64_t d = ctx.sub(x, xp);
      if (f.table[d] == ctx.sub(f.table[x], f.table[xp])) ++count;
    }
  }
  return count;
}

}  // namespace ref

namespace kernels {

std::uint64_t linearity_census_parallel(const FnTable& f) {
  const GroupCtx& ctx = f.ctx;
  const std::int64_t order = static_cast<std::int64_t>(ctx.order());
  std::uint64_t count = 0;
#pragma omp parallel for schedule(static) reduction(+ : count)
  for (std::int64_t x = 0; x < order; ++x) {
    for (std::int64_t xp = 0; xp < order; ++xp) {
      const std::uint64_t d = ctx.sub(static_cast<std::uint64_t>(x),
                                      static_cast<std::uint64_t>(xp));
      if (f.table[d] == ctx.sub(f.table[static_cast<std::size_t>(x)],
                                f.table[static_cast<std::size_t>(xp)])) {
        ++count;
      }
    }
  }
  return count;
}

}  // namespace kernels

}  // namespace adlab
