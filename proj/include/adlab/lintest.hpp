#pragma once

#include <cstdint>
#include <vector>

#include <gmpxx.h>

#include "adlab/group.hpp"
#include "adlab/rng.hpp"
#include "adlab/setops.hpp"

namespace adlab {

/** Total lookup table of a function F_p^n -> F_p^n (entries are element indices). */
struct FnTable {
  GroupCtx ctx;
  std::vector<std::uint32_t> table;

  FnTable(const GroupCtx& c, std::vector<std::uint32_t> t);
  std::uint32_t operator()(std::uint64_t x) const { return table[x]; }
  FpVec value_vec(std::uint64_t x) const;
};

FnTable linear_fn(const GroupCtx& ctx, const LinearMap& m);
FnTable affine_fn(const GroupCtx& ctx, const LinearMap& m, std::uint64_t c);
FnTable random_fn(const GroupCtx& ctx, SplitMix64& rng);
/// Replaces the values at `points` distinct random arguments with uniform values.
FnTable corrupt_fn(FnTable f, std::uint64_t points, SplitMix64& rng);

/**
 * Exact acceptance probability of the one-query difference test: the
 * fraction of pairs (x, x') with f(x - x') = f(x) - f(x'), denominator
 * p^(2n).  Rejected when p^(2n) > 2^30.
 */
mpq_class accept_prob(const FnTable& f);

struct SampledAcceptance {
  std::uint64_t samples = 0;
  std::uint64_t successes = 0;
  double estimate = 0.0;
  double hoeffding_halfwidth_99 = 0.0;  // two-sided 99% confidence half-width
};

SampledAcceptance accept_prob_sampled(const FnTable& f, std::uint64_t samples, SplitMix64& rng);

struct BestLinearReport {
  LinearMap m;
  mpq_class agreement;      // Pr_x[f(x) = M x], exact for the returned M
  bool exhaustive = false;  // true: M maximizes agreement over all p^(n^2) maps
  std::uint64_t scanned = 0;
};

/**
 * Best strictly linear approximation.  Exhaustive when p^(n^2) * p^n fits the
 * budget (ties broken toward the smallest canonical matrix id); otherwise
 * samples `samples` random matrices when allowed, else rejects.
 */
BestLinearReport best_linear_agreement(const FnTable& f,
                                       std::uint64_t budget = std::uint64_t{1} << 26,
                                       bool allow_sampling = false, std::uint64_t samples = 0,
                                       SplitMix64* rng = nullptr);

struct SoundnessPoint {
  double rate = 0.0;
  std::uint64_t trial = 0;
  std::uint64_t corrupted = 0;
  mpq_class accept;
  mpq_class agreement;
};

struct SoundnessReport {
  std::vector<SoundnessPoint> points;
  std::vector<mpq_class> mean_accept;     // per rate
  std::vector<mpq_class> mean_agreement;  // per rate
};

/**
 * For each corruption rate: corrupts random linear maps on ceil(rate * p^n)
 * distinct points and records (acceptance, best linear agreement) pairs.
 */
SoundnessReport soundness_sweep(const GroupCtx& ctx, const std::vector<double>& rates,
                                std::uint64_t trials, SplitMix64& rng,
                                std::uint64_t budget = std::uint64_t{1} << 26);

namespace ref {
/// Serial count of accepting pairs (x, x').
std::uint64_t linearity_census(const FnTable& f);
}  // namespace ref

namespace kernels {
/// OpenMP twin of ref::linearity_census; per-thread partial sums, exact merge.
std::uint64_t linearity_census_parallel(const FnTable& f);
}  // namespace kernels

}  // namespace adlab
