#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <gmpxx.h>

#include "adlab/group.hpp"
#include "adlab/rng.hpp"
#include "adlab/setops.hpp"
#include "adlab/simplex.hpp"

namespace adlab {

/**
 * Subset S of F_p together with its affine-evasion profile
 * max_{(a,b) != (1,0)} |S intersect (aS + b)|.
 */
struct AffineEvasiveSet {
  std::uint32_t p = 0;
  std::vector<std::uint32_t> S;  // ascending
  std::uint64_t profile = 0;
  std::uint32_t worst_a = 1, worst_b = 0;
};

std::uint64_t affine_profile(std::uint32_t p, const std::vector<std::uint32_t>& S,
                             std::uint32_t* worst_a = nullptr, std::uint32_t* worst_b = nullptr);

enum class EvasiveMode { exhaustive, greedy };

/**
 * Minimum-profile set of the given size.  Exhaustive mode scans all
 * C(p, size) candidates in lexicographic order (first minimum wins); greedy
 * mode hill-climbs single-element swaps from a seeded start.
 */
AffineEvasiveSet search_affine_evasive(std::uint32_t p, std::uint32_t size, EvasiveMode mode,
                                       SplitMix64& rng,
                                       std::uint64_t budget = std::uint64_t{1} << 26);

struct Codeword {
  std::uint64_t L = 0, R = 0;
};

/**
 * Split-state encoder: draws (L, R) uniformly from {<L,R> = S[m]} by exact
 * fiber-weight sampling (L = 0 carries weight p^n when the symbol is 0; every
 * other L carries p^(n-1)).
 */
Codeword encode(std::uint32_t m, const AffineEvasiveSet& S, const GroupCtx& ctx, SplitMix64& rng);

/// Inner product, then membership in S; nullopt is the bottom symbol.
std::optional<std::uint32_t> decode(const Codeword& c, const AffineEvasiveSet& S,
                                    const GroupCtx& ctx);

/** Split-state tampering pair (f, g) as full lookup tables over F_p^n. */
struct TamperPair {
  GroupCtx ctx;
  std::vector<std::uint32_t> f, g;  // element index -> element index
};

TamperPair tamper_identity(const GroupCtx& ctx);
TamperPair tamper_constant(const GroupCtx& ctx, std::uint64_t c1, std::uint64_t c2);
TamperPair tamper_affine(const GroupCtx& ctx, const LinearMap& m1, std::uint64_t c1,
                         const LinearMap& m2, std::uint64_t c2);
TamperPair tamper_coord_perm(const GroupCtx& ctx, const std::vector<std::uint32_t>& perm_f,
                             const std::vector<std::uint32_t>& perm_g);
TamperPair tamper_random(const GroupCtx& ctx, SplitMix64& rng);
/// Applies a 1-dimensional pair to every coordinate of F_p^n.
TamperPair lift_coordinatewise(const TamperPair& base, std::uint32_t n);

/**
 * Exact joint law of (<L,R>, <f(L),g(R)>) under uniform (L,R): integer
 * counts over a common denominator p^(2n).  Rejected above p^(2n) = 2^30.
 */
class JointDist {
 public:
  JointDist(const GroupCtx& ctx, std::vector<std::uint64_t> counts);

  const GroupCtx& ctx() const { return ctx_; }
  std::uint32_t p() const { return ctx_.p(); }
  std::uint64_t denom() const { return denom_; }
  std::uint64_t count(std::uint32_t u, std::uint32_t y) const { return counts_[u * p() + y]; }
  mpq_class pmf(std::uint32_t u, std::uint32_t y) const;

 private:
  GroupCtx ctx_;
  std::vector<std::uint64_t> counts_;
  std::uint64_t denom_ = 0;
};

JointDist joint_dist(const TamperPair& t);

struct FamilyDistanceResult {
  mpq_class distance;            // total variation to the closest affine simulation
  std::vector<mpq_class> d;      // optimal mixture over (a,b), index a*p + b
  mpq_class replug;              // distance recomputed from d, must equal distance
  std::uint64_t lp_pivots = 0;
  bool certified = false;        // simplex optimality certificate verified
};

/**
 * Exact LP: min over distributions D on affine maps u -> au + b of the total
 * variation between the observed joint law and Q_D(u,y) =
 * (1/p) sum_{au+b=y} D(a,b).  Solved by the in-repo rational simplex.
 */
FamilyDistanceResult family_distance(const JointDist& p);

struct OutcomeDist {
  std::uint32_t message = 0;
  std::vector<std::uint64_t> counts;  // per decoded message, last entry = bottom
  std::uint64_t denom = 0;            // fiber size of the encoded symbol
};

/// For every message: exact law of decode(f(L), g(R)) over the encoding fiber.
std::vector<OutcomeDist> tamper_experiment(const TamperPair& t, const AffineEvasiveSet& S);

struct NmMetricResult {
  mpq_class value;
  std::uint32_t m1 = 0, m2 = 0;  // witness pair
};

/**
 * Max over message pairs (m, m') of the total variation between their
 * tampering outcome laws after both compared messages are renamed to a
 * common SAME symbol in both laws, so identity and constant tampering both
 * score zero.
 */
NmMetricResult nm_metric(const TamperPair& t, const AffineEvasiveSet& S);

namespace ref {
/// Serial pair census behind joint_dist.
std::vector<std::uint64_t> joint_census(const TamperPair& t);
}  // namespace ref

namespace kernels {
/// OpenMP twin of ref::joint_census with per-thread counters, exact merge.
std::vector<std::uint64_t> joint_census_parallel(const TamperPair& t);
}  // namespace kernels

}  // namespace adlab
