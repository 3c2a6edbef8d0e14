#pragma once

#include <cstdint>
#include <vector>

#include <gmpxx.h>

#include "adlab/fourier.hpp"
#include "adlab/fpset.hpp"
#include "adlab/rng.hpp"
#include "adlab/setops.hpp"
#include "adlab/subspace.hpp"

namespace adlab {

/**
 * Exact pair counts c(x) = #{(a,b) in A^2 : a - b - x in A - A} for every x;
 * the shift expectation is c(x) / |A|^2.
 */
std::vector<std::uint64_t> shift_pair_counts(const FpSet& A);

/// { x : E_{a,b in A}[1_{A-A}(a - b - x)] >= threshold }; always contains 0.
FpSet gentle_shift_set(const FpSet& A, double threshold);

struct ShiftSetReport {
  double threshold = 0;
  std::uint32_t t_max = 0;
  struct PerT {
    std::uint32_t t = 0;
    mpq_class min_expectation;
    std::uint64_t argmin_x = 0;
    bool ok = false;  // min_expectation >= threshold
  };
  std::vector<PerT> per_t;
  bool all_ok = true;
};

/// Minimum shift expectation over tX for each t <= t_max.
ShiftSetReport shift_closure_check(const FpSet& A, const FpSet& X, std::uint32_t t_max,
                                   double threshold);

struct CrootReport {
  std::uint32_t ell = 0;       // ceil(q / eps^2)
  std::uint64_t trials = 0;
  std::uint64_t successes = 0;  // sampled (tuple, x) with norm <= C*eps/2
  double success_fraction = 0;
  double q = 0, eps = 0, c = 0;
  std::uint64_t best_tuple_good_x = 0;   // largest {x : tuple approximates rho_{A+x}*f}
  std::uint64_t shift_set_size = 0;      // size of the derived difference shift set
  std::uint64_t shift_set_verified = 0;  // members with ||rho_d*rho_A*f - rho_A*f||_q <= C*eps
};

/**
 * Samples ell-tuples from A^ell and shifts x, measuring
 * ||rho_{A+x}*f - (1/ell) sum_i rho_{a_i}*f||_q against C*eps/2; also runs
 * the pigeonhole grouping: for the tuple good for the most shifts, the
 * difference set of its good shifts is reported and re-verified against C*eps.
 * f must take values in [0,1].
 */
CrootReport croot_sisask_trial(const FpSet& A, const DensityFn& f, double q, double eps, double c,
                               std::uint64_t trials, SplitMix64& rng,
                               std::uint64_t budget = std::uint64_t{1} << 26);

/// span(Spec_{1/2}(X))^perp.
Subspace spec_perp_subspace(const FpSet& X);

struct TheSpaceReport {
  std::uint32_t t = 0;
  mpq_class e_plain;     // E[1_{A-A}(a - b - x_1 - ... - x_t)], exact
  mpq_class e_blurred;   // same with an extra uniform shift from V
  mpq_class diff;        // |e_plain - e_blurred|
  mpq_class bound;       // p^n / (2^t |A|)
  bool bound_ok = false;
  double e_plain_fourier = 0;  // spectral recomputation of e_plain
  double fourier_abs_err = 0;
  bool fourier_ok = false;  // agreement within 1e-9
  std::uint32_t v_dim = 0;
};

/**
 * Exact two-route check that blurring by V = span(Spec_{1/2}(X))^perp moves
 * the t-fold shifted difference expectation by at most p^n / (2^t |A|).
 * The plain expectation is recomputed spectrally as
 * sum_u A^(u) A^(-u) X^(-u)^t (1_{A-A})^(u) and must agree to 1e-9.
 */
TheSpaceReport lemma_thespace_check(const FpSet& A, const FpSet& X, std::uint32_t t);

/**
 * Largest-dimension subspace fully contained in S (0 must lie in S), found by
 * descending dimension through the canonical subspace enumeration; ties are
 * broken by enumeration order.  budget caps element membership probes.
 */
Subspace max_subspace_in(const FpSet& S, std::uint64_t budget = std::uint64_t{1} << 26);

enum class BrzMethod { pipeline, brute_force };

struct BrzConfig {
  std::vector<double> thresholds = {0.98, 0.99, 0.999};
  std::uint64_t budget = std::uint64_t{1} << 26;
};

struct BrzResult {
  Subspace V;
  bool contained = false;  // V subset of 2A - 2A, verified by enumeration
  BrzMethod method = BrzMethod::pipeline;
  double threshold_used = 0;  // 0 when brute force
  mpq_class size_ratio;       // |V| / |A|
};

/**
 * Finds a subspace inside 2A - 2A: spectral route (gentle shift set at each
 * threshold, then the 1/2-spectrum annihilator), falling back to exhaustive
 * search if containment fails at every threshold.
 */
BrzResult brz_pipeline(const FpSet& A, const BrzConfig& cfg = {});

struct QuasiPfrReport {
  BrzResult brz;
  std::uint64_t rep = 0;  // canonical representative of the chosen coset
  FpSet B;                // A intersected with the best coset of V
  Subspace span_b;
  std::uint64_t nonempty_cosets = 0;  // cosets of V meeting A
  mpq_class b_ratio;                  // |B| / |A|
  mpq_class span_ratio;               // |span(B)| / |A|
};

/**
 * Covering step: picks the coset of the pipeline subspace richest in A
 * (ties to the smallest canonical representative index) and reports the
 * piece together with its span.
 */
QuasiPfrReport quasi_pfr(const FpSet& A, const BrzConfig& cfg = {});

/// Result of the exhaustive minimal-dimension embedding search.
struct MinimalEmbedding {
  LinearMap phi;             // surjective map realising the minimal dimension
  std::uint32_t m = 0;       // codomain dimension
  std::uint64_t scanned = 0; // matrices examined before success
};

/**
 * Smallest codomain dimension m admitting a surjective linear map
 * F_p^n -> F_p^m that stays injective on every order-t stratum over A.
 * Exhaustive over all matrices in canonical index order per dimension;
 * only available for groups of order at most 64.  Throws BudgetError once
 * more than `budget` matrices have been examined.
 */
MinimalEmbedding minimal_embedding_search(const FpSet& A, std::uint32_t t,
                                          std::uint64_t budget = std::uint64_t{1} << 26);

namespace ref {
/// Serial per-shift triple loop with its own difference-set membership.
std::vector<std::uint64_t> shift_pair_counts(const FpSet& A);
}  // namespace ref

namespace kernels {
/// OpenMP twin of the public shift_pair_counts.
std::vector<std::uint64_t> shift_pair_counts_parallel(const FpSet& A);
}  // namespace kernels

}  // namespace adlab
