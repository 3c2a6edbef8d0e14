#pragma once

#include <cstdint>

#include <gmpxx.h>

#include "adlab/fpset.hpp"
#include "adlab/group.hpp"
#include "adlab/rng.hpp"
#include "adlab/subspace.hpp"

namespace adlab {

/// Each element kept independently with the given probability; retried until nonempty.
FpSet random_set(const GroupCtx& ctx, SplitMix64& rng, double density = 0.5);

/// Uniform random subset of exactly k elements (1 <= k <= p^n).
FpSet random_set_of_size(const GroupCtx& ctx, std::uint64_t k, SplitMix64& rng);

/// Uniform-ish random subspace of the exact dimension (random vectors extended to a basis).
Subspace random_subspace(const GroupCtx& ctx, std::uint32_t dim, SplitMix64& rng);

/// Random coset v + W of a random subspace of the given dimension.
FpSet random_coset(const GroupCtx& ctx, std::uint32_t dim, SplitMix64& rng);

/**
 * Random set with doubling |A-A|/|A| <= k_max, built as a dense random subset
 * of one or two cosets of a random subspace and verified exactly; falls back
 * to a full coset (doubling 1) if max_tries structured draws all fail.
 */
FpSet random_low_doubling(const GroupCtx& ctx, const mpq_class& k_max, SplitMix64& rng,
                          std::uint32_t max_tries = 64);

}  // namespace adlab
