#include "adlab/gen.hpp"

#include <stdexcept>
#include <vector>

#include "adlab/setops.hpp"

namespace adlab {

FpSet random_set(const GroupCtx& ctx, SplitMix64& rng, double density) {
  if (density <= 0.0 || density > 1.0) {
    throw std::invalid_argument("random_set: density outside (0, 1]");
  }
  FpSet a(ctx);
  while (a.empty()) {
    for (std::uint64_t x = 0; x < ctx.order(); ++x) {
      if (rng.unit() < density) a.insert(x);
    }
  }
  return a;
}

FpSet random_set_of_size(const GroupCtx& ctx, std::uint64_t k, SplitMix64& rng) {
  if (k == 0 || k > ctx.order()) throw std::invalid_argument("random_set_of_size: bad size");
  FpSet a(ctx);
  // Floyd's distinct sampler: uniform k-subset with O(k) draws.
  for (std::uint64_t j = ctx.order() - k; j < ctx.order(); ++j) {
    const std::uint64_t t = rng.below(j + 1);
    if (a.contains(t)) {
      a.insert(j);
    } else {
      a.insert(t);
    }
  }
  return a;
}

Subspace random_subspace(const GroupCtx& ctx, std::uint32_t dim, SplitMix64& rng) {
  if (dim > ctx.n()) throw std::invalid_argument("random_subspace: dimension exceeds n");
  Subspace w(ctx);
  std::uint32_t attempts = 0;
  const std::uint32_t cap = 64 * (dim + 1);
  while (w.dim() < dim && attempts < cap) {
    w.extend(rng.below(ctx.order()));
    ++attempts;
  }
  // Deterministic completion: unit vectors fill any remaining dimensions.
  for (std::uint32_t k = 0; k < ctx.n() && w.dim() < dim; ++k) {
    w.extend(ctx.pow_p(k));
  }
  return w;
}

FpSet random_coset(const GroupCtx& ctx, std::uint32_t dim, SplitMix64& rng) {
  const Subspace w = random_subspace(ctx, dim, rng);
  return w.to_set().translated(rng.below(ctx.order()));
}

FpSet random_low_doubling(const GroupCtx& ctx, const mpq_class& k_max, SplitMix64& rng,
                          std::uint32_t max_tries) {
  if (k_max < 1) throw std::invalid_argument("random_low_doubling: k_max below 1");
  const std::uint32_t n = ctx.n();
  for (std::uint32_t attempt = 0; attempt < max_tries; ++attempt) {
    const std::uint32_t dim =
        (n <= 1) ? n : static_cast<std::uint32_t>(1 + rng.below(n - 1));  // 1 .. n-1
    const Subspace w = random_subspace(ctx, dim, rng);
    const FpSet base = w.to_set();
    const bool two_cosets = w.dim() < n && rng.below(2) == 1;

    FpSet pool = base.translated(rng.below(ctx.order()));
    if (two_cosets) {
      FpSet second = base.translated(rng.below(ctx.order()));
      pool |= second;
    }
    const double density = 0.7 + 0.3 * rng.unit();
    FpSet a(ctx);
    pool.for_each([&](std::uint64_t x) {
      if (rng.unit() < density) a.insert(x);
    });
    if (a.empty()) continue;
    if (doubling(a).K <= k_max) return a;
  }
  // Guaranteed fallback: any coset has doubling exactly 1.
  const std::uint32_t dim = (n == 0) ? 0 : n - (n > 1 ? 1 : 0);
  return random_coset(ctx, dim, rng);
}

}  // namespace adlab
