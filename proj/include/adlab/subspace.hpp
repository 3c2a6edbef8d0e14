#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include <gmpxx.h>

#include "adlab/fpset.hpp"
#include "adlab/group.hpp"

namespace adlab {

/**
 * Linear subspace of F_p^n held as a canonical basis: reduced row-echelon
 * form with pivot columns strictly increasing (coordinate 0 leftmost), pivot
 * entries 1, and zeros elsewhere in pivot columns.  Two Subspace values are
 * equal iff their basis lists are identical.
 */
class Subspace {
 public:
  explicit Subspace(const GroupCtx& ctx);  // zero subspace

  static Subspace from_generators(const GroupCtx& ctx, const std::vector<std::uint64_t>& gens);
  /// Trusts that rows are already in canonical reduced form (enumeration path).
  static Subspace from_rref(const GroupCtx& ctx, std::vector<std::vector<std::uint32_t>> rows,
                            std::vector<std::uint32_t> pivots);

  const GroupCtx& ctx() const { return ctx_; }
  std::uint32_t dim() const { return static_cast<std::uint32_t>(rows_.size()); }
  std::uint64_t size() const { return ctx_.pow_p(dim()); }
  const std::vector<std::vector<std::uint32_t>>& basis() const { return rows_; }
  const std::vector<std::uint64_t>& basis_indices() const { return row_idx_; }
  const std::vector<std::uint32_t>& pivots() const { return pivots_; }

  /// Eliminates pivot digits of v; the residual is the canonical coset
  /// representative of v + V and is 0 exactly when v lies in the subspace.
  std::uint64_t coset_rep(std::uint64_t v) const;
  bool contains(std::uint64_t v) const { return coset_rep(v) == 0; }

  /// Adds a generator, keeping the basis canonical; returns true if dim grew.
  bool extend(std::uint64_t v);

  std::vector<std::uint64_t> enumerate() const;
  FpSet to_set() const;

  bool operator==(const Subspace& o) const {
    return ctx_ == o.ctx_ && rows_ == o.rows_;
  }

 private:
  GroupCtx ctx_;
  std::vector<std::vector<std::uint32_t>> rows_;
  std::vector<std::uint32_t> pivots_;
  std::vector<std::uint64_t> row_idx_;

  void refresh_indices();
};

Subspace span(const GroupCtx& ctx, const std::vector<std::uint64_t>& gens);
Subspace span(const FpSet& Y);

Subspace orthogonal_complement(const Subspace& W);
Subspace orthogonal_complement(const FpSet& Y);

/// Gaussian binomial [n choose dim]_p: the number of dim-dimensional subspaces.
mpz_class subspace_count(const GroupCtx& ctx, std::uint32_t dim);

/**
 * Visits every dim-dimensional subspace exactly once in canonical order
 * (pivot-column combinations lexicographically, free entries by ascending
 * base-p odometer).  The visitor returns false to stop early.
 */
void enumerate_subspaces(const GroupCtx& ctx, std::uint32_t dim,
                         const std::function<bool(const Subspace&)>& visit);

}  // namespace adlab
