#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <gmpxx.h>

#include "adlab/fpset.hpp"
#include "adlab/group.hpp"
#include "adlab/rng.hpp"

namespace adlab {

/**
 * A + B.  Uses the pairwise member loop when |A||B| is small and switches to
 * a union of bitset translates (one block-rotation pass per member of the
 * smaller set) once |A||B| exceeds p^n * n.
 */
FpSet sumset(const FpSet& A, const FpSet& B);

/// A - B.
FpSet difference_set(const FpSet& A, const FpSet& B);

/// kA - lA with 0A = {0}; k = l = 0 is rejected.
FpSet iterated(const FpSet& A, std::uint32_t k, std::uint32_t l);

struct DoublingReport {
  std::uint64_t size_a = 0;
  std::uint64_t size_diff = 0;
  mpq_class K;  // |A-A| / |A|, exact
  bool is_coset = false;
};

DoublingReport doubling(const FpSet& A);

/// Direct check that A is a coset of some subgroup (translate + closure).
bool is_subgroup_coset(const FpSet& A);

struct PlunneckeEntry {
  std::uint32_t k = 0, l = 0;
  std::uint64_t size = 0;   // |kA - lA|
  mpq_class bound;          // K^(k+l) * |A|
  mpq_class margin;         // bound - size
  bool ok = false;
};

struct PlunneckeReport {
  mpq_class K;
  std::vector<PlunneckeEntry> entries;  // all k, l >= 0 with 1 <= k+l <= kmax
  bool all_ok = true;
};

PlunneckeReport plunnecke_check(const FpSet& A, std::uint32_t kmax);

/** Matrix over F_p acting F_p^cols -> F_p^rows, row-major entries. */
struct LinearMap {
  std::uint32_t p = 0;
  std::uint32_t rows = 0;
  std::uint32_t cols = 0;
  std::vector<std::uint32_t> a;  // rows*cols entries in [0, p)

  std::uint32_t at(std::uint32_t i, std::uint32_t j) const { return a[i * cols + j]; }
  std::uint64_t apply(std::uint64_t x) const;

  static LinearMap identity(std::uint32_t p, std::uint32_t n);
  static LinearMap zero(std::uint32_t p, std::uint32_t rows, std::uint32_t cols);
  static LinearMap random(std::uint32_t p, std::uint32_t rows, std::uint32_t cols, SplitMix64& rng);
  /// Matrix with row-major entries given by base-p digits of id (digit 0 -> a[0]).
  static LinearMap from_index(std::uint32_t p, std::uint32_t rows, std::uint32_t cols,
                              std::uint64_t id);
  bool is_invertible() const;

  bool operator==(const LinearMap& o) const = default;
};

struct FreimanWitness {
  std::uint64_t a = 0, b = 0;  // colliding pair, a != b, phi(a) == phi(b)
  std::uint32_t k = 0, l = 0;  // stratum containing them
};

struct FreimanVerdict {
  bool is_hom = false;
  std::uint32_t order = 0;  // the t that was checked
  std::optional<FreimanWitness> witness;
};

/**
 * Order-t homomorphism test for a linear map restricted to A: injectivity on
 * every stratum kA - lA with k + l = t.  Strata are scanned smallest first
 * (ordered by max(k, l), then k), so a witness is reported from the least
 * iterated stratum that fails.
 */
FreimanVerdict freiman_check(const LinearMap& phi, const FpSet& A, std::uint32_t t);

}  // namespace adlab
