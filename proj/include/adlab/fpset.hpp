#pragma once

#include <cstdint>
#include <initializer_list>
#include <vector>

#include "adlab/group.hpp"

namespace adlab {

/**
 * Subset of F_p^n stored as a bitset over element indices with a cached
 * popcount.  Value semantics; the owning group travels with the set.
 */
class FpSet {
 public:
  explicit FpSet(const GroupCtx& ctx);
  FpSet(const GroupCtx& ctx, std::initializer_list<std::uint64_t> indices);

  static FpSet full(const GroupCtx& ctx);

  const GroupCtx& ctx() const { return ctx_; }
  std::uint64_t order() const { return ctx_.order(); }
  std::uint64_t size() const { return size_; }
  bool empty() const { return size_ == 0; }

  bool contains(std::uint64_t index) const {
    return (words_[index >> 6] >> (index & 63)) & 1u;
  }

  void insert(std::uint64_t index) {
    std::uint64_t& w = words_[index >> 6];
    const std::uint64_t bit = std::uint64_t{1} << (index & 63);
    size_ += !(w & bit);
    w |= bit;
  }

  void erase(std::uint64_t index) {
    std::uint64_t& w = words_[index >> 6];
    const std::uint64_t bit = std::uint64_t{1} << (index & 63);
    size_ -= !!(w & bit);
    w &= ~bit;
  }

  std::vector<std::uint64_t> members() const;
  std::uint64_t min_element() const;

  template <typename F>
  void for_each(F&& f) const {
    for (std::size_t wi = 0; wi < words_.size(); ++wi) {
      std::uint64_t w = words_[wi];
      while (w != 0) {
        const int b = std::countr_zero(w);
        f(static_cast<std::uint64_t>(wi * 64 + b));
        w &= w - 1;
      }
    }
  }

  FpSet& operator|=(const FpSet& o);
  FpSet& operator&=(const FpSet& o);
  FpSet& operator^=(const FpSet& o);
  FpSet complement() const;
  bool operator==(const FpSet& o) const;
  bool is_subset_of(const FpSet& o) const;

  /// The translate A + g, computed by per-digit block rotation of the bitset.
  FpSet translated(std::uint64_t g) const;
  /// The pointwise negation -A.
  FpSet negated() const;

  const std::vector<std::uint64_t>& words() const { return words_; }
  std::vector<std::uint64_t>& mutable_words() { return words_; }
  void recount();

 private:
  GroupCtx ctx_;
  std::vector<std::uint64_t> words_;
  std::uint64_t size_ = 0;
};

}  // namespace adlab
