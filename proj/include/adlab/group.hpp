#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace adlab {

/** Thrown when an operation would exceed its enumeration or memory budget. */
class BudgetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Largest supported group order; constructions beyond this are rejected.
inline constexpr std::uint64_t kMaxGroupOrder = std::uint64_t{1} << 24;

bool is_prime(std::uint64_t v);

/**
 * The ambient group F_p^n with canonical element indexing.
 *
 * Elements are indexed in [0, p^n) by base-p positional encoding where
 * coordinate k is digit k and digit 0 is least significant.  All arithmetic
 * helpers operate on indices; FpVec is the explicit-coordinate view.
 */
class GroupCtx {
 public:
  GroupCtx(std::uint32_t p, std::uint32_t n);

  std::uint32_t p() const { return p_; }
  std::uint32_t n() const { return n_; }
  std::uint64_t order() const { return order_; }
  std::uint64_t pow_p(std::uint32_t k) const { return pow_[k]; }

  bool operator==(const GroupCtx& o) const { return p_ == o.p_ && n_ == o.n_; }
  bool operator!=(const GroupCtx& o) const { return !(*this == o); }

  std::uint64_t add(std::uint64_t a, std::uint64_t b) const {
    if (p_ == 2) return a ^ b;
    std::uint64_t out = 0;
    for (std::uint32_t k = 0; a != 0 || b != 0; ++k) {
      std::uint64_t d = a % p_ + b % p_;
      if (d >= p_) d -= p_;
      out += d * pow_[k];
      a /= p_;
      b /= p_;
    }
    return out;
  }

  std::uint64_t neg(std::uint64_t a) const {
    if (p_ == 2) return a;
    std::uint64_t out = 0;
    for (std::uint32_t k = 0; a != 0; ++k) {
      std::uint64_t d = a % p_;
      if (d != 0) out += (p_ - d) * pow_[k];
      a /= p_;
    }
    return out;
  }

  std::uint64_t sub(std::uint64_t a, std::uint64_t b) const {
    if (p_ == 2) return a ^ b;
    std::uint64_t out = 0;
    for (std::uint32_t k = 0; a != 0 || b != 0; ++k) {
      std::uint64_t d = a % p_ + p_ - b % p_;
      if (d >= p_) d -= p_;
      out += d * pow_[k];
      a /= p_;
      b /= p_;
    }
    return out;
  }

  /// Scalar multiple c*a with c in [0, p).
  std::uint64_t scale(std::uint64_t a, std::uint32_t c) const {
    if (c == 0) return 0;
    if (c == 1) return a;
    std::uint64_t out = 0;
    for (std::uint32_t k = 0; a != 0; ++k) {
      out += (a % p_ * c % p_) * pow_[k];
      a /= p_;
    }
    return out;
  }

  /// Standard bilinear form <a,b> = sum_k a_k b_k mod p.
  std::uint32_t dot(std::uint64_t a, std::uint64_t b) const {
    if (p_ == 2) return static_cast<std::uint32_t>(std::popcount(a & b) & 1u);
    std::uint64_t acc = 0;
    while (a != 0 && b != 0) {
      acc += a % p_ * (b % p_);
      a /= p_;
      b /= p_;
    }
    return static_cast<std::uint32_t>(acc % p_);
  }

  std::uint32_t digit(std::uint64_t a, std::uint32_t k) const {
    return static_cast<std::uint32_t>(a / pow_[k] % p_);
  }

  void decode(std::uint64_t index, std::uint32_t* digits) const {
    for (std::uint32_t k = 0; k < n_; ++k) {
      digits[k] = static_cast<std::uint32_t>(index % p_);
      index /= p_;
    }
  }

  std::uint64_t encode(const std::uint32_t* digits) const {
    std::uint64_t out = 0;
    for (std::uint32_t k = 0; k < n_; ++k) out += std::uint64_t{digits[k]} * pow_[k];
    return out;
  }

  /// Multiplicative inverse in F_p for c != 0.
  std::uint32_t inv_mod_p(std::uint32_t c) const;

 private:
  std::uint32_t p_ = 0;
  std::uint32_t n_ = 0;
  std::uint64_t order_ = 0;
  std::array<std::uint64_t, 26> pow_{};
};

/** Explicit coordinate view of a group element; p travels with the value. */
struct FpVec {
  std::uint32_t p = 0;
  std::vector<std::uint32_t> coords;

  bool operator==(const FpVec& o) const = default;
};

FpVec make_vec(const GroupCtx& ctx, std::uint64_t index);
std::uint64_t index_of(const GroupCtx& ctx, const FpVec& v);

FpVec vec_add(const FpVec& a, const FpVec& b);
FpVec vec_sub(const FpVec& a, const FpVec& b);
FpVec vec_neg(const FpVec& a);
FpVec vec_scale(const FpVec& a, std::uint32_t c);
std::uint32_t inner_product(const FpVec& a, const FpVec& b);

namespace detail {
void require_same_shape(const FpVec& a, const FpVec& b);
void require_same_group(const GroupCtx& a, const GroupCtx& b);
}  // namespace detail

}  // namespace adlab
