#include "adlab/group.hpp"

namespace adlab {

bool is_prime(std::uint64_t v) {
  if (v < 2) return false;
  if (v % 2 == 0) return v == 2;
  for (std::uint64_t d = 3; d * d <= v; d += 2) {
    if (v % d == 0) return false;
  }
  return true;
}

GroupCtx::GroupCtx(std::uint32_t p, std::uint32_t n) : p_(p), n_(n) {
  if (!is_prime(p)) throw std::invalid_argument("GroupCtx: p must be prime, got " + std::to_string(p));
  if (n == 0) throw std::invalid_argument("GroupCtx: n must be positive");
  pow_[0] = 1;
  for (std::uint32_t k = 1; k <= n; ++k) {
    if (pow_[k - 1] > kMaxGroupOrder / p || k >= pow_.size())
      throw std::invalid_argument("GroupCtx: p^n exceeds 2^24");
    pow_[k] = pow_[k - 1] * p;
  }
  order_ = pow_[n];
  if (order_ > kMaxGroupOrder) throw std::invalid_argument("GroupCtx: p^n exceeds 2^24");
}

std::uint32_t GroupCtx::inv_mod_p(std::uint32_t c) const {
  if (c == 0) throw std::invalid_argument("inv_mod_p: zero has no inverse");
  // Fermat: c^(p-2) mod p.
  std::uint64_t base = c % p_, acc = 1, e = p_ - 2;
  while (e != 0) {
    if (e & 1) acc = acc * base % p_;
    base = base * base % p_;
    e >>= 1;
  }
  return static_cast<std::uint32_t>(acc);
}

namespace detail {

void require_same_shape(const FpVec& a, const FpVec& b) {
  if (a.p != b.p || a.coords.size() != b.coords.size())
    throw std::invalid_argument("FpVec: operands from different groups");
}

void require_same_group(const GroupCtx& a, const GroupCtx& b) {
  if (a != b) throw std::invalid_argument("operands from different groups");
}

}  // namespace detail

FpVec make_vec(const GroupCtx& ctx, std::uint64_t index) {
  if (index >= ctx.order()) throw std::invalid_argument("make_vec: index out of range");
  FpVec v{ctx.p(), std::vector<std::uint32_t>(ctx.n())};
  ctx.decode(index, v.coords.data());
  return v;
}

std::uint64_t index_of(const GroupCtx& ctx, const FpVec& v) {
  if (v.p != ctx.p() || v.coords.size() != ctx.n())
    throw std::invalid_argument("index_of: vector does not match group");
  for (auto c : v.coords)
    if (c >= ctx.p()) throw std::invalid_argument("index_of: coordinate out of range");
  return ctx.encode(v.coords.data());
}

FpVec vec_add(const FpVec& a, const FpVec& b) {
  detail::require_same_shape(a, b);
  FpVec out{a.p, std::vector<std::uint32_t>(a.coords.size())};
  for (std::size_t i = 0; i < a.coords.size(); ++i) out.coords[i] = (a.coords[i] + b.coords[i]) % a.p;
  return out;
}

FpVec vec_sub(const FpVec& a, const FpVec& b) {
  detail::require_same_shape(a, b);
  FpVec out{a.p, std::vector<std::uint32_t>(a.coords.size())};
  for (std::size_t i = 0; i < a.coords.size(); ++i)
    out.coords[i] = (a.coords[i] + a.p - b.coords[i]) % a.p;
  return out;
}

FpVec vec_neg(const FpVec& a) {
  FpVec out{a.p, std::vector<std::uint32_t>(a.coords.size())};
  for (std::size_t i = 0; i < a.coords.size(); ++i)
    out.coords[i] = a.coords[i] == 0 ? 0 : a.p - a.coords[i];
  return out;
}

FpVec vec_scale(const FpVec& a, std::uint32_t c) {
  FpVec out{a.p, std::vector<std::uint32_t>(a.coords.size())};
  for (std::size_t i = 0; i < a.coords.size(); ++i)
    out.coords[i] = static_cast<std::uint32_t>(std::uint64_t{a.coords[i]} * c % a.p);
  return out;
}

std::uint32_t inner_product(const FpVec& a, const FpVec& b) {
  detail::require_same_shape(a, b);
  std::uint64_t acc = 0;
  for (std::size_t i = 0; i < a.coords.size(); ++i) acc += std::uint64_t{a.coords[i]} * b.coords[i];
  return static_cast<std::uint32_t>(acc % a.p);
}

}  // namespace adlab
