#include "adlab/fpset.hpp"

#include <bit>

namespace adlab {

namespace {

// Copies len bits from src starting at bit s_off into dst at bit d_off.
// Ranges live in distinct buffers; dst bits are assumed cleared.
void copy_bits(const std::vector<std::uint64_t>& src, std::uint64_t s_off,
               std::vector<std::uint64_t>& dst, std::uint64_t d_off, std::uint64_t len) {
  while (len > 0) {
    const std::uint64_t chunk = std::min<std::uint64_t>(64, len);
    const std::uint64_t sw = s_off >> 6, sb = s_off & 63;
    std::uint64_t bits = src[sw] >> sb;
    if (sb != 0 && sw + 1 < src.size()) bits |= src[sw + 1] << (64 - sb);
    if (chunk < 64) bits &= (std::uint64_t{1} << chunk) - 1;
    const std::uint64_t dw = d_off >> 6, db = d_off & 63;
    dst[dw] |= bits << db;
    if (db != 0 && db + chunk > 64) dst[dw + 1] |= bits >> (64 - db);
    s_off += chunk;
    d_off += chunk;
    len -= chunk;
  }
}

// Rotates every aligned block of block_bits upward by shift_bits in place.
void rotate_blocks(std::vector<std::uint64_t>& w, std::uint64_t total_bits,
                   std::uint64_t block_bits, std::uint64_t shift_bits) {
  std::vector<std::uint64_t> scratch(w.size(), 0);
  for (std::uint64_t start = 0; start < total_bits; start += block_bits) {
    copy_bits(w, start, scratch, start + shift_bits, block_bits - shift_bits);
    copy_bits(w, start + block_bits - shift_bits, scratch, start, shift_bits);
  }
  w.swap(scratch);
}

}  // namespace

FpSet::FpSet(const GroupCtx& ctx) : ctx_(ctx), words_((ctx.order() + 63) / 64, 0) {}

FpSet::FpSet(const GroupCtx& ctx, std::initializer_list<std::uint64_t> indices) : FpSet(ctx) {
  for (auto i : indices) {
    if (i >= ctx_.order()) throw std::invalid_argument("FpSet: index out of range");
    insert(i);
  }
}

FpSet FpSet::full(const GroupCtx& ctx) {
  FpSet s(ctx);
  for (auto& w : s.words_) w = ~std::uint64_t{0};
  const std::uint64_t tail = ctx.order() & 63;
  if (tail != 0) s.words_.back() = (std::uint64_t{1} << tail) - 1;
  s.size_ = ctx.order();
  return s;
}

std::vector<std::uint64_t> FpSet::members() const {
  std::vector<std::uint64_t> out;
  out.reserve(size_);
  for_each([&](std::uint64_t i) { out.push_back(i); });
  return out;
}

std::uint64_t FpSet::min_element() const {
  if (size_ == 0) throw std::invalid_argument("FpSet: min_element of empty set");
  for (std::size_t wi = 0; wi < words_.size(); ++wi)
    if (words_[wi] != 0) return wi * 64 + std::countr_zero(words_[wi]);
  return 0;  // unreachable
}

FpSet& FpSet::operator|=(const FpSet& o) {
  detail::require_same_group(ctx_, o.ctx_);
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
  recount();
  return *this;
}

FpSet& FpSet::operator&=(const FpSet& o) {
  detail::require_same_group(ctx_, o.ctx_);
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
  recount();
  return *this;
}

FpSet& FpSet::operator^=(const FpSet& o) {
  detail::require_same_group(ctx_, o.ctx_);
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] ^= o.words_[i];
  recount();
  return *this;
}

FpSet FpSet::complement() const {
  FpSet out = full(ctx_);
  for (std::size_t i = 0; i < words_.size(); ++i) out.words_[i] &= ~words_[i];
  out.recount();
  return out;
}

bool FpSet::operator==(const FpSet& o) const {
  return ctx_ == o.ctx_ && words_ == o.words_;
}

bool FpSet::is_subset_of(const FpSet& o) const {
  detail::require_same_group(ctx_, o.ctx_);
  for (std::size_t i = 0; i < words_.size(); ++i)
    if (words_[i] & ~o.words_[i]) return false;
  return true;
}

FpSet FpSet::translated(std::uint64_t g) const {
  if (g >= ctx_.order()) throw std::invalid_argument("translated: index out of range");
  FpSet out = *this;
  for (std::uint32_t k = 0; k < ctx_.n(); ++k) {
    const std::uint32_t d = ctx_.digit(g, k);
    if (d == 0) continue;
    rotate_blocks(out.words_, ctx_.order(), ctx_.pow_p(k + 1), std::uint64_t{d} * ctx_.pow_p(k));
  }
  return out;
}

FpSet FpSet::negated() const {
  if (ctx_.p() == 2) return *this;
  FpSet out(ctx_);
  for_each([&](std::uint64_t i) { out.insert(ctx_.neg(i)); });
  return out;
}

void FpSet::recount() {
  std::uint64_t c = 0;
  for (auto w : words_) c += std::popcount(w);
  size_ = c;
}

}  // namespace adlab
