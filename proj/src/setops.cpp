#include "adlab/setops.hpp"

#include <algorithm>

namespace adlab {

FpSet sumset(const FpSet& A, const FpSet& B) {
  detail::require_same_group(A.ctx(), B.ctx());
  const GroupCtx& ctx = A.ctx();
  FpSet out(ctx);
  if (A.empty() || B.empty()) return out;
  const FpSet& small = A.size() <= B.size() ? A : B;
  const FpSet& big = A.size() <= B.size() ? B : A;
  if (A.size() * B.size() <= ctx.order() * ctx.n()) {
    const auto bm = big.members();
    small.for_each([&](std::uint64_t s) {
      for (auto b : bm) out.insert(ctx.add(s, b));
    });
  } else {
    small.for_each([&](std::uint64_t s) {
      FpSet t = big.translated(s);
      auto& w = out.mutable_words();
      const auto& tw = t.words();
      for (std::size_t i = 0; i < w.size(); ++i) w[i] |= tw[i];
    });
    out.recount();
  }
  return out;
}

FpSet difference_set(const FpSet& A, const FpSet& B) { return sumset(A, B.negated()); }

FpSet iterated(const FpSet& A, std::uint32_t k, std::uint32_t l) {
  if (k == 0 && l == 0) throw std::invalid_argument("iterated: k and l cannot both be zero");
  if (A.empty()) throw std::invalid_argument("iterated: empty set");
  const GroupCtx& ctx = A.ctx();
  auto fold = [&](std::uint32_t m) {
    FpSet acc(ctx);
    acc.insert(0);
    for (std::uint32_t i = 0; i < m; ++i) acc = sumset(acc, A);
    return acc;
  };
  return difference_set(fold(k), fold(l));
}

bool is_subgroup_coset(const FpSet& A) {
  if (A.empty()) return false;
  const GroupCtx& ctx = A.ctx();
  const FpSet H = A.translated(ctx.neg(A.min_element()));
  const auto mem = H.members();
  for (auto a : mem)
    for (auto b : mem)
      if (!H.contains(ctx.add(a, b))) return false;
  return true;
}

DoublingReport doubling(const FpSet& A) {
  if (A.empty()) throw std::invalid_argument("doubling: empty set");
  DoublingReport r;
  r.size_a = A.size();
  const FpSet D = difference_set(A, A);
  r.size_diff = D.size();
  r.K = mpq_class(static_cast<unsigned long>(r.size_diff), static_cast<unsigned long>(r.size_a));
  r.K.canonicalize();
  r.is_coset = is_subgroup_coset(A);
  return r;
}

PlunneckeReport plunnecke_check(const FpSet& A, std::uint32_t kmax) {
  if (kmax == 0) throw std::invalid_argument("plunnecke_check: kmax must be positive");
  PlunneckeReport rep;
  rep.K = doubling(A).K;
  const GroupCtx& ctx = A.ctx();
  // folds[m] = mA with 0A = {0}.
  std::vector<FpSet> folds;
  folds.reserve(kmax + 1);
  FpSet zero(ctx);
  zero.insert(0);
  folds.push_back(zero);
  for (std::uint32_t m = 1; m <= kmax; ++m) folds.push_back(sumset(folds.back(), A));
  std::vector<FpSet> negs;
  negs.reserve(kmax + 1);
  for (std::uint32_t m = 0; m <= kmax; ++m) negs.push_back(folds[m].negated());

  mpq_class pw = 1;
  for (std::uint32_t t = 1; t <= kmax; ++t) {
    pw *= rep.K;
    for (std::uint32_t k = 0; k <= t; ++k) {
      const std::uint32_t l = t - k;
      PlunneckeEntry e;
      e.k = k;
      e.l = l;
      e.size = sumset(folds[k], negs[l]).size();
      e.bound = pw * static_cast<unsigned long>(A.size());
      e.margin = e.bound - static_cast<unsigned long>(e.size);
      e.ok = e.margin >= 0;
      rep.all_ok = rep.all_ok && e.ok;
      rep.entries.push_back(std::move(e));
    }
  }
  return rep;
}

std::uint64_t LinearMap::apply(std::uint64_t x) const {
  std::uint64_t out = 0, pw = 1;
  for (std::uint32_t i = 0; i < rows; ++i) {
    std::uint64_t acc = 0, xx = x;
    for (std::uint32_t j = 0; j < cols && xx != 0; ++j) {
      acc += std::uint64_t{a[i * cols + j]} * (xx % p);
      xx /= p;
    }
    out += acc % p * pw;
    pw *= p;
  }
  return out;
}

LinearMap LinearMap::identity(std::uint32_t p, std::uint32_t n) {
  LinearMap m{p, n, n, std::vector<std::uint32_t>(std::size_t{n} * n, 0)};
  for (std::uint32_t i = 0; i < n; ++i) m.a[i * n + i] = 1;
  return m;
}

LinearMap LinearMap::zero(std::uint32_t p, std::uint32_t rows, std::uint32_t cols) {
  return LinearMap{p, rows, cols, std::vector<std::uint32_t>(std::size_t{rows} * cols, 0)};
}

LinearMap LinearMap::random(std::uint32_t p, std::uint32_t rows, std::uint32_t cols,
                            SplitMix64& rng) {
  LinearMap m = zero(p, rows, cols);
  for (auto& e : m.a) e = static_cast<std::uint32_t>(rng.below(p));
  return m;
}

LinearMap LinearMap::from_index(std::uint32_t p, std::uint32_t rows, std::uint32_t cols,
                                std::uint64_t id) {
  LinearMap m = zero(p, rows, cols);
  for (auto& e : m.a) {
    e = static_cast<std::uint32_t>(id % p);
    id /= p;
  }
  return m;
}

bool LinearMap::is_invertible() const {
  if (rows != cols) return false;
  std::vector<std::vector<std::uint64_t>> m(rows, std::vector<std::uint64_t>(cols));
  for (std::uint32_t i = 0; i < rows; ++i)
    for (std::uint32_t j = 0; j < cols; ++j) m[i][j] = at(i, j);
  std::uint32_t rank = 0;
  for (std::uint32_t col = 0; col < cols && rank < rows; ++col) {
    std::uint32_t sel = rows;
    for (std::uint32_t r = rank; r < rows; ++r)
      if (m[r][col] != 0) {
        sel = r;
        break;
      }
    if (sel == rows) continue;
    std::swap(m[sel], m[rank]);
    // Eliminate below.
    for (std::uint32_t r = rank + 1; r < rows; ++r) {
      if (m[r][col] == 0) continue;
      // r <- r * m[rank][col] - rank * m[r][col] (mod p)
      const std::uint64_t c1 = m[rank][col], c2 = m[r][col];
      for (std::uint32_t j = 0; j < cols; ++j)
        m[r][j] = (m[r][j] * c1 % p + (p - 1) * c2 % p * m[rank][j]) % p;
    }
    ++rank;
  }
  return rank == rows;
}

FreimanVerdict freiman_check(const LinearMap& phi, const FpSet& A, std::uint32_t t) {
  const GroupCtx& ctx = A.ctx();
  if (phi.p != ctx.p() || phi.cols != ctx.n())
    throw std::invalid_argument("freiman_check: map does not match group");
  if (phi.rows > phi.cols) throw std::invalid_argument("freiman_check: codomain larger than domain");
  if (t == 0) throw std::invalid_argument("freiman_check: order must be positive");
  const GroupCtx cod(ctx.p(), phi.rows);

  FreimanVerdict v;
  v.order = t;
  v.is_hom = true;

  // Strata (k, l), k + l = t, smallest spread first: by max(k, l), then k.
  std::vector<std::pair<std::uint32_t, std::uint32_t>> strata;
  for (std::uint32_t k = 0; k <= t; ++k) strata.emplace_back(k, t - k);
  std::stable_sort(strata.begin(), strata.end(), [](auto x, auto y) {
    return std::max(x.first, x.second) < std::max(y.first, y.second);
  });

  constexpr std::uint64_t kNoPreimage = ~std::uint64_t{0};
  std::vector<std::uint64_t> first(cod.order(), kNoPreimage);
  for (auto [k, l] : strata) {
    const FpSet S = iterated(A, k, l);
    std::fill(first.begin(), first.end(), kNoPreimage);
    FreimanWitness w;
    bool collided = false;
    S.for_each([&](std::uint64_t x) {
      if (collided) return;
      const std::uint64_t y = phi.apply(x);
      if (first[y] == kNoPreimage) {
        first[y] = x;
      } else {
        collided = true;
        w = FreimanWitness{first[y], x, k, l};
      }
    });
    if (collided) {
      v.is_hom = false;
      v.witness = w;
      return v;
    }
  }
  return v;
}

}  // namespace adlab
