#include "adlab/subspace.hpp"

#include <algorithm>

namespace adlab {

Subspace::Subspace(const GroupCtx& ctx) : ctx_(ctx) {}

void Subspace::refresh_indices() {
  row_idx_.resize(rows_.size());
  for (std::size_t r = 0; r < rows_.size(); ++r) row_idx_[r] = ctx_.encode(rows_[r].data());
}

bool Subspace::extend(std::uint64_t v) {
  if (v >= ctx_.order()) throw std::invalid_argument("Subspace::extend: index out of range");
  const std::uint32_t p = ctx_.p(), n = ctx_.n();
  std::vector<std::uint32_t> vec(n);
  ctx_.decode(v, vec.data());
  // Reduce against existing pivots.
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    const std::uint32_t d = vec[pivots_[r]];
    if (d == 0) continue;
    for (std::uint32_t j = 0; j < n; ++j)
      vec[j] = static_cast<std::uint32_t>((vec[j] + std::uint64_t{p - d} * rows_[r][j]) % p);
  }
  std::uint32_t piv = n;
  for (std::uint32_t j = 0; j < n; ++j)
    if (vec[j] != 0) {
      piv = j;
      break;
    }
  if (piv == n) return false;
  // Normalize the new row and clear its pivot column from the others.
  const std::uint32_t inv = ctx_.inv_mod_p(vec[piv]);
  for (std::uint32_t j = 0; j < n; ++j)
    vec[j] = static_cast<std::uint32_t>(std::uint64_t{vec[j]} * inv % p);
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    const std::uint32_t d = rows_[r][piv];
    if (d == 0) continue;
    for (std::uint32_t j = 0; j < n; ++j)
      rows_[r][j] = static_cast<std::uint32_t>((rows_[r][j] + std::uint64_t{p - d} * vec[j]) % p);
  }
  const auto pos = std::lower_bound(pivots_.begin(), pivots_.end(), piv) - pivots_.begin();
  pivots_.insert(pivots_.begin() + pos, piv);
  rows_.insert(rows_.begin() + pos, std::move(vec));
  refresh_indices();
  return true;
}

Subspace Subspace::from_generators(const GroupCtx& ctx, const std::vector<std::uint64_t>& gens) {
  Subspace s(ctx);
  for (auto g : gens) {
    if (s.dim() == ctx.n()) break;
    s.extend(g);
  }
  return s;
}

Subspace Subspace::from_rref(const GroupCtx& ctx, std::vector<std::vector<std::uint32_t>> rows,
                             std::vector<std::uint32_t> pivots) {
  Subspace s(ctx);
  s.rows_ = std::move(rows);
  s.pivots_ = std::move(pivots);
  s.refresh_indices();
  return s;
}

std::uint64_t Subspace::coset_rep(std::uint64_t v) const {
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    const std::uint32_t d = ctx_.digit(v, pivots_[r]);
    if (d != 0) v = ctx_.sub(v, ctx_.scale(row_idx_[r], d));
  }
  return v;
}

std::vector<std::uint64_t> Subspace::enumerate() const {
  std::vector<std::uint64_t> out;
  out.reserve(size());
  out.push_back(0);
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    const std::size_t base = out.size();
    for (std::uint32_t c = 1; c < ctx_.p(); ++c) {
      const std::uint64_t mult = ctx_.scale(row_idx_[r], c);
      for (std::size_t i = 0; i < base; ++i) out.push_back(ctx_.add(out[i], mult));
    }
  }
  return out;
}

FpSet Subspace::to_set() const {
  FpSet s(ctx_);
  for (auto v : enumerate()) s.insert(v);
  return s;
}

Subspace span(const GroupCtx& ctx, const std::vector<std::uint64_t>& gens) {
  return Subspace::from_generators(ctx, gens);
}

Subspace span(const FpSet& Y) {
  Subspace s(Y.ctx());
  Y.for_each([&](std::uint64_t v) {
    if (s.dim() < Y.ctx().n()) s.extend(v);
  });
  return s;
}

Subspace orthogonal_complement(const Subspace& W) {
  const GroupCtx& ctx = W.ctx();
  const std::uint32_t p = ctx.p(), n = ctx.n();
  // Kernel of the basis matrix: one generator per non-pivot column.
  std::vector<bool> is_pivot(n, false);
  for (auto c : W.pivots()) is_pivot[c] = true;
  Subspace out(ctx);
  for (std::uint32_t j = 0; j < n; ++j) {
    if (is_pivot[j]) continue;
    std::vector<std::uint32_t> vec(n, 0);
    vec[j] = 1;
    for (std::size_t r = 0; r < W.basis().size(); ++r) {
      const std::uint32_t a = W.basis()[r][j];
      if (a != 0) vec[W.pivots()[r]] = p - a;
    }
    out.extend(ctx.encode(vec.data()));
  }
  return out;
}

Subspace orthogonal_complement(const FpSet& Y) { return orthogonal_complement(span(Y)); }

mpz_class subspace_count(const GroupCtx& ctx, std::uint32_t dim) {
  if (dim > ctx.n()) return 0;
  mpz_class num = 1, den = 1, pz = ctx.p();
  for (std::uint32_t i = 0; i < dim; ++i) {
    mpz_class pn, pd;
    mpz_pow_ui(pn.get_mpz_t(), pz.get_mpz_t(), ctx.n() - i);
    mpz_pow_ui(pd.get_mpz_t(), pz.get_mpz_t(), dim - i);
    num *= pn - 1;
    den *= pd - 1;
  }
  return num / den;
}

namespace {

bool next_combination(std::vector<std::uint32_t>& c, std::uint32_t n) {
  const std::uint32_t k = static_cast<std::uint32_t>(c.size());
  for (std::uint32_t i = k; i-- > 0;) {
    if (c[i] < n - k + i) {
      ++c[i];
      for (std::uint32_t j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
      return true;
    }
  }
  return false;
}

}  // namespace

void enumerate_subspaces(const GroupCtx& ctx, std::uint32_t dim,
                         const std::function<bool(const Subspace&)>& visit) {
  const std::uint32_t p = ctx.p(), n = ctx.n();
  if (dim > n) return;
  if (dim == 0) {
    visit(Subspace(ctx));
    return;
  }
  std::vector<std::uint32_t> piv(dim);
  for (std::uint32_t i = 0; i < dim; ++i) piv[i] = i;
  do {
    std::vector<bool> is_pivot(n, false);
    for (auto c : piv) is_pivot[c] = true;
    // Free positions (row, col) with col right of the row's pivot, non-pivot.
    std::vector<std::pair<std::uint32_t, std::uint32_t>> free_pos;
    for (std::uint32_t r = 0; r < dim; ++r)
      for (std::uint32_t j = piv[r] + 1; j < n; ++j)
        if (!is_pivot[j]) free_pos.emplace_back(r, j);
    std::vector<std::uint32_t> assign(free_pos.size(), 0);
    for (;;) {
      std::vector<std::vector<std::uint32_t>> rows(dim, std::vector<std::uint32_t>(n, 0));
      for (std::uint32_t r = 0; r < dim; ++r) rows[r][piv[r]] = 1;
      for (std::size_t i = 0; i < free_pos.size(); ++i)
        rows[free_pos[i].first][free_pos[i].second] = assign[i];
      if (!visit(Subspace::from_rref(ctx, std::move(rows), piv))) return;
      // Base-p odometer over the free entries, position 0 least significant.
      std::size_t i = 0;
      while (i < assign.size() && ++assign[i] == p) assign[i++] = 0;
      if (i == assign.size()) break;
    }
  } while (next_combination(piv, n));
}

}  // namespace adlab
