#include "adlab/bogolyubov.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace adlab {

namespace {

using u128 = unsigned __int128;

mpz_class mpz_from_u128(u128 v) {
  mpz_class out(static_cast<unsigned long>(v >> 64));
  out <<= 64;
  out += mpz_class(static_cast<unsigned long>(v));
  return out;
}

// Difference multiplicities m(d) = #{(a,b) in A^2 : a - b = d}.
std::vector<std::uint64_t> difference_multiplicities(const FpSet& A) {
  const GroupCtx& ctx = A.ctx();
  std::vector<std::uint64_t> m(ctx.order(), 0);
  const auto mem = A.members();
  for (auto a : mem)
    for (auto b : mem) ++m[ctx.sub(a, b)];
  return m;
}

}  // namespace

std::vector<std::uint64_t> shift_pair_counts(const FpSet& A) {
  return kernels::shift_pair_counts_parallel(A);
}

namespace kernels {

std::vector<std::uint64_t> shift_pair_counts_parallel(const FpSet& A) {
  if (A.empty()) throw std::invalid_argument("shift_pair_counts: empty set");
  const GroupCtx& ctx = A.ctx();
  const FpSet D = difference_set(A, A);
  const auto m = difference_multiplicities(A);
  const auto dm = D.members();
  std::vector<std::uint64_t> c(ctx.order(), 0);
  const std::int64_t order = static_cast<std::int64_t>(ctx.order());
#pragma omp parallel for schedule(static)
  for (std::int64_t x = 0; x < order; ++x) {
    std::uint64_t acc = 0;
    for (auto d : dm)
      if (D.contains(ctx.sub(d, static_cast<std::uint64_t>(x)))) acc += m[d];
    c[x] = acc;
  }
  return c;
}

}  // namespace kernels

namespace ref {

std::vector<std::uint64_t> shift_pair_counts(const FpSet& A) {
  const GroupCtx& ctx = A.ctx();
  const auto mem = A.members();
  // Independent membership table for A - A.
  std::vector<char> diff(ctx.order(), 0);
  for (auto a : mem)
    for (auto b : mem) diff[ctx.sub(a, b)] = 1;
  std::vector<std::uint64_t> c(ctx.order(), 0);
  for (std::uint64_t x = 0; x < ctx.order(); ++x) {
    std::uint64_t acc = 0;
    for (auto a : mem)
      for (auto b : mem) acc += diff[ctx.sub(ctx.sub(a, b), x)];
    c[x] = acc;
  }
  return c;
}

}  // namespace ref

FpSet gentle_shift_set(const FpSet& A, double threshold) {
  if (threshold < 0.0 || threshold > 1.0)
    throw std::invalid_argument("gentle_shift_set: threshold must be in [0,1]");
  const auto c = shift_pair_counts(A);
  const mpq_class thr(threshold);  // exact binary value of the double
  const mpz_class sq = mpz_class(static_cast<unsigned long>(A.size())) *
                       mpz_class(static_cast<unsigned long>(A.size()));
  const mpz_class rhs = thr.get_num() * sq;
  FpSet out(A.ctx());
  for (std::uint64_t x = 0; x < A.order(); ++x) {
    const mpz_class lhs = mpz_class(static_cast<unsigned long>(c[x])) * thr.get_den();
    if (lhs >= rhs) out.insert(x);
  }
  return out;
}

ShiftSetReport shift_closure_check(const FpSet& A, const FpSet& X, std::uint32_t t_max,
                                   double threshold) {
  if (X.empty()) throw std::invalid_argument("shift_closure_check: empty shift set");
  if (t_max == 0) throw std::invalid_argument("shift_closure_check: t_max must be positive");
  detail::require_same_group(A.ctx(), X.ctx());
  const auto c = shift_pair_counts(A);
  const mpz_class sq = mpz_class(static_cast<unsigned long>(A.size())) *
                       mpz_class(static_cast<unsigned long>(A.size()));
  const mpq_class thr(threshold);

  ShiftSetReport rep;
  rep.threshold = threshold;
  rep.t_max = t_max;
  FpSet cur = X;
  for (std::uint32_t t = 1; t <= t_max; ++t) {
    if (t > 1) cur = sumset(cur, X);
    std::uint64_t best_x = 0, best_c = ~std::uint64_t{0};
    cur.for_each([&](std::uint64_t x) {
      if (c[x] < best_c) {
        best_c = c[x];
        best_x = x;
      }
    });
    ShiftSetReport::PerT pt;
    pt.t = t;
    pt.min_expectation = mpq_class(mpz_class(static_cast<unsigned long>(best_c)), sq);
    pt.min_expectation.canonicalize();
    pt.argmin_x = best_x;
    pt.ok = pt.min_expectation >= thr;
    rep.all_ok = rep.all_ok && pt.ok;
    rep.per_t.push_back(std::move(pt));
  }
  return rep;
}

CrootReport croot_sisask_trial(const FpSet& A, const DensityFn& f, double q, double eps, double c,
                               std::uint64_t trials, SplitMix64& rng, std::uint64_t budget) {
  detail::require_same_group(A.ctx(), f.ctx());
  if (A.empty()) throw std::invalid_argument("croot_sisask_trial: empty set");
  if (q < 1.0) throw std::invalid_argument("croot_sisask_trial: q must be >= 1");
  if (eps <= 0.0 || c <= 0.0 || trials == 0)
    throw std::invalid_argument("croot_sisask_trial: bad parameters");
  for (double v : f.values())
    if (v < 0.0 || v > 1.0)
      throw std::invalid_argument("croot_sisask_trial: f must take values in [0,1]");

  const GroupCtx& ctx = A.ctx();
  const std::uint64_t N = ctx.order();
  const std::uint32_t ell = static_cast<std::uint32_t>(std::ceil(q / (eps * eps)));
  if (std::uint64_t{ell} * trials > budget)
    throw BudgetError("croot_sisask_trial: ell * trials = " +
                      std::to_string(std::uint64_t{ell} * trials) + " exceeds budget " +
                      std::to_string(budget));

  // h = rho_A * f, so rho_{A+x} * f(y) = h(y - x).
  const auto mem = A.members();
  std::vector<double> h(N, 0.0);
  for (std::uint64_t y = 0; y < N; ++y) {
    double s = 0;
    for (auto a : mem) s += f[ctx.sub(y, a)];
    h[y] = s / static_cast<double>(mem.size());
  }

  auto norm_against = [&](const std::vector<double>& g, std::uint64_t x) {
    double s = 0;
    for (std::uint64_t y = 0; y < N; ++y) {
      const double d = h[ctx.sub(y, x)] - g[y];
      s += std::pow(std::abs(d), q);
    }
    return std::pow(s / static_cast<double>(N), 1.0 / q);
  };

  CrootReport rep;
  rep.ell = ell;
  rep.trials = trials;
  rep.q = q;
  rep.eps = eps;
  rep.c = c;
  const double half_bound = c * eps / 2.0;

  std::vector<double> g(N);
  FpSet best_good(ctx);
  for (std::uint64_t trial = 0; trial < trials; ++trial) {
    std::fill(g.begin(), g.end(), 0.0);
    for (std::uint32_t i = 0; i < ell; ++i) {
      const std::uint64_t a = mem[rng.below(mem.size())];
      for (std::uint64_t y = 0; y < N; ++y) g[y] += f[ctx.sub(y, a)];
    }
    for (std::uint64_t y = 0; y < N; ++y) g[y] /= ell;
    const std::uint64_t x = rng.below(N);
    if (norm_against(g, x) <= half_bound) ++rep.successes;
    // Pigeonhole grouping: all shifts this tuple approximates.
    FpSet good(ctx);
    for (std::uint64_t xx = 0; xx < N; ++xx)
      if (norm_against(g, xx) <= half_bound) good.insert(xx);
    if (good.size() > rep.best_tuple_good_x) {
      rep.best_tuple_good_x = good.size();
      best_good = good;
    }
  }
  rep.success_fraction = static_cast<double>(rep.successes) / static_cast<double>(trials);

  if (!best_good.empty()) {
    const std::uint64_t x0 = best_good.min_element();
    FpSet shifts(ctx);
    best_good.for_each([&](std::uint64_t x) { shifts.insert(ctx.sub(x, x0)); });
    rep.shift_set_size = shifts.size();
    std::uint64_t verified = 0;
    shifts.for_each([&](std::uint64_t d) {
      if (norm_against(h, d) <= c * eps) ++verified;
    });
    rep.shift_set_verified = verified;
  }
  return rep;
}

Subspace spec_perp_subspace(const FpSet& X) {
  return orthogonal_complement(spectrum(X, 0.5));
}

TheSpaceReport lemma_thespace_check(const FpSet& A, const FpSet& X, std::uint32_t t) {
  detail::require_same_group(A.ctx(), X.ctx());
  if (A.empty() || X.empty()) throw std::invalid_argument("lemma_thespace_check: empty set");
  if (t == 0) throw std::invalid_argument("lemma_thespace_check: t must be positive");
  const GroupCtx& ctx = A.ctx();
  const std::uint64_t N = ctx.order();

  const Subspace V = spec_perp_subspace(X);
  const auto velems = V.enumerate();

  // Overflow guard for exact 128-bit accumulation.
  const double bits = 2.0 * std::log2(static_cast<double>(A.size())) +
                      static_cast<double>(t) * std::log2(static_cast<double>(X.size())) +
                      std::log2(static_cast<double>(velems.size()));
  if (bits > 120.0 || static_cast<double>(t) * std::log2(static_cast<double>(X.size())) > 62.0)
    throw BudgetError("lemma_thespace_check: exact accumulation would overflow the budget");

  // N_t = t-fold additive convolution counts of X.
  const auto xm = X.members();
  std::vector<std::uint64_t> nt(N, 0);
  for (auto x : xm) nt[x] = 1;
  for (std::uint32_t step = 1; step < t; ++step) {
    std::vector<std::uint64_t> nxt(N, 0);
    for (std::uint64_t z = 0; z < N; ++z) {
      if (nt[z] == 0) continue;
      for (auto x : xm) nxt[ctx.add(z, x)] += nt[z];
    }
    nt.swap(nxt);
  }

  const auto c = shift_pair_counts(A);

  u128 s1 = 0;
  for (std::uint64_t x = 0; x < N; ++x)
    if (nt[x] != 0) s1 += static_cast<u128>(nt[x]) * c[x];

  // Blurred counts M(y) = sum_{v in V} N_t(y + v).
  std::vector<std::uint64_t> mt(N, 0);
  for (std::uint64_t y = 0; y < N; ++y) {
    std::uint64_t acc = 0;
    for (auto v : velems) acc += nt[ctx.add(y, v)];
    mt[y] = acc;
  }
  u128 s2 = 0;
  for (std::uint64_t y = 0; y < N; ++y)
    if (mt[y] != 0) s2 += static_cast<u128>(mt[y]) * c[y];

  mpz_class xs_t = 1;
  for (std::uint32_t i = 0; i < t; ++i) xs_t *= static_cast<unsigned long>(X.size());
  const mpz_class sq = mpz_class(static_cast<unsigned long>(A.size())) *
                       mpz_class(static_cast<unsigned long>(A.size()));

  TheSpaceReport rep;
  rep.t = t;
  rep.v_dim = V.dim();
  rep.e_plain = mpq_class(mpz_from_u128(s1), sq * xs_t);
  rep.e_plain.canonicalize();
  rep.e_blurred =
      mpq_class(mpz_from_u128(s2), sq * xs_t * static_cast<unsigned long>(velems.size()));
  rep.e_blurred.canonicalize();
  rep.diff = abs(rep.e_plain - rep.e_blurred);
  mpz_class denom = mpz_class(static_cast<unsigned long>(A.size())) << t;
  rep.bound = mpq_class(mpz_class(static_cast<unsigned long>(N)), denom);
  rep.bound.canonicalize();
  rep.bound_ok = rep.diff <= rep.bound;

  // Spectral recomputation of the plain expectation.
  const SpectrumTable ta = transform(A);
  const SpectrumTable tx = transform(X);
  const SpectrumTable td = transform(indicator(difference_set(A, A)));
  std::complex<double> acc = 0;
  for (std::uint64_t u = 0; u < N; ++u) {
    const std::uint64_t nu = ctx.neg(u);
    std::complex<double> xpow = 1;
    for (std::uint32_t i = 0; i < t; ++i) xpow *= tx[nu];
    acc += ta[u] * ta[nu] * xpow * td[u];
  }
  rep.e_plain_fourier = acc.real();
  rep.fourier_abs_err = std::abs(rep.e_plain_fourier - rep.e_plain.get_d());
  rep.fourier_ok = rep.fourier_abs_err <= 1e-9;
  return rep;
}

Subspace max_subspace_in(const FpSet& S, std::uint64_t budget) {
  const GroupCtx& ctx = S.ctx();
  if (!S.contains(0)) throw std::invalid_argument("max_subspace_in: 0 must be in S");
  std::uint32_t dmax = 0;
  while (dmax < ctx.n() && ctx.pow_p(dmax + 1) <= S.size()) ++dmax;
  std::uint64_t probes = 0;
  for (std::uint32_t d = dmax; d >= 1; --d) {
    Subspace found(ctx);
    bool have = false;
    enumerate_subspaces(ctx, d, [&](const Subspace& W) {
      probes += d;
      if (probes > budget)
        throw BudgetError("max_subspace_in: probe budget exceeded at dimension " +
                          std::to_string(d) + " (" + subspace_count(ctx, d).get_str() +
                          " candidate subspaces)");
      for (auto b : W.basis_indices())
        if (!S.contains(b)) return true;
      // Basis inside S; check the rest of the subspace.
      bool all = true;
      for (auto v : W.enumerate()) {
        ++probes;
        if (!S.contains(v)) {
          all = false;
          break;
        }
      }
      if (all) {
        found = W;
        have = true;
        return false;
      }
      return true;
    });
    if (have) return found;
  }
  return Subspace(ctx);
}

BrzResult brz_pipeline(const FpSet& A, const BrzConfig& cfg) {
  if (A.empty()) throw std::invalid_argument("brz_pipeline: empty set");
  const FpSet d4 = iterated(A, 2, 2);
  auto contained_in_d4 = [&](const Subspace& V) {
    for (auto v : V.enumerate())
      if (!d4.contains(v)) return false;
    return true;
  };

  for (double thr : cfg.thresholds) {
    const FpSet X = gentle_shift_set(A, thr);
    Subspace V = spec_perp_subspace(X);
    if (contained_in_d4(V)) {
      BrzResult r{std::move(V), true, BrzMethod::pipeline, thr, mpq_class()};
      r.size_ratio = mpq_class(static_cast<unsigned long>(r.V.size()),
                               static_cast<unsigned long>(A.size()));
      r.size_ratio.canonicalize();
      return r;
    }
  }
  Subspace V = max_subspace_in(d4, cfg.budget);
  BrzResult r{std::move(V), false, BrzMethod::brute_force, 0.0, mpq_class()};
  r.contained = contained_in_d4(r.V);
  r.size_ratio =
      mpq_class(static_cast<unsigned long>(r.V.size()), static_cast<unsigned long>(A.size()));
  r.size_ratio.canonicalize();
  return r;
}

QuasiPfrReport quasi_pfr(const FpSet& A, const BrzConfig& cfg) {
  QuasiPfrReport rep{brz_pipeline(A, cfg), 0, FpSet(A.ctx()), Subspace(A.ctx()), 0,
                     mpq_class(), mpq_class()};
  const Subspace& V = rep.brz.V;
  std::map<std::uint64_t, std::uint64_t> coset_counts;
  A.for_each([&](std::uint64_t a) { ++coset_counts[V.coset_rep(a)]; });
  rep.nonempty_cosets = coset_counts.size();
  std::uint64_t best_rep = 0, best = 0;
  for (const auto& [g, cnt] : coset_counts) {
    if (cnt > best) {
      best = cnt;
      best_rep = g;
    }
  }
  rep.rep = best_rep;
  A.for_each([&](std::uint64_t a) {
    if (V.coset_rep(a) == best_rep) rep.B.insert(a);
  });
  rep.span_b = span(rep.B);
  rep.b_ratio =
      mpq_class(static_cast<unsigned long>(rep.B.size()), static_cast<unsigned long>(A.size()));
  rep.b_ratio.canonicalize();
  rep.span_ratio = mpq_class(static_cast<unsigned long>(rep.span_b.size()),
                             static_cast<unsigned long>(A.size()));
  rep.span_ratio.canonicalize();
  return rep;
}

namespace {

// Column span of phi fills F_p^m, i.e. the map is onto.
bool is_surjective(const LinearMap& phi) {
  GroupCtx cod(phi.p, phi.rows);
  Subspace sp(cod);
  for (std::uint32_t j = 0; j < phi.cols; ++j) {
    std::vector<std::uint32_t> col(phi.rows);
    for (std::uint32_t i = 0; i < phi.rows; ++i) col[i] = phi.at(i, j);
    sp.extend(cod.encode(col.data()));
    if (sp.dim() == phi.rows) return true;
  }
  return sp.dim() == phi.rows;
}

}  // namespace

MinimalEmbedding minimal_embedding_search(const FpSet& A, std::uint32_t t, std::uint64_t budget) {
  const GroupCtx& ctx = A.ctx();
  if (A.empty()) throw std::invalid_argument("minimal_embedding_search: empty set");
  if (t == 0) throw std::invalid_argument("minimal_embedding_search: order must be positive");
  if (ctx.order() > 64)
    throw std::invalid_argument("minimal_embedding_search: group order above 64");
  const std::uint32_t p = ctx.p();
  const std::uint32_t n = ctx.n();
  std::uint64_t scanned = 0;
  for (std::uint32_t m = 1; m <= n; ++m) {
    std::uint64_t total = 1;
    for (std::uint32_t e = 0; e < m * n; ++e) total *= p;  // p^(m*n) <= 64^6 < 2^63
    for (std::uint64_t id = 0; id < total; ++id) {
      if (++scanned > budget) throw BudgetError("minimal_embedding_search: budget exhausted");
      LinearMap phi = LinearMap::from_index(p, m, n, id);
      if (!is_surjective(phi)) continue;
      if (freiman_check(phi, A, t).is_hom) return MinimalEmbedding{phi, m, scanned};
    }
  }
  // m = n always admits the identity, so control cannot reach this point.
  throw std::logic_error("minimal_embedding_search: no embedding found");
}

}  // namespace adlab
