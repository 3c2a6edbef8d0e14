#include "adlab/nmc.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <string>

namespace adlab {
namespace {

std::uint64_t set_mask(const std::vector<std::uint32_t>& S) {
  std::uint64_t m = 0;
  for (std::uint32_t s : S) m |= std::uint64_t{1} << s;
  return m;
}

// Profile of a mask-encoded candidate; a scan over all p^2 affine maps.
std::uint64_t profile_of_mask(std::uint32_t p, std::uint64_t mask, std::uint32_t* wa,
                              std::uint32_t* wb) {
  std::uint64_t best = 0;
  std::uint32_t ba = 1, bb = 0;
  bool seen = false;
  for (std::uint32_t a = 0; a < p; ++a) {
    for (std::uint32_t b = 0; b < p; ++b) {
      if (a == 1 && b == 0) continue;
      std::uint64_t image = 0;
      for (std::uint32_t s = 0; s < p; ++s) {
        if (mask >> s & 1) image |= std::uint64_t{1} << ((a * s + b) % p);
      }
      std::uint64_t hits = static_cast<std::uint64_t>(std::popcount(mask & image));
      if (!seen || hits > best) {
        seen = true;
        best = hits;
        ba = a;
        bb = b;
      }
    }
  }
  if (wa) *wa = ba;
  if (wb) *wb = bb;
  return best;
}

bool next_combination(std::vector<std::uint32_t>& c, std::uint32_t n) {
  const std::uint32_t k = static_cast<std::uint32_t>(c.size());
  for (std::uint32_t ii = k; ii-- > 0;) {
    if (c[ii] < n - k + ii) {
      ++c[ii];
      for (std::uint32_t j = ii + 1; j < k; ++j) c[j] = c[j - 1] + 1;
      return true;
    }
  }
  return false;
}

mpz_class binom(std::uint32_t n, std::uint32_t k) {
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

std::vector<std::uint32_t> mask_to_sorted(std::uint32_t p, std::uint64_t mask) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t s = 0; s < p; ++s) {
    if (mask >> s & 1) out.push_back(s);
  }
  return out;
}

}  // namespace

std::uint64_t affine_profile(std::uint32_t p, const std::vector<std::uint32_t>& S,
                             std::uint32_t* worst_a, std::uint32_t* worst_b) {
  if (p < 2 || p > 64 || !is_prime(p))
    throw std::invalid_argument("affine_profile: p must be a prime in [2, 64]");
  for (std::uint32_t s : S) {
    if (s >= p) throw std::invalid_argument("affine_profile: element out of range");
  }
  return profile_of_mask(p, set_mask(S), worst_a, worst_b);
}

AffineEvasiveSet search_affine_evasive(std::uint32_t p, std::uint32_t size, EvasiveMode mode,
                                       SplitMix64& rng, std::uint64_t budget) {
  if (p < 2 || p > 64 || !is_prime(p))
    throw std::invalid_argument("search_affine_evasive: p must be a prime in [2, 64]");
  if (size == 0 || size > p) throw std::invalid_argument("search_affine_evasive: bad size");

  AffineEvasiveSet out;
  out.p = p;

  if (mode == EvasiveMode::exhaustive) {
    const mpz_class combos = binom(p, size);
    const mpz_class est = combos * p * p;
    if (est > budget) {
      throw BudgetError("search_affine_evasive: exhaustive scan needs about " + est.get_str() +
                        " map evaluations, budget is " + std::to_string(budget));
    }
    std::vector<std::uint32_t> c(size);
    for (std::uint32_t i = 0; i < size; ++i) c[i] = i;
    bool have = false;
    do {
      std::uint32_t wa = 1, wb = 0;
      const std::uint64_t prof = profile_of_mask(p, set_mask(c), &wa, &wb);
      if (!have || prof < out.profile) {  // strict: lexicographically first minimum kept
        have = true;
        out.S = c;
        out.profile = prof;
        out.worst_a = wa;
        out.worst_b = wb;
      }
    } while (next_combination(c, p));
    return out;
  }

  // Greedy: random start, best single-element swap until no strict improvement.
  std::vector<std::uint32_t> pool(p);
  for (std::uint32_t i = 0; i < p; ++i) pool[i] = i;
  for (std::uint32_t i = 0; i < size; ++i) {
    const std::uint64_t j = i + rng.below(p - i);
    std::swap(pool[i], pool[j]);
  }
  std::uint64_t cur = 0;
  for (std::uint32_t i = 0; i < size; ++i) cur |= std::uint64_t{1} << pool[i];

  std::uint64_t evals = 0;
  std::uint32_t wa = 1, wb = 0;
  std::uint64_t prof = profile_of_mask(p, cur, &wa, &wb);
  evals += std::uint64_t{p} * p;
  bool improved = true;
  while (improved && evals < budget) {
    improved = false;
    std::uint64_t best_mask = cur, best_prof = prof;
    std::uint32_t best_wa = wa, best_wb = wb;
    for (std::uint32_t drop = 0; drop < p && evals < budget; ++drop) {
      if (!(cur >> drop & 1)) continue;
      for (std::uint32_t add = 0; add < p && evals < budget; ++add) {
        if (cur >> add & 1) continue;
        const std::uint64_t cand =
            (cur & ~(std::uint64_t{1} << drop)) | (std::uint64_t{1} << add);
        std::uint32_t ca = 1, cb = 0;
        const std::uint64_t cp = profile_of_mask(p, cand, &ca, &cb);
        evals += std::uint64_t{p} * p;
        if (cp < best_prof) {
          best_prof = cp;
          best_mask = cand;
          best_wa = ca;
          best_wb = cb;
        }
      }
    }
    if (best_prof < prof) {
      improved = true;
      cur = best_mask;
      prof = best_prof;
      wa = best_wa;
      wb = best_wb;
    }
  }
  out.S = mask_to_sorted(p, cur);
  out.profile = prof;
  out.worst_a = wa;
  out.worst_b = wb;
  return out;
}

Codeword encode(std::uint32_t m, const AffineEvasiveSet& S, const GroupCtx& ctx, SplitMix64& rng) {
  if (ctx.p() != S.p) throw std::invalid_argument("encode: alphabet mismatch");
  if (m >= S.S.size()) throw std::invalid_argument("encode: message out of range");
  const std::uint32_t s = S.S[m];
  const std::uint64_t order = ctx.order();
  const std::uint64_t per_l = order / ctx.p();  // p^(n-1) right halves per nonzero left half
  const std::uint64_t zero_block = (s == 0) ? order : 0;
  const std::uint64_t total = zero_block + (order - 1) * per_l;

  std::uint64_t r = rng.below(total);
  if (r < zero_block) return Codeword{0, r};
  r -= zero_block;

  const std::uint64_t L = 1 + r / per_l;
  std::uint64_t free_digits = r % per_l;

  const std::uint32_t p = ctx.p(), n = ctx.n();
  std::vector<std::uint32_t> l(n), rv(n, 0);
  ctx.decode(L, l.data());
  std::uint32_t pivot = 0;
  while (l[pivot] == 0) ++pivot;

  std::uint32_t acc = 0;
  for (std::uint32_t k = 0; k < n; ++k) {
    if (k == pivot) continue;
    const std::uint32_t d = static_cast<std::uint32_t>(free_digits % p);
    free_digits /= p;
    rv[k] = d;
    acc = (acc + l[k] * d) % p;
  }
  const std::uint32_t need = (s + p - acc) % p;
  rv[pivot] = static_cast<std::uint32_t>(
      (static_cast<std::uint64_t>(need) * ctx.inv_mod_p(l[pivot])) % p);
  return Codeword{L, ctx.encode(rv.data())};
}

std::optional<std::uint32_t> decode(const Codeword& c, const AffineEvasiveSet& S,
                                    const GroupCtx& ctx) {
  const std::uint32_t s = ctx.dot(c.L, c.R);
  const auto it = std::lower_bound(S.S.begin(), S.S.end(), s);
  if (it != S.S.end() && *it == s) {
    return static_cast<std::uint32_t>(it - S.S.begin());
  }
  return std::nullopt;
}

TamperPair tamper_identity(const GroupCtx& ctx) {
  TamperPair t{ctx, {}, {}};
  t.f.resize(ctx.order());
  for (std::uint64_t i = 0; i < ctx.order(); ++i) t.f[i] = static_cast<std::uint32_t>(i);
  t.g = t.f;
  return t;
}

TamperPair tamper_constant(const GroupCtx& ctx, std::uint64_t c1, std::uint64_t c2) {
  if (c1 >= ctx.order() || c2 >= ctx.order()) {
    throw std::invalid_argument("tamper_constant: constant out of range");
  }
  TamperPair t{ctx, {}, {}};
  t.f.assign(ctx.order(), static_cast<std::uint32_t>(c1));
  t.g.assign(ctx.order(), static_cast<std::uint32_t>(c2));
  return t;
}

TamperPair tamper_affine(const GroupCtx& ctx, const LinearMap& m1, std::uint64_t c1,
                         const LinearMap& m2, std::uint64_t c2) {
  for (const LinearMap* m : {&m1, &m2}) {
    if (m->p != ctx.p() || m->rows != ctx.n() || m->cols != ctx.n()) {
      throw std::invalid_argument("tamper_affine: map shape mismatch");
    }
  }
  if (c1 >= ctx.order() || c2 >= ctx.order()) {
    throw std::invalid_argument("tamper_affine: constant out of range");
  }
  TamperPair t{ctx, {}, {}};
  t.f.resize(ctx.order());
  t.g.resize(ctx.order());
  for (std::uint64_t x = 0; x < ctx.order(); ++x) {
    t.f[x] = static_cast<std::uint32_t>(ctx.add(m1.apply(x), c1));
    t.g[x] = static_cast<std::uint32_t>(ctx.add(m2.apply(x), c2));
  }
  return t;
}

TamperPair tamper_coord_perm(const GroupCtx& ctx, const std::vector<std::uint32_t>& perm_f,
                             const std::vector<std::uint32_t>& perm_g) {
  const std::uint32_t n = ctx.n();
  for (const auto* perm : {&perm_f, &perm_g}) {
    if (perm->size() != n) throw std::invalid_argument("tamper_coord_perm: permutation size");
    std::vector<bool> seen(n, false);
    for (std::uint32_t v : *perm) {
      if (v >= n || seen[v]) throw std::invalid_argument("tamper_coord_perm: not a permutation");
      seen[v] = true;
    }
  }
  TamperPair t{ctx, {}, {}};
  t.f.resize(ctx.order());
  t.g.resize(ctx.order());
  std::vector<std::uint32_t> in(n), out(n);
  for (std::uint64_t x = 0; x < ctx.order(); ++x) {
    ctx.decode(x, in.data());
    for (std::uint32_t k = 0; k < n; ++k) out[k] = in[perm_f[k]];
    t.f[x] = static_cast<std::uint32_t>(ctx.encode(out.data()));
    for (std::uint32_t k = 0; k < n; ++k) out[k] = in[perm_g[k]];
    t.g[x] = static_cast<std::uint32_t>(ctx.encode(out.data()));
  }
  return t;
}

TamperPair tamper_random(const GroupCtx& ctx, SplitMix64& rng) {
  TamperPair t{ctx, {}, {}};
  t.f.resize(ctx.order());
  t.g.resize(ctx.order());
  for (auto& v : t.f) v = static_cast<std::uint32_t>(rng.below(ctx.order()));
  for (auto& v : t.g) v = static_cast<std::uint32_t>(rng.below(ctx.order()));
  return t;
}

TamperPair lift_coordinatewise(const TamperPair& base, std::uint32_t n) {
  if (base.ctx.n() != 1) {
    throw std::invalid_argument("lift_coordinatewise: base pair must act on one coordinate");
  }
  const GroupCtx ctx(base.ctx.p(), n);
  TamperPair t{ctx, {}, {}};
  t.f.resize(ctx.order());
  t.g.resize(ctx.order());
  std::vector<std::uint32_t> in(n), out(n);
  for (std::uint64_t x = 0; x < ctx.order(); ++x) {
    ctx.decode(x, in.data());
    for (std::uint32_t k = 0; k < n; ++k) out[k] = base.f[in[k]];
    t.f[x] = static_cast<std::uint32_t>(ctx.encode(out.data()));
    for (std::uint32_t k = 0; k < n; ++k) out[k] = base.g[in[k]];
    t.g[x] = static_cast<std::uint32_t>(ctx.encode(out.data()));
  }
  return t;
}

JointDist::JointDist(const GroupCtx& ctx, std::vector<std::uint64_t> counts)
    : ctx_(ctx), counts_(std::move(counts)), denom_(ctx.order() * ctx.order()) {
  if (counts_.size() != std::size_t{ctx_.p()} * ctx_.p()) {
    throw std::invalid_argument("JointDist: counts must have p*p entries");
  }
  std::uint64_t total = 0;
  for (std::uint64_t c : counts_) total += c;
  if (total != denom_) throw std::invalid_argument("JointDist: counts must sum to p^(2n)");
}

mpq_class JointDist::pmf(std::uint32_t u, std::uint32_t y) const {
  mpq_class q(static_cast<unsigned long>(count(u, y)), static_cast<unsigned long>(denom_));
  q.canonicalize();
  return q;
}

namespace {

void check_pair_budget(const GroupCtx& ctx, const char* where) {
  const std::uint64_t order = ctx.order();
  if (order > (std::uint64_t{1} << 15)) {
    throw BudgetError(std::string(where) +
                      ": pair census needs p^(2n) > 2^30 inner products; rejected");
  }
}

}  // namespace

namespace ref {

std::vector<std::uint64_t> joint_census(const TamperPair& t) {
  check_pair_budget(t.ctx, "joint_census");
  const GroupCtx& ctx = t.ctx;
  const std::uint32_t p = ctx.p();
  std::vector<std::uint64_t> counts(std::size_t{p} * p, 0);
  for (std::uint64_t l = 0; l < ctx.order(); ++l) {
    for (std::uint64_t r = 0; r < ctx.order(); ++r) {
      const std::uint32_t u = ctx.dot(l, r);
      const std::uint32_t y = ctx.dot(t.f[l], t.g[r]);
      ++counts[std::size_t{u} * p + y];
    }
  }
  return counts;
}

}  // namespace ref

namespace kernels {

std::vector<std::uint64_t> joint_census_parallel(const TamperPair& t) {
  check_pair_budget(t.ctx, "joint_census_parallel");
  const GroupCtx& ctx = t.ctx;
  const std::uint32_t p = ctx.p();
  const std::int64_t order = static_cast<std::int64_t>(ctx.order());
  std::vector<std::uint64_t> counts(std::size_t{p} * p, 0);
#pragma omp parallel
  {
    std::vector<std::uint64_t> local(std::size_t{p} * p, 0);
#pragma omp for schedule(static) nowait
    for (std::int64_t l = 0; l < order; ++l) {
      for (std::int64_t r = 0; r < order; ++r) {
        const std::uint32_t u = ctx.dot(l, r);
        const std::uint32_t y = ctx.dot(t.f[l], t.g[r]);
        ++local[std::size_t{u} * p + y];
      }
    }
#pragma omp critical
    {
      for (std::size_t i = 0; i < counts.size(); ++i) counts[i] += local[i];
    }
  }
  return counts;
}

}  // namespace kernels

JointDist joint_dist(const TamperPair& t) {
  return JointDist(t.ctx, kernels::joint_census_parallel(t));
}

FamilyDistanceResult family_distance(const JointDist& jd) {
  const std::uint32_t p = jd.p();
  const std::size_t nmaps = std::size_t{p} * p;  // mixture weights D(a, b)
  const std::size_t nvars = 2 * nmaps;           // then one slack t(u, y) per cell
  const mpq_class inv_p(1, p);

  std::vector<LpRow> rows;
  rows.reserve(1 + 2 * nmaps);
  {
    LpRow sum1;
    sum1.a.assign(nvars, 0);
    for (std::size_t i = 0; i < nmaps; ++i) sum1.a[i] = 1;
    sum1.sense = RowSense::eq;
    sum1.b = 1;
    rows.push_back(std::move(sum1));
  }
  for (std::uint32_t u = 0; u < p; ++u) {
    for (std::uint32_t y = 0; y < p; ++y) {
      const std::size_t tvar = nmaps + std::size_t{u} * p + y;
      const mpq_class puy = jd.pmf(u, y);
      LpRow above, below;
      above.a.assign(nvars, 0);
      below.a.assign(nvars, 0);
      for (std::uint32_t a = 0; a < p; ++a) {
        const std::uint32_t b = (y + p - (a * u) % p) % p;  // unique b with a*u + b = y
        above.a[std::size_t{a} * p + b] = inv_p;
        below.a[std::size_t{a} * p + b] = -inv_p;
      }
      above.a[tvar] = -1;
      above.sense = RowSense::le;
      above.b = puy;
      below.a[tvar] = -1;
      below.sense = RowSense::le;
      below.b = -puy;
      rows.push_back(std::move(above));
      rows.push_back(std::move(below));
    }
  }

  std::vector<mpq_class> cost(nvars, 0);
  for (std::size_t i = nmaps; i < nvars; ++i) cost[i] = mpq_class(1, 2);

  const LpSolution sol = lp_minimize(nvars, rows, cost);
  if (!sol.feasible) throw std::logic_error("family_distance: LP reported infeasible");

  FamilyDistanceResult out;
  out.distance = sol.objective;
  out.d.assign(sol.x.begin(), sol.x.begin() + static_cast<std::ptrdiff_t>(nmaps));
  out.lp_pivots = sol.pivots;

  // Independent plug-back: rebuild Q from the mixture and re-take the distance.
  mpq_class replug = 0;
  for (std::uint32_t u = 0; u < p; ++u) {
    for (std::uint32_t y = 0; y < p; ++y) {
      mpq_class q = 0;
      for (std::uint32_t a = 0; a < p; ++a) {
        const std::uint32_t b = (y + p - (a * u) % p) % p;
        q += out.d[std::size_t{a} * p + b];
      }
      q *= inv_p;
      replug += abs(jd.pmf(u, y) - q);
    }
  }
  replug /= 2;
  out.replug = replug;
  out.certified = sol.certified && replug == out.distance;
  return out;
}

std::vector<OutcomeDist> tamper_experiment(const TamperPair& t, const AffineEvasiveSet& S) {
  if (t.ctx.p() != S.p) throw std::invalid_argument("tamper_experiment: alphabet mismatch");
  check_pair_budget(t.ctx, "tamper_experiment");
  const GroupCtx& ctx = t.ctx;
  const std::uint32_t p = ctx.p();
  const std::size_t nmsg = S.S.size();

  std::vector<std::int32_t> msg_of(p, -1);
  for (std::size_t m = 0; m < nmsg; ++m) msg_of[S.S[m]] = static_cast<std::int32_t>(m);

  std::vector<std::vector<std::uint64_t>> table(nmsg,
                                                std::vector<std::uint64_t>(nmsg + 1, 0));
  for (std::uint64_t l = 0; l < ctx.order(); ++l) {
    for (std::uint64_t r = 0; r < ctx.order(); ++r) {
      const std::int32_t m = msg_of[ctx.dot(l, r)];
      if (m < 0) continue;
      const auto decoded = decode(Codeword{t.f[l], t.g[r]}, S, ctx);
      const std::size_t o = decoded ? *decoded : nmsg;
      ++table[static_cast<std::size_t>(m)][o];
    }
  }

  const std::uint64_t order = ctx.order();
  const std::uint64_t per_l = order / p;
  std::vector<OutcomeDist> out(nmsg);
  for (std::size_t m = 0; m < nmsg; ++m) {
    out[m].message = static_cast<std::uint32_t>(m);
    out[m].counts = std::move(table[m]);
    out[m].denom = ((S.S[m] == 0) ? order : 0) + (order - 1) * per_l;
  }
  return out;
}

NmMetricResult nm_metric(const TamperPair& t, const AffineEvasiveSet& S) {
  const std::vector<OutcomeDist> laws = tamper_experiment(t, S);
  const std::size_t nmsg = laws.size();
  if (nmsg < 2) throw std::invalid_argument("nm_metric: need at least two messages");

  // Alphabet after renaming: slot 0 = SAME, slot 1 = bottom, slot 2+j = message j.
  // Both compared messages collapse to SAME in both laws, so a fixed tampering
  // outcome that happens to be one of the pair is not counted as malleability.
  const auto renamed = [&](std::size_t m, std::size_t other, std::size_t slot) -> mpq_class {
    std::uint64_t c = 0;
    if (slot == 0) {
      c = laws[m].counts[m] + laws[m].counts[other];
    } else if (slot == 1) {
      c = laws[m].counts[nmsg];
    } else {
      const std::size_t j = slot - 2;
      c = (j == m || j == other) ? 0 : laws[m].counts[j];
    }
    mpq_class q(0);
    if (c != 0) {
      q = mpq_class(static_cast<unsigned long>(c), static_cast<unsigned long>(laws[m].denom));
      q.canonicalize();
    }
    return q;
  };

  NmMetricResult best;
  best.value = -1;
  for (std::size_t m1 = 0; m1 < nmsg; ++m1) {
    for (std::size_t m2 = m1 + 1; m2 < nmsg; ++m2) {
      mpq_class tv = 0;
      for (std::size_t slot = 0; slot < nmsg + 2; ++slot) {
        tv += abs(renamed(m1, m2, slot) - renamed(m2, m1, slot));
      }
      tv /= 2;
      if (tv > best.value) {
        best.value = tv;
        best.m1 = static_cast<std::uint32_t>(m1);
        best.m2 = static_cast<std::uint32_t>(m2);
      }
    }
  }
  return best;
}

}  // namespace adlab
