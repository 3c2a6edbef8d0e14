#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

#include "adlab/fpset.hpp"
#include "adlab/gen.hpp"
#include "adlab/rng.hpp"
#include "adlab/setops.hpp"
#include "adlab/subspace.hpp"
#include "adlab/bogolyubov.hpp"
#include "test_support.hpp"

using namespace adlab;

namespace {

FpSet make_set(const GroupCtx& ctx, const std::set<std::uint64_t>& s) {
  FpSet a(ctx);
  for (std::uint64_t x : s) a.insert(x);
  return a;
}

std::set<std::uint64_t> random_subset(std::uint64_t order, SplitMix64& rng, double density) {
  std::set<std::uint64_t> s;
  for (std::uint64_t x = 0; x < order; ++x)
    if (rng.unit() < density) s.insert(x);
  if (s.empty()) s.insert(rng.below(order));
  return s;
}

}  // namespace

TEST_CASE("bitset mirrors std::set under mixed mutations") {
  GroupCtx ctx(3, 3);
  SplitMix64 rng(5, 0);
  FpSet a(ctx);
  std::set<std::uint64_t> ref;
  for (int step = 0; step < 3000; ++step) {
    const std::uint64_t x = rng.below(ctx.order());
    if (rng.below(2)) {
      a.insert(x);
      ref.insert(x);
    } else {
      a.erase(x);
      ref.erase(x);
    }
    CHECK(a.size() == ref.size());
    CHECK(a.contains(x) == (ref.count(x) != 0));
  }
  CHECK(oracle::members(a) == ref);
  const auto mem = a.members();
  CHECK(std::set<std::uint64_t>(mem.begin(), mem.end()) == ref);
  CHECK(std::is_sorted(mem.begin(), mem.end()));
  if (!ref.empty()) CHECK(a.min_element() == *ref.begin());

  const FpSet comp = a.complement();
  CHECK(comp.size() == ctx.order() - a.size());
  for (std::uint64_t x = 0; x < ctx.order(); ++x) CHECK(comp.contains(x) != a.contains(x));

  const std::uint64_t g = rng.below(ctx.order());
  const FpSet tr = a.translated(g);
  for (std::uint64_t x : ref) CHECK(tr.contains(oracle::add(x, g, 3, 3)));
  CHECK(tr.size() == a.size());

  const FpSet ng = a.negated();
  for (std::uint64_t x : ref) CHECK(ng.contains(oracle::neg(x, 3, 3)));

  CHECK(a.is_subset_of(FpSet::full(ctx)));
  CHECK_FALSE(FpSet::full(ctx).is_subset_of(a));
}

TEST_CASE("sumset, difference set and folds match the std::set oracle") {
  for (auto [p, n] : {std::pair<std::uint32_t, std::uint32_t>{2, 5}, {3, 3}, {5, 2}}) {
    GroupCtx ctx(p, n);
    SplitMix64 rng(11 * p + n, 1);
    for (int trial = 0; trial < 12; ++trial) {
      const auto sa = random_subset(ctx.order(), rng, 0.3);
      const auto sb = random_subset(ctx.order(), rng, 0.3);
      const FpSet a = make_set(ctx, sa), b = make_set(ctx, sb);
      CHECK(oracle::members(sumset(a, b)) == oracle::sumset(sa, sb, p, n));
      CHECK(oracle::members(difference_set(a, b)) == oracle::difference(sa, sb, p, n));
      for (std::uint32_t k = 0; k <= 2; ++k)
        for (std::uint32_t l = 0; l <= 2; ++l) {
          if (k + l == 0) continue;
          CHECK(oracle::members(iterated(a, k, l)) == oracle::iterated(sa, k, l, p, n));
        }
    }
  }
}

TEST_CASE("degenerate set operands are rejected or behave as documented") {
  GroupCtx ctx(2, 3);
  FpSet empty(ctx);
  FpSet one(ctx, {3});
  CHECK(sumset(empty, one).empty());
  CHECK(sumset(one, empty).empty());
  CHECK_THROWS_AS(iterated(empty, 1, 1), std::invalid_argument);
  CHECK_THROWS_AS(iterated(one, 0, 0), std::invalid_argument);
  // singleton: A - A = {0}, A + A = {2a}
  CHECK(oracle::members(difference_set(one, one)) == std::set<std::uint64_t>{0});
  CHECK(oracle::members(sumset(one, one)) == std::set<std::uint64_t>{0});  // 3 xor 3
}

TEST_CASE("subspace canonical form is generator-order independent") {
  GroupCtx ctx(3, 3);
  SplitMix64 rng(17, 0);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<std::uint64_t> gens;
    for (int i = 0; i < 3; ++i) gens.push_back(rng.below(ctx.order()));
    Subspace w1 = span(ctx, gens);
    std::reverse(gens.begin(), gens.end());
    Subspace w2 = span(ctx, gens);
    CHECK(w1.basis() == w2.basis());
    CHECK(w1.dim() == oracle::rank_of_indices(gens, 3, 3));
    // membership agrees with enumerate()
    const auto elems = w1.enumerate();
    CHECK(elems.size() == w1.size());
    std::set<std::uint64_t> es(elems.begin(), elems.end());
    CHECK(es.size() == w1.size());
    for (std::uint64_t v = 0; v < ctx.order(); ++v) CHECK(w1.contains(v) == (es.count(v) != 0));
    // coset representatives classify v ~ w  iff  v - w in W
    for (int k = 0; k < 20; ++k) {
      const std::uint64_t v = rng.below(ctx.order()), w = rng.below(ctx.order());
      CHECK((w1.coset_rep(v) == w1.coset_rep(w)) == w1.contains(ctx.sub(v, w)));
    }
  }
}

TEST_CASE("subspace closure properties") {
  GroupCtx ctx(5, 2);
  SplitMix64 rng(23, 0);
  Subspace w = random_subspace(ctx, 1, rng);
  const auto elems = w.enumerate();
  for (std::uint64_t x : elems)
    for (std::uint64_t y : elems) CHECK(w.contains(ctx.sub(x, y)));
}

TEST_CASE("orthogonal complement is a dual involution") {
  for (auto [p, n] : {std::pair<std::uint32_t, std::uint32_t>{2, 4}, {3, 3}}) {
    GroupCtx ctx(p, n);
    SplitMix64 rng(p + n, 2);
    for (std::uint32_t dim = 0; dim <= n; ++dim) {
      Subspace w = random_subspace(ctx, dim, rng);
      Subspace perp = orthogonal_complement(w);
      CHECK(perp.dim() == n - w.dim());
      for (std::uint64_t u : perp.enumerate())
        for (std::uint64_t v : w.enumerate()) CHECK(ctx.dot(u, v) == 0);
      Subspace back = orthogonal_complement(perp);
      CHECK(back.dim() == w.dim());
      for (std::uint64_t v : w.enumerate()) CHECK(back.contains(v));
    }
  }
}

TEST_CASE("subspace census matches the Gaussian binomial") {
  for (auto [p, n] : {std::pair<std::uint32_t, std::uint32_t>{2, 4}, {3, 3}}) {
    GroupCtx ctx(p, n);
    for (std::uint32_t dim = 0; dim <= n; ++dim) {
      std::uint64_t seen = 0;
      std::set<std::vector<std::vector<std::uint32_t>>> canon;
      enumerate_subspaces(ctx, dim, [&](const Subspace& w) {
        ++seen;
        CHECK(w.dim() == dim);
        canon.insert(w.basis());
        return true;
      });
      CHECK(canon.size() == seen);  // all distinct
      CHECK(mpz_class(static_cast<unsigned long>(seen)) == subspace_count(ctx, dim));
    }
  }
}

TEST_CASE("doubling constant is exact and coset detection is sound") {
  GroupCtx ctx(2, 3);
  // exhaustive: every nonempty subset of F_2^3
  for (std::uint64_t mask = 1; mask < 256; ++mask) {
    std::set<std::uint64_t> s;
    for (std::uint64_t x = 0; x < 8; ++x)
      if (mask >> x & 1) s.insert(x);
    const FpSet a = make_set(ctx, s);
    const DoublingReport rep = doubling(a);
    const auto diff = oracle::difference(s, s, 2, 3);
    CHECK(rep.K == oracle::q(diff.size(), s.size()));
    CHECK(is_subgroup_coset(a) == oracle::is_coset(s, 2, 3));
    CHECK((rep.K == 1) == oracle::is_coset(s, 2, 3));
  }
}

TEST_CASE("iterated growth bounds hold with exact rationals") {
  GroupCtx ctx(3, 3);
  SplitMix64 rng(31, 0);
  for (int trial = 0; trial < 10; ++trial) {
    const FpSet a = make_set(ctx, random_subset(ctx.order(), rng, 0.2));
    const PlunneckeReport rep = plunnecke_check(a, 4);
    const auto sa = oracle::members(a);
    const auto diff = oracle::difference(sa, sa, 3, 3);
    const mpq_class k = oracle::q(diff.size(), sa.size());
    CHECK(rep.K == k);
    CHECK(!rep.entries.empty());
    for (const PlunneckeEntry& e : rep.entries) {
      CHECK(e.k + e.l >= 1);
      CHECK(e.k + e.l <= 4);
      // bound recomputed independently: K^(k+l) * |A|
      mpq_class want = 1;
      for (std::uint32_t i = 0; i < e.k + e.l; ++i) want *= k;
      want *= static_cast<unsigned long>(sa.size());
      CHECK(e.bound == want);
      CHECK(e.size == oracle::iterated(sa, e.k, e.l, 3, 3).size());
      CHECK(e.margin == e.bound - static_cast<long>(e.size));
      CHECK(e.margin >= 0);
    }
  }
}

TEST_CASE("matrix act and index round-trip") {
  SplitMix64 rng(3, 3);
  GroupCtx dom(3, 2);
  for (std::uint64_t id = 0; id < 81; ++id) {  // all 2x2 maps over F_3
    const LinearMap m = LinearMap::from_index(3, 2, 2, id);
    // entries are the base-p digits of id, row-major starting at a[0]
    std::uint64_t back = 0;
    for (std::size_t i = m.a.size(); i-- > 0;) back = back * 3 + m.a[i];
    CHECK(back == id);
    for (std::uint64_t x = 0; x < dom.order(); ++x) {
      const auto dx = oracle::digits(x, 3, 2);
      std::vector<std::uint32_t> dy(2, 0);
      for (std::uint32_t r = 0; r < 2; ++r)
        for (std::uint32_t c = 0; c < 2; ++c) dy[r] = (dy[r] + m.at(r, c) * dx[c]) % 3;
      CHECK(m.apply(x) == oracle::undigits(dy, 3));
    }
    // invertible iff the map is a bijection on indices
    std::set<std::uint64_t> image;
    for (std::uint64_t x = 0; x < dom.order(); ++x) image.insert(m.apply(x));
    CHECK(m.is_invertible() == (image.size() == dom.order()));
  }
  const LinearMap id2 = LinearMap::identity(3, 2);
  for (std::uint64_t x = 0; x < 9; ++x) CHECK(id2.apply(x) == x);
  CHECK(LinearMap::zero(3, 2, 2).apply(5) == 0);
  const LinearMap rnd = LinearMap::random(3, 2, 2, rng);
  CHECK(rnd.a.size() == 4);
  for (std::uint32_t e : rnd.a) CHECK(e < 3);
}

TEST_CASE("stratum injectivity test accepts bijections and reports real witnesses") {
  GroupCtx ctx(2, 4);
  SplitMix64 rng(41, 0);
  for (int trial = 0; trial < 20; ++trial) {
    const FpSet a = make_set(ctx, random_subset(ctx.order(), rng, 0.4));
    LinearMap m = LinearMap::random(2, 4, 4, rng);
    while (!m.is_invertible()) m = LinearMap::random(2, 4, 4, rng);
    for (std::uint32_t t = 1; t <= 3; ++t) {
      const FreimanVerdict v = freiman_check(m, a, t);
      CHECK(v.is_hom);
      CHECK(v.order == t);
      CHECK_FALSE(v.witness.has_value());
    }
  }
  // non-injective projection collides somewhere on a rich enough set
  for (int trial = 0; trial < 20; ++trial) {
    const FpSet a = make_set(ctx, random_subset(ctx.order(), rng, 0.6));
    const LinearMap proj = LinearMap::from_index(2, 4, 4, 0b1);  // rank 1
    const FreimanVerdict v = freiman_check(proj, a, 2);
    // independent recomputation of the verdict
    const auto sa = oracle::members(a);
    bool hom = true;
    for (std::uint32_t k = 0; k <= 2 && hom; ++k) {
      const std::uint32_t l = 2 - k;
      std::map<std::uint64_t, std::uint64_t> seen;
      for (std::uint64_t x : oracle::iterated(sa, k, l, 2, 4)) {
        const auto [it, fresh] = seen.emplace(proj.apply(x), x);
        if (!fresh) hom = false;
      }
    }
    CHECK(v.is_hom == hom);
    if (v.witness) {
      CHECK(proj.apply(v.witness->a) == proj.apply(v.witness->b));
      CHECK(v.witness->a != v.witness->b);
      CHECK(v.witness->k + v.witness->l == 2);
      const auto stratum = oracle::iterated(sa, v.witness->k, v.witness->l, 2, 4);
      CHECK(stratum.count(v.witness->a) == 1);
      CHECK(stratum.count(v.witness->b) == 1);
    }
  }
}

TEST_CASE("minimal embedding dimension is truly minimal") {
  GroupCtx ctx(2, 3);
  FpSet a(ctx, {0, 1});  // {0, e0}
  const MinimalEmbedding me = minimal_embedding_search(a, 2);
  CHECK(me.m == 1);
  CHECK(me.phi.rows == 1);
  CHECK(me.phi.cols == 3);
  CHECK(freiman_check(me.phi, a, 2).is_hom);

  // the full plane needs the full dimension
  GroupCtx plane(2, 2);
  const MinimalEmbedding full = minimal_embedding_search(FpSet::full(plane), 2);
  CHECK(full.m == 2);
  CHECK(full.phi.is_invertible());
  // independent check that no 1-dimensional map works: 2A - 0A is all of F_2^2,
  // so a surjection onto F_2 collapses 4 points into 2
  for (std::uint64_t id = 0; id < 4; ++id) {
    const LinearMap cand = LinearMap::from_index(2, 1, 2, id);
    std::set<std::uint64_t> image;
    for (std::uint64_t x = 0; x < 4; ++x) image.insert(cand.apply(x));
    if (image.size() < 2) continue;  // not surjective
    CHECK_FALSE(freiman_check(cand, FpSet::full(plane), 2).is_hom);
  }

  CHECK_THROWS_AS(minimal_embedding_search(FpSet::full(plane), 2, 3), BudgetError);
  GroupCtx big(2, 7);
  CHECK_THROWS_AS(minimal_embedding_search(FpSet(big, {0, 1}), 2), std::invalid_argument);
}

TEST_CASE("random generators honour their contracts") {
  GroupCtx ctx(3, 3);
  SplitMix64 rng(53, 0);
  for (int trial = 0; trial < 30; ++trial) {
    const FpSet s = random_set_of_size(ctx, 7, rng);
    CHECK(s.size() == 7);
    const Subspace w = random_subspace(ctx, 2, rng);
    CHECK(w.dim() == 2);
    const FpSet c = random_coset(ctx, 2, rng);
    CHECK(c.size() == 9);
    CHECK(is_subgroup_coset(c));
    const FpSet low = random_low_doubling(ctx, mpq_class(2), rng);
    CHECK(doubling(low).K <= 2);
  }
  const FpSet any = random_set(ctx, rng);
  CHECK(any.size() > 0);
  CHECK(any.size() <= ctx.order());
}
