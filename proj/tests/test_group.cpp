#include <doctest.h>

#include <set>
#include <stdexcept>

#include "adlab/group.hpp"
#include "adlab/rng.hpp"
#include "test_support.hpp"

using namespace adlab;

TEST_CASE("group context validates its parameters") {
  CHECK_THROWS_AS(GroupCtx(4, 2), std::invalid_argument);   // composite p
  CHECK_THROWS_AS(GroupCtx(1, 2), std::invalid_argument);   // not prime
  CHECK_THROWS_AS(GroupCtx(0, 2), std::invalid_argument);
  CHECK_THROWS_AS(GroupCtx(2, 0), std::invalid_argument);   // empty group
  CHECK_THROWS_AS(GroupCtx(2, 25), std::invalid_argument);  // 2^25 > order cap
  CHECK_THROWS_AS(GroupCtx(3, 17), std::invalid_argument);  // 3^17 > order cap
  CHECK_NOTHROW(GroupCtx(2, 24));                           // exactly the cap
  CHECK_NOTHROW(GroupCtx(16777213, 1));                     // prime just below 2^24
}

TEST_CASE("is_prime agrees with trial division") {
  auto slow = [](std::uint64_t v) {
    if (v < 2) return false;
    for (std::uint64_t d = 2; d * d <= v; ++d)
      if (v % d == 0) return false;
    return true;
  };
  for (std::uint64_t v = 0; v < 2000; ++v) CHECK(is_prime(v) == slow(v));
  CHECK(is_prime(16777213));
  CHECK_FALSE(is_prime(16777215));
}

TEST_CASE("codec round-trips against an independent digit expansion") {
  for (auto [p, n] : {std::pair<std::uint32_t, std::uint32_t>{2, 4}, {3, 3}, {5, 2}, {7, 1}}) {
    GroupCtx ctx(p, n);
    for (std::uint64_t idx = 0; idx < ctx.order(); ++idx) {
      const auto want = oracle::digits(idx, p, n);
      std::vector<std::uint32_t> got(n);
      ctx.decode(idx, got.data());
      CHECK(got == want);
      CHECK(ctx.encode(want.data()) == idx);
      for (std::uint32_t k = 0; k < n; ++k) CHECK(ctx.digit(idx, k) == want[k]);
    }
  }
}

TEST_CASE("digit 0 is the least significant coordinate") {
  GroupCtx ctx(3, 2);
  // index 5 = 2 + 1*3 -> coordinates (2, 1)
  CHECK(ctx.digit(5, 0) == 2);
  CHECK(ctx.digit(5, 1) == 1);
  const std::uint32_t d[2] = {2, 1};
  CHECK(ctx.encode(d) == 5);
}

TEST_CASE("arithmetic matches digitwise oracle") {
  for (auto [p, n] : {std::pair<std::uint32_t, std::uint32_t>{2, 5}, {3, 3}, {5, 2}, {13, 1}}) {
    GroupCtx ctx(p, n);
    SplitMix64 rng(42, p);
    for (int trial = 0; trial < 200; ++trial) {
      const std::uint64_t a = rng.below(ctx.order());
      const std::uint64_t b = rng.below(ctx.order());
      CHECK(ctx.add(a, b) == oracle::add(a, b, p, n));
      CHECK(ctx.sub(a, b) == oracle::sub(a, b, p, n));
      CHECK(ctx.neg(a) == oracle::neg(a, p, n));
      CHECK(ctx.dot(a, b) == oracle::dot(a, b, p, n));
      const std::uint32_t c = static_cast<std::uint32_t>(rng.below(p));
      // scaling = repeated addition
      std::uint64_t acc = 0;
      for (std::uint32_t i = 0; i < c; ++i) acc = oracle::add(acc, a, p, n);
      CHECK(ctx.scale(a, c) == acc);
    }
  }
}

TEST_CASE("group laws hold exhaustively on F_3^2") {
  GroupCtx ctx(3, 2);
  for (std::uint64_t a = 0; a < ctx.order(); ++a) {
    CHECK(ctx.add(a, ctx.neg(a)) == 0);
    CHECK(ctx.scale(a, 3) == 0);  // torsion p
    for (std::uint64_t b = 0; b < ctx.order(); ++b) {
      CHECK(ctx.add(a, b) == ctx.add(b, a));
      CHECK(ctx.sub(a, b) == ctx.add(a, ctx.neg(b)));
      CHECK(ctx.dot(a, b) == ctx.dot(b, a));
      for (std::uint64_t c = 0; c < ctx.order(); ++c) {
        CHECK(ctx.add(ctx.add(a, b), c) == ctx.add(a, ctx.add(b, c)));
      }
      // bilinearity of the pairing
      for (std::uint64_t c = 0; c < ctx.order(); ++c) {
        CHECK(ctx.dot(ctx.add(a, b), c) == (ctx.dot(a, c) + ctx.dot(b, c)) % 3);
      }
    }
  }
}

TEST_CASE("p = 2 arithmetic is xor") {
  GroupCtx ctx(2, 6);
  for (std::uint64_t a = 0; a < 64; ++a)
    for (std::uint64_t b = 0; b < 64; ++b) {
      CHECK(ctx.add(a, b) == (a ^ b));
      CHECK(ctx.sub(a, b) == (a ^ b));
      CHECK(ctx.neg(a) == a);
    }
}

TEST_CASE("modular inverse is exact for every nonzero residue") {
  for (std::uint32_t p : {2u, 3u, 5u, 7u, 13u, 31u}) {
    GroupCtx ctx(p, 1);
    for (std::uint32_t c = 1; c < p; ++c) {
      const std::uint32_t inv = ctx.inv_mod_p(c);
      CHECK(inv < p);
      CHECK((static_cast<std::uint64_t>(inv) * c) % p == 1);
    }
    CHECK_THROWS_AS(ctx.inv_mod_p(0), std::invalid_argument);
  }
}

TEST_CASE("vector view round-trips and mirrors index arithmetic") {
  GroupCtx ctx(5, 2);
  SplitMix64 rng(7, 0);
  for (int trial = 0; trial < 100; ++trial) {
    const std::uint64_t a = rng.below(ctx.order());
    const std::uint64_t b = rng.below(ctx.order());
    const FpVec va = make_vec(ctx, a), vb = make_vec(ctx, b);
    CHECK(index_of(ctx, va) == a);
    CHECK(index_of(ctx, vec_add(va, vb)) == ctx.add(a, b));
    CHECK(index_of(ctx, vec_sub(va, vb)) == ctx.sub(a, b));
    CHECK(index_of(ctx, vec_neg(va)) == ctx.neg(a));
    CHECK(index_of(ctx, vec_scale(va, 3)) == ctx.scale(a, 3));
    CHECK(inner_product(va, vb) == ctx.dot(a, b));
  }
}

TEST_CASE("rng streams are deterministic and decoupled") {
  SplitMix64 a(123, 0), b(123, 0), c(123, 1);
  bool all_equal = true, any_diff = false;
  for (int i = 0; i < 64; ++i) {
    const std::uint64_t va = a.next();
    all_equal = all_equal && (va == b.next());
    any_diff = any_diff || (va != c.next());
  }
  CHECK(all_equal);
  CHECK(any_diff);

  SplitMix64 d(99, 5);
  for (int i = 0; i < 1000; ++i) {
    CHECK(d.below(7) < 7);
    const double u = d.unit();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
}

TEST_CASE("budget errors are runtime errors") {
  const BudgetError e("over");
  CHECK(dynamic_cast<const std::runtime_error*>(&e) != nullptr);
}
