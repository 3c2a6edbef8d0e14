#include <doctest.h>

#include <cmath>
#include <complex>
#include <set>
#include <vector>

#include "adlab/fourier.hpp"
#include "adlab/gen.hpp"
#include "adlab/rng.hpp"
#include "adlab/subspace.hpp"
#include "test_support.hpp"

using namespace adlab;

namespace {

DensityFn random_density(const GroupCtx& ctx, SplitMix64& rng) {
  std::vector<double> v(ctx.order());
  for (double& x : v) x = rng.unit() * 2.0 - 0.5;
  return DensityFn(ctx, std::move(v));
}

double max_coeff_err(const SpectrumTable& got, const std::vector<std::complex<double>>& want) {
  double worst = 0;
  for (std::uint64_t u = 0; u < want.size(); ++u) worst = std::max(worst, std::abs(got[u] - want[u]));
  return worst;
}

}  // namespace

TEST_CASE("fast transform equals the quadratic oracle") {
  for (auto [p, n] : {std::pair<std::uint32_t, std::uint32_t>{2, 4}, {3, 3}, {5, 2}, {7, 1}}) {
    GroupCtx ctx(p, n);
    SplitMix64 rng(100 + p, n);
    for (int trial = 0; trial < 5; ++trial) {
      const DensityFn h = random_density(ctx, rng);
      const SpectrumTable t = transform(h);
      CHECK(max_coeff_err(t, oracle::dft(h.values(), p, n)) < 1e-10);
    }
  }
}

TEST_CASE("direct reference, parallel kernel and fast path agree") {
  GroupCtx ctx(3, 3);
  SplitMix64 rng(9, 9);
  const DensityFn h = random_density(ctx, rng);
  const SpectrumTable fast = transform(h);
  const SpectrumTable direct = ref::transform_direct(h);
  const SpectrumTable par = kernels::transform_direct_parallel(h);
  // serial direct and its parallel twin must agree bitwise
  for (std::uint64_t u = 0; u < ctx.order(); ++u) {
    CHECK(direct[u] == par[u]);
    CHECK(std::abs(fast[u] - direct[u]) < 1e-12);
  }
}

TEST_CASE("inversion and Parseval hold to tight tolerance") {
  for (auto [p, n] : {std::pair<std::uint32_t, std::uint32_t>{2, 5}, {3, 3}, {11, 1}}) {
    GroupCtx ctx(p, n);
    SplitMix64 rng(200 + p, n);
    for (int trial = 0; trial < 5; ++trial) {
      const DensityFn h = random_density(ctx, rng);
      const SpectrumTable t = transform(h);
      const DensityFn back = inverse_transform(t);
      double energy = 0;
      for (std::uint64_t u = 0; u < ctx.order(); ++u) energy += std::norm(t[u]);
      double worst = 0;
      for (std::uint64_t x = 0; x < ctx.order(); ++x)
        worst = std::max(worst, std::abs(back[x] - h[x]));
      CHECK(worst < 1e-12);
      CHECK(std::abs(energy - fn_inner(h, h)) < 1e-10);
    }
  }
}

TEST_CASE("convolution: direct loop, mirrored definition and transform route agree") {
  GroupCtx ctx(3, 3);
  SplitMix64 rng(77, 0);
  const DensityFn f = random_density(ctx, rng);
  const DensityFn g = random_density(ctx, rng);
  const DensityFn direct = convolve(f, g);
  const DensityFn fast = convolve_fast(f, g);
  // independent oracle: f*g(x) = E_y f(y) g(x - y)
  for (std::uint64_t x = 0; x < ctx.order(); ++x) {
    double acc = 0;
    for (std::uint64_t y = 0; y < ctx.order(); ++y)
      acc += f[y] * g[oracle::sub(x, y, 3, 3)];
    acc /= static_cast<double>(ctx.order());
    CHECK(std::abs(direct[x] - acc) < 1e-12);
    CHECK(std::abs(fast[x] - acc) < 1e-10);
  }
  // parallel twin agrees bitwise with the serial reference
  const DensityFn refc = ref::convolve_direct(f, g);
  const DensityFn parc = kernels::convolve_direct_parallel(f, g);
  for (std::uint64_t x = 0; x < ctx.order(); ++x) {
    CHECK(refc[x] == parc[x]);
    CHECK(refc[x] == direct[x]);
  }
  // convolution theorem
  const SpectrumTable tf = transform(f), tg = transform(g), tc = transform(direct);
  for (std::uint64_t u = 0; u < ctx.order(); ++u)
    CHECK(std::abs(tc[u] - tf[u] * tg[u]) < 1e-10);
}

TEST_CASE("density transform of a translate only rotates phases") {
  GroupCtx ctx(2, 4);
  SplitMix64 rng(4, 4);
  const FpSet a = random_set(ctx, rng, 0.4);
  const SpectrumTable t = transform(a);
  const SpectrumTable td = transform(density(a));
  for (std::uint64_t u = 0; u < ctx.order(); ++u) {
    CHECK(std::abs(t[u] - td[u]) < 1e-12);
    CHECK(std::abs(t[u]) <= 1.0 + 1e-12);  // set transforms live in the unit disc
  }
  CHECK(std::abs(t[0] - 1.0) < 1e-12);  // normalization: X^(0) = 1
}

TEST_CASE("subspace indicators transform to annihilator indicators") {
  for (auto [p, n] : {std::pair<std::uint32_t, std::uint32_t>{2, 4}, {3, 2}}) {
    GroupCtx ctx(p, n);
    for (std::uint32_t dim = 0; dim <= n; ++dim) {
      enumerate_subspaces(ctx, dim, [&](const Subspace& w) {
        const SpectrumTable t = transform(indicator(w.to_set()));
        const Subspace perp = orthogonal_complement(w);
        const double scale = static_cast<double>(w.size()) / static_cast<double>(ctx.order());
        for (std::uint64_t u = 0; u < ctx.order(); ++u) {
          const double want = perp.contains(u) ? scale : 0.0;
          CHECK(std::abs(t[u] - want) < 1e-12);
        }
        return true;
      });
    }
  }
}

TEST_CASE("spectrum thresholding is exact and always contains zero") {
  GroupCtx ctx(3, 3);
  SplitMix64 rng(15, 2);
  for (int trial = 0; trial < 10; ++trial) {
    const FpSet x = random_set(ctx, rng, 0.3);
    const double gamma = 0.2 + 0.6 * rng.unit();
    const FpSet spec = spectrum(x, gamma);
    CHECK(spec.contains(0));
    const SpectrumTable t = transform(x);
    for (std::uint64_t u = 1; u < ctx.order(); ++u)
      CHECK(spec.contains(u) == (std::abs(t[u]) >= gamma));
  }
  // gamma = 1 keeps only unit-magnitude coefficients, which 0 always has
  CHECK(spectrum(random_set(ctx, rng, 0.3), 1.0).contains(0));
  CHECK_THROWS_AS(spectrum(random_set(ctx, rng, 0.3), 1.5), std::invalid_argument);
  CHECK_THROWS_AS(spectrum(random_set(ctx, rng, 0.3), 0.0), std::invalid_argument);
}

TEST_CASE("spectrum dimension bound report recomputes cleanly") {
  GroupCtx ctx(2, 6);
  SplitMix64 rng(66, 3);
  for (int trial = 0; trial < 10; ++trial) {
    const FpSet x = random_set(ctx, rng, 0.2);
    for (double gamma : {0.3, 0.5, 0.8}) {
      const ChangReport r = chang_check(x, gamma);
      CHECK(r.gamma == gamma);
      CHECK(r.dim == span(spectrum(x, gamma)).dim());
      const double want =
          8.0 / (gamma * gamma) *
          std::log(static_cast<double>(ctx.order()) / static_cast<double>(x.size()));
      CHECK(r.bound == doctest::Approx(want).epsilon(1e-12));
      CHECK(r.slack == doctest::Approx(r.bound - r.dim).epsilon(1e-12));
      CHECK(r.ok == (static_cast<double>(r.dim) <= r.bound));

      const ChangReport r2 = chang_check(x, gamma, LogBase::two);
      const double want2 =
          8.0 / (gamma * gamma) *
          std::log2(static_cast<double>(ctx.order()) / static_cast<double>(x.size()));
      CHECK(r2.bound == doctest::Approx(want2).epsilon(1e-12));
    }
  }
}
