#include "adlab/fourier.hpp"

#include <cmath>
#include <numbers>

namespace adlab {

namespace {

std::vector<std::complex<double>> roots_of_unity(std::uint32_t p, int sign) {
  std::vector<std::complex<double>> w(p);
  for (std::uint32_t j = 0; j < p; ++j) {
    const double a = sign * 2.0 * std::numbers::pi * j / p;
    w[j] = {std::cos(a), std::sin(a)};
  }
  if (p == 2) w[1] = {-1.0, 0.0};
  return w;
}

// In-place multidimensional DFT: buf[u] <- sum_x buf[x] * omega^{sign <u,x>}.
void fast_dft(const GroupCtx& ctx, std::vector<std::complex<double>>& buf, int sign) {
  const std::uint32_t p = ctx.p(), n = ctx.n();
  const auto w = roots_of_unity(p, sign);
  std::vector<std::complex<double>> tmp(p);
  for (std::uint32_t k = 0; k < n; ++k) {
    const std::uint64_t stride = ctx.pow_p(k), block = stride * p;
    for (std::uint64_t base = 0; base < ctx.order(); base += block) {
      for (std::uint64_t off = 0; off < stride; ++off) {
        const std::uint64_t at = base + off;
        for (std::uint32_t j = 0; j < p; ++j) {
          // w index walks j*d mod p incrementally; avoids a multiply+mod per term
          std::complex<double> acc = 0;
          std::uint32_t idx = 0;
          for (std::uint32_t d = 0; d < p; ++d) {
            acc += buf[at + d * stride] * w[idx];
            idx += j;
            if (idx >= p) idx -= p;
          }
          tmp[j] = acc;
        }
        for (std::uint32_t j = 0; j < p; ++j) buf[at + j * stride] = tmp[j];
      }
    }
  }
}

std::complex<double> direct_coeff(const GroupCtx& ctx, const std::vector<double>& v,
                                  const std::vector<std::complex<double>>& w, std::uint64_t u) {
  std::complex<double> acc = 0;
  for (std::uint64_t x = 0; x < ctx.order(); ++x) acc += v[x] * w[ctx.dot(u, x)];
  return acc / static_cast<double>(ctx.order());
}

}  // namespace

DensityFn::DensityFn(const GroupCtx& ctx, std::vector<double> values)
    : ctx_(ctx), v_(std::move(values)) {
  if (v_.size() != ctx_.order()) throw std::invalid_argument("DensityFn: wrong table size");
}

double DensityFn::mean() const {
  double s = 0;
  for (double x : v_) s += x;
  return s / static_cast<double>(v_.size());
}

DensityFn density(const FpSet& A) {
  if (A.empty()) throw std::invalid_argument("density: empty set");
  std::vector<double> v(A.order(), 0.0);
  const double w = static_cast<double>(A.order()) / static_cast<double>(A.size());
  A.for_each([&](std::uint64_t x) { v[x] = w; });
  return DensityFn(A.ctx(), std::move(v));
}

DensityFn indicator(const FpSet& A) {
  std::vector<double> v(A.order(), 0.0);
  A.for_each([&](std::uint64_t x) { v[x] = 1.0; });
  return DensityFn(A.ctx(), std::move(v));
}

DensityFn convolve(const DensityFn& f, const DensityFn& g) {
  return kernels::convolve_direct_parallel(f, g);
}

DensityFn convolve_fast(const DensityFn& f, const DensityFn& g) {
  const GroupCtx& ctx = f.ctx();
  detail::require_same_group(ctx, g.ctx());
  std::vector<std::complex<double>> a(f.values().begin(), f.values().end());
  std::vector<std::complex<double>> b(g.values().begin(), g.values().end());
  fast_dft(ctx, a, +1);
  fast_dft(ctx, b, +1);
  const double norm = static_cast<double>(ctx.order());
  for (std::uint64_t u = 0; u < ctx.order(); ++u) a[u] *= b[u] / (norm * norm);
  fast_dft(ctx, a, -1);
  std::vector<double> out(ctx.order());
  for (std::uint64_t x = 0; x < ctx.order(); ++x) out[x] = a[x].real();
  return DensityFn(ctx, std::move(out));
}

double fn_inner(const DensityFn& f, const DensityFn& g) {
  detail::require_same_group(f.ctx(), g.ctx());
  double s = 0;
  for (std::uint64_t x = 0; x < f.ctx().order(); ++x) s += f[x] * g[x];
  return s / static_cast<double>(f.ctx().order());
}

SpectrumTable::SpectrumTable(const GroupCtx& ctx, std::vector<std::complex<double>> coeffs)
    : ctx_(ctx), c_(std::move(coeffs)) {
  if (c_.size() != ctx_.order()) throw std::invalid_argument("SpectrumTable: wrong table size");
}

SpectrumTable transform(const DensityFn& h) {
  const GroupCtx& ctx = h.ctx();
  std::vector<std::complex<double>> buf(h.values().begin(), h.values().end());
  fast_dft(ctx, buf, +1);
  const double norm = static_cast<double>(ctx.order());
  for (auto& c : buf) c /= norm;
  return SpectrumTable(ctx, std::move(buf));
}

SpectrumTable transform(const FpSet& X) { return transform(density(X)); }

DensityFn inverse_transform(const SpectrumTable& t) {
  std::vector<std::complex<double>> buf(t.coeffs());
  fast_dft(t.ctx(), buf, -1);
  std::vector<double> out(t.ctx().order());
  for (std::uint64_t x = 0; x < t.ctx().order(); ++x) out[x] = buf[x].real();
  return DensityFn(t.ctx(), std::move(out));
}

FpSet spectrum(const FpSet& X, double gamma) {
  if (gamma <= 0.0 || gamma > 1.0) throw std::invalid_argument("spectrum: gamma must be in (0,1]");
  const SpectrumTable t = transform(X);
  FpSet out(X.ctx());
  for (std::uint64_t u = 0; u < X.ctx().order(); ++u)
    if (std::abs(t[u]) >= gamma) out.insert(u);
  return out;
}

ChangReport chang_check(const FpSet& X, double gamma, LogBase base) {
  if (X.empty()) throw std::invalid_argument("chang_check: empty set");
  ChangReport r;
  r.gamma = gamma;
  r.base = base;
  const FpSet spec = spectrum(X, gamma);
  r.dim = span(spec).dim();
  const double ratio = static_cast<double>(X.order()) / static_cast<double>(X.size());
  const double lg = base == LogBase::natural ? std::log(ratio) : std::log2(ratio);
  r.bound = 8.0 / (gamma * gamma) * lg;
  r.slack = r.bound - r.dim;
  r.ok = static_cast<double>(r.dim) <= r.bound;
  return r;
}

namespace ref {

SpectrumTable transform_direct(const DensityFn& h) {
  const GroupCtx& ctx = h.ctx();
  const auto w = roots_of_unity(ctx.p(), +1);
  std::vector<std::complex<double>> out(ctx.order());
  for (std::uint64_t u = 0; u < ctx.order(); ++u) out[u] = direct_coeff(ctx, h.values(), w, u);
  return SpectrumTable(ctx, std::move(out));
}

DensityFn convolve_direct(const DensityFn& f, const DensityFn& g) {
  const GroupCtx& ctx = f.ctx();
  detail::require_same_group(ctx, g.ctx());
  std::vector<double> out(ctx.order());
  for (std::uint64_t x = 0; x < ctx.order(); ++x) {
    double s = 0;
    for (std::uint64_t y = 0; y < ctx.order(); ++y) s += f[y] * g[ctx.sub(x, y)];
    out[x] = s / static_cast<double>(ctx.order());
  }
  return DensityFn(ctx, std::move(out));
}

}  // namespace ref

namespace kernels {

SpectrumTable transform_direct_parallel(const DensityFn& h) {
  const GroupCtx& ctx = h.ctx();
  const auto w = roots_of_unity(ctx.p(), +1);
  std::vector<std::complex<double>> out(ctx.order());
  const std::int64_t order = static_cast<std::int64_t>(ctx.order());
#pragma omp parallel for schedule(static)
  for (std::int64_t u = 0; u < order; ++u)
    out[u] = direct_coeff(ctx, h.values(), w, static_cast<std::uint64_t>(u));
  return SpectrumTable(ctx, std::move(out));
}

DensityFn convolve_direct_parallel(const DensityFn& f, const DensityFn& g) {
  const GroupCtx& ctx = f.ctx();
  detail::require_same_group(ctx, g.ctx());
  std::vector<double> out(ctx.order());
  const std::int64_t order = static_cast<std::int64_t>(ctx.order());
#pragma omp parallel for schedule(static)
  for (std::int64_t x = 0; x < order; ++x) {
    double s = 0;
    for (std::uint64_t y = 0; y < ctx.order(); ++y)
      s += f[y] * g[ctx.sub(static_cast<std::uint64_t>(x), y)];
    out[x] = s / static_cast<double>(ctx.order());
  }
  return DensityFn(ctx, std::move(out));
}

}  // namespace kernels

}  // namespace adlab
