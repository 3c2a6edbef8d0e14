#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "adlab/fpset.hpp"
#include "adlab/group.hpp"
#include "adlab/subspace.hpp"

namespace adlab {

/** Real-valued function on F_p^n indexed by element; densities average to 1. */
class DensityFn {
 public:
  DensityFn(const GroupCtx& ctx, std::vector<double> values);

  const GroupCtx& ctx() const { return ctx_; }
  const std::vector<double>& values() const { return v_; }
  double operator[](std::uint64_t x) const { return v_[x]; }
  double& operator[](std::uint64_t x) { return v_[x]; }
  double mean() const;

 private:
  GroupCtx ctx_;
  std::vector<double> v_;
};

/// rho_A = (p^n / |A|) * 1_A, the measure-normalized indicator.
DensityFn density(const FpSet& A);
/// Plain 0/1 indicator.
DensityFn indicator(const FpSet& A);

/**
 * Convolution f*g(x) = E_y f(y) g(x-y).  Note rho_x * f(a) = f(a - x); the
 * mirrored form f(x - a) agrees only for symmetric f.
 */
DensityFn convolve(const DensityFn& f, const DensityFn& g);
/// Transform-multiply-invert route; agrees with convolve to 1e-12.
DensityFn convolve_fast(const DensityFn& f, const DensityFn& g);

/// <f,g> = E_x f(x) g(x).
double fn_inner(const DensityFn& f, const DensityFn& g);

/** Fourier coefficients indexed by frequency (same element codec). */
class SpectrumTable {
 public:
  SpectrumTable(const GroupCtx& ctx, std::vector<std::complex<double>> coeffs);

  const GroupCtx& ctx() const { return ctx_; }
  const std::vector<std::complex<double>>& coeffs() const { return c_; }
  std::complex<double> operator[](std::uint64_t u) const { return c_[u]; }

 private:
  GroupCtx ctx_;
  std::vector<std::complex<double>> c_;
};

/**
 * h^(u) = E_x h(x) omega^{<u,x>} with omega = exp(2*pi*i/p), group-mean
 * normalization.  Uses the dimension-recursive fast path; the direct
 * quadratic evaluations live in ref:: / kernels:: and agree to 1e-12.
 */
SpectrumTable transform(const DensityFn& h);
/// Set transform X^(u) = E_{x in X} omega^{<u,x>}, i.e. transform(density(X)).
SpectrumTable transform(const FpSet& X);

/// h(x) = sum_u h^(u) omega^{-<u,x>} (real part).
DensityFn inverse_transform(const SpectrumTable& t);

/// Spec_gamma(X) = { u : |X^(u)| >= gamma }; always contains 0.
FpSet spectrum(const FpSet& X, double gamma);

enum class LogBase { natural, two };

struct ChangReport {
  double gamma = 0;
  std::uint32_t dim = 0;   // dim span(Spec_gamma(X))
  double bound = 0;        // 8 * gamma^-2 * log(p^n / |X|)
  double slack = 0;        // bound - dim
  LogBase base = LogBase::natural;
  bool ok = false;         // dim <= bound
};

/// Dimension bound for the large spectrum; log base configurable, natural by default.
ChangReport chang_check(const FpSet& X, double gamma, LogBase base = LogBase::natural);

namespace ref {
/// Serial direct quadratic transform; the reference all fast paths must match.
SpectrumTable transform_direct(const DensityFn& h);
/// Serial direct convolution.
DensityFn convolve_direct(const DensityFn& f, const DensityFn& g);
}  // namespace ref

namespace kernels {
/// OpenMP twin of ref::transform_direct (bitwise-identical coefficients).
SpectrumTable transform_direct_parallel(const DensityFn& h);
/// OpenMP twin of ref::convolve_direct.
DensityFn convolve_direct_parallel(const DensityFn& f, const DensityFn& g);
}  // namespace kernels

}  // namespace adlab
