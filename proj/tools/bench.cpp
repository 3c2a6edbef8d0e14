// Benchmark: serial reference kernels vs their OpenMP twins vs the fast
// dimension-recursive transform.  Prints one row per kernel with the exact
// agreement between implementations (the test suite asserts it; this shows it).

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <vector>

#include "adlab/bogolyubov.hpp"
#include "adlab/fourier.hpp"
#include "adlab/gen.hpp"
#include "adlab/lintest.hpp"
#include "adlab/nmc.hpp"
#include "adlab/rng.hpp"

namespace {

template <typename F>
double bench_ms(F&& f, int reps = 3) {
  double best = 1e300;
  for (int i = 0; i < reps; ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    const auto t1 = std::chrono::steady_clock::now();
    best = std::min(best,
                    std::chrono::duration<double, std::milli>(t1 - t0).count());
  }
  return best;
}

void row(const char* name, double serial_ms, double par_ms, const char* agreement) {
  std::printf("%-36s %10.3f %10.3f %7.2fx   %s\n", name, serial_ms, par_ms,
              serial_ms / par_ms, agreement);
}

double max_coeff_diff(const adlab::SpectrumTable& a, const adlab::SpectrumTable& b) {
  double m = 0;
  for (std::size_t i = 0; i < a.coeffs().size(); ++i) {
    m = std::max(m, std::abs(a.coeffs()[i] - b.coeffs()[i]));
  }
  return m;
}

double max_value_diff(const adlab::DensityFn& a, const adlab::DensityFn& b) {
  double m = 0;
  for (std::size_t i = 0; i < a.values().size(); ++i) {
    m = std::max(m, std::abs(a.values()[i] - b.values()[i]));
  }
  return m;
}

}  // namespace

int main() {
  using namespace adlab;
  std::printf("%-36s %10s %10s %8s   %s\n", "kernel", "serial ms", "openmp ms", "speedup",
              "agreement");

  for (const auto& [p, n] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{{2, 10},
                                                                                 {3, 6}}) {
    const GroupCtx ctx(p, n);
    SplitMix64 rng(42, p);
    std::vector<double> vals(ctx.order());
    for (double& v : vals) v = rng.unit();
    const DensityFn h(ctx, vals);

    SpectrumTable ser = ref::transform_direct(h);
    SpectrumTable par = ser, fast = ser;
    const double t_ser = bench_ms([&] { ser = ref::transform_direct(h); });
    const double t_par = bench_ms([&] { par = kernels::transform_direct_parallel(h); });
    const double t_fast = bench_ms([&] { fast = transform(h); });
    char label[64], agree[64];
    std::snprintf(label, sizeof label, "dft direct p=%u n=%u", p, n);
    std::snprintf(agree, sizeof agree, "serial==openmp: %s",
                  max_coeff_diff(ser, par) == 0.0 ? "bitwise" : "DIFFER");
    row(label, t_ser, t_par, agree);
    std::snprintf(label, sizeof label, "dft fast p=%u n=%u", p, n);
    std::snprintf(agree, sizeof agree, "fast vs direct max|d|=%.2e",
                  max_coeff_diff(ser, fast));
    row(label, t_ser, t_fast, agree);
  }

  {
    const GroupCtx ctx(2, 9);
    SplitMix64 rng(7, 0);
    std::vector<double> va(ctx.order()), vb(ctx.order());
    for (double& v : va) v = rng.unit();
    for (double& v : vb) v = rng.unit();
    const DensityFn f(ctx, va), g(ctx, vb);
    DensityFn ser = ref::convolve_direct(f, g);
    DensityFn par = ser, fast = ser;
    const double t_ser = bench_ms([&] { ser = ref::convolve_direct(f, g); });
    const double t_par = bench_ms([&] { par = kernels::convolve_direct_parallel(f, g); });
    const double t_fast = bench_ms([&] { fast = convolve_fast(f, g); });
    char agree[64];
    std::snprintf(agree, sizeof agree, "serial==openmp: %s",
                  max_value_diff(ser, par) == 0.0 ? "bitwise" : "DIFFER");
    row("convolution direct p=2 n=9", t_ser, t_par, agree);
    std::snprintf(agree, sizeof agree, "fast vs direct max|d|=%.2e",
                  max_value_diff(ser, fast));
    row("convolution fast p=2 n=9", t_ser, t_fast, agree);
  }

  {
    const GroupCtx ctx(2, 10);
    SplitMix64 rng(11, 0);
    const FpSet a = random_set(ctx, rng, 0.4);
    auto ser = ref::shift_pair_counts(a);
    auto par = ser;
    const double t_ser = bench_ms([&] { ser = ref::shift_pair_counts(a); });
    const double t_par = bench_ms([&] { par = kernels::shift_pair_counts_parallel(a); });
    row("shift-pair census p=2 n=10", t_ser, t_par,
        ser == par ? "serial==openmp: exact" : "serial==openmp: DIFFER");
  }

  {
    const GroupCtx ctx(2, 10);
    SplitMix64 rng(13, 0);
    const TamperPair tp = tamper_random(ctx, rng);
    auto ser = ref::joint_census(tp);
    auto par = ser;
    const double t_ser = bench_ms([&] { ser = ref::joint_census(tp); });
    const double t_par = bench_ms([&] { par = kernels::joint_census_parallel(tp); });
    row("tampering joint census p=2 n=10", t_ser, t_par,
        ser == par ? "serial==openmp: exact" : "serial==openmp: DIFFER");
  }

  {
    const GroupCtx ctx(2, 10);
    SplitMix64 rng(17, 0);
    const FnTable f = random_fn(ctx, rng);
    std::uint64_t ser = ref::linearity_census(f);
    std::uint64_t par = ser;
    const double t_ser = bench_ms([&] { ser = ref::linearity_census(f); });
    const double t_par = bench_ms([&] { par = kernels::linearity_census_parallel(f); });
    row("linearity pair census p=2 n=10", t_ser, t_par,
        ser == par ? "serial==openmp: exact" : "serial==openmp: DIFFER");
  }

  return 0;
}
