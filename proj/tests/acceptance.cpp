// Acceptance suite: one line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "sira/harness.hpp"
#include "sira/hw_datapath.hpp"
#include "sira/hw_primitives.hpp"
#include "sira/recon_core.hpp"

using namespace sira;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double rel_mse(std::span<const Complex> got, std::span<const Complex> truth) {
  double err = 0.0;
  double ref = 0.0;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    err += std::norm(got[i] - truth[i]);
    ref += std::norm(truth[i]);
  }
  return err / ref;
}

// 1. N=256, K=3, A=1, N_a=128, P=0.99, ref10, oracle amplitudes.
Outcome exact_recovery() {
  constexpr int trials = 200;
  const auto start = std::chrono::steady_clock::now();
  std::vector<int> ok(trials, 0);
  harness::parallel_for(trials, 0, [&](std::size_t i) {
    const std::uint64_t seed = derive_seed(1, i);
    const SparseSpec spec = random_spec(256, 3, 1.0, 1.0, seed);
    const TimeSignal x = synthesize(spec);
    const ReconstructionResult r =
        reconstruct(sample(x, random_pattern(256, 128, derive_seed(seed, 7))), ThresholdConfig{0.99},
                    sum_sq_amplitudes(spec));
    ok[i] = r.detection.positions == spec.support() && rel_mse(r.time_signal, x.samples) <= 1e-12;
  });
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  int passed = 0;
  for (int v : ok) passed += v;
  return {passed >= 190 && secs < 60.0, fmt("%d/%d trials exact (need >= 95%%), %.2f s", passed, trials, secs)};
}

// 2. Empirical variance of non-signal bins vs the missing-sample model.
Outcome variance_model() {
  const harness::CalibrationSummary s =
      harness::run_calibration(SparseSpec(128, {{1.0, 17}}), 64, ThresholdConfig{0.9}, 2000, 2);
  const double rel = std::abs(s.empirical_variance / s.model_variance - 1.0);
  return {rel <= 0.1, fmt("empirical %.6f vs model %.6f (rel err %.2e, tol 0.1)", s.empirical_variance,
                          s.model_variance, rel)};
}

// 3. Fraction of trials with every noise bin strictly below T.
Outcome threshold_calibration() {
  const harness::CalibrationSummary s =
      harness::run_calibration(SparseSpec(128, {{1.0, 17}}), 64, ThresholdConfig{0.9}, 2000, 3);
  return {s.p_hat >= 0.83 && s.p_hat <= 0.97, fmt("P-hat %.4f at P=0.9 (need [0.83, 0.97])", s.p_hat)};
}

// 4. Printed threshold formula, verbatim, on a 60-point grid.
Outcome printed_threshold() {
  double worst = 0.0;
  int points = 0;
  for (double var : {1e-3, 0.5, 64.25098039215686, 1e4, 1e9}) {
    for (double p : {0.5, 0.9, 0.99, 0.999}) {
      for (std::size_t n : {64u, 256u, 1024u}) {
        const double got = threshold(var, n, ThresholdConfig{p, ThresholdVariant::paper});
        const long double ref = oracle::threshold_printed(var, p, static_cast<long double>(n));
        worst = std::max(worst, static_cast<double>(std::abs((got - ref) / ref)));
        ++points;
      }
    }
  }
  return {points == 60 && worst <= 1e-12, fmt("%d points, max rel err %.2e (tol 1e-12)", points, worst)};
}

// 5. Non-restoring square root vs integer Newton.
Outcome nr_sqrt_exact() {
  std::size_t checked = 0;
  std::size_t bad = 0;
  auto check = [&](std::uint32_t b) {
    const hw::SqrtResult s = hw::nr_sqrt(b);
    const std::uint64_t root = oracle::isqrt_newton(b);
    bad += (s.root != root || s.remainder != b - root * root) ? 1 : 0;
    ++checked;
  };
  for (std::uint32_t b = 0; b <= (1u << 20); ++b) check(b);
  std::mt19937 rng(5);
  for (int i = 0; i < 1000000; ++i) check(static_cast<std::uint32_t>(rng()));
  check(1u << 31);
  check(0xffffffffu);
  for (std::uint32_t r = 65280; r <= 65535; ++r) {
    check(r * r);
    check(r * r - 1);
    if (r < 65535) check(r * r + 1);
  }
  const hw::SqrtResult top = hw::nr_sqrt(0xffffffffu);
  const bool top_ok = top.root == 65535 && top.remainder == 131070;
  return {bad == 0 && top_ok,
          fmt("%zu inputs, %zu mismatches; 2^32-1 -> (%u, %u)", checked, bad, unsigned{top.root}, top.remainder)};
}

// 6. LUT logarithm accuracy.
Outcome lut_logarithm() {
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> u(-8.0, 8.0);
  double worst = 0.0;
  for (int i = 0; i < 100000; ++i) {
    const double x = std::pow(10.0, u(rng));
    worst = std::max(worst, std::abs(hw::lut_log10(x) - static_cast<double>(std::log10(static_cast<long double>(x)))));
  }
  bool exact = true;
  for (int e = -30; e <= 30; ++e) exact = exact && hw::lut_log2(std::ldexp(1.0, e)).raw == e * hw::kLogScale;
  return {worst <= 5e-4 && exact, fmt("max |log10 err| %.3e (tol 5e-4); powers of two exact: %s", worst,
                                      exact ? "yes" : "no")};
}

// 7. Fixed-point threshold and comparator vs the reference path.
Outcome fixed_vs_reference() {
  const auto paper = harness::run_threshold_grid(ThresholdVariant::paper);
  const auto ref10 = harness::run_threshold_grid(ThresholdVariant::ref10);
  const double worst = std::max(paper.max_rel_error, ref10.max_rel_error);
  const auto sweep = harness::run_xcheck(random_spec(256, 3, 1.0, 1.0, 7), 128, ThresholdConfig{0.99}, 500, 7);
  return {worst <= 1e-3 && sweep.agreement_rate >= 0.99 && sweep.max_rel_error <= 1e-3,
          fmt("grid max rel err %.2e (tol 1e-3); support agreement %.3f over 500 trials (need >= 0.99)", worst,
              sweep.agreement_rate)};
}

// 8. Initial DFT vs direct summation; full-sampling round trip.
Outcome initial_dft_oracle() {
  std::mt19937_64 rng(8);
  std::uniform_int_distribution<std::size_t> len(2, 512);
  std::normal_distribution<double> g;
  double worst_dft = 0.0;
  double worst_trip = 0.0;
  for (int i = 0; i < 100; ++i) {
    const std::size_t n = len(rng);
    const std::size_t n_a = std::uniform_int_distribution<std::size_t>(1, n)(rng);
    const SamplingPattern p = random_pattern(n, n_a, rng());
    ComplexVector values(n_a);
    for (Complex& c : values) c = {g(rng), g(rng)};
    const Spectrum v = initial_dft(Measurement{values, p});
    const ComplexVector ref = oracle::brute_force_dft(values, p.positions(), n);
    worst_dft = std::max(worst_dft, oracle::max_abs_diff(v.bins, ref) / oracle::max_abs(ref));

    ComplexVector x(n);
    for (Complex& c : x) c = {g(rng), g(rng)};
    const ComplexVector back = idft(initial_dft(Measurement{x, SamplingPattern::full(n)}));
    worst_trip = std::max(worst_trip, oracle::max_abs_diff(back, x) / oracle::max_abs(x));
  }
  return {worst_dft <= 1e-9 && worst_trip <= 1e-9,
          fmt("max rel err vs direct sum %.2e, round trip %.2e (tol 1e-9)", worst_dft, worst_trip)};
}

// 9. Least-squares optimality and consistent-system recovery.
Outcome least_squares() {
  std::mt19937_64 rng(9);
  std::normal_distribution<double> g;
  double worst_normal = 0.0;
  double worst_recovery = 0.0;
  for (int i = 0; i < 100; ++i) {
    const std::size_t n = std::uniform_int_distribution<std::size_t>(16, 512)(rng);
    const std::size_t n_a = std::uniform_int_distribution<std::size_t>(8, n)(rng);
    const std::size_t k = std::uniform_int_distribution<std::size_t>(1, 8)(rng);
    const SamplingPattern p = random_pattern(n, n_a, rng());

    // Arbitrary data: residual must be orthogonal to the column space.
    const SparseSpec cols = random_spec(n, k, 1.0, 1.0, rng());
    const auto pos = cols.support();
    const CsMatrix a_cs = build_cs_matrix(n, p, pos);
    ComplexVector v(n_a);
    for (Complex& c : v) c = {g(rng), g(rng)};
    const ComplexVector x_tp = ls_solve(a_cs, v);
    ComplexVector r = multiply(a_cs, x_tp);
    for (std::size_t m = 0; m < r.size(); ++m) r[m] -= v[m];
    worst_normal = std::max(worst_normal, oracle::max_abs(multiply(hermitian(a_cs), r)) / oracle::max_abs(v));

    // Consistent data on the true support.
    const SparseSpec spec = random_spec(n, k, 0.2, 5.0, rng());
    const Measurement meas = sample(synthesize(spec), p);
    const auto support = spec.support();
    const ComplexVector amps = ls_solve(build_cs_matrix(n, p, support), meas.values);
    for (const Tone& t : spec.components()) {
      const auto idx = static_cast<std::size_t>(std::find(support.begin(), support.end(), t.bin) - support.begin());
      const double expected = static_cast<double>(n) * t.amplitude;
      worst_recovery = std::max(worst_recovery, std::abs(amps[idx] - expected) / expected);
    }
  }
  return {worst_normal <= 1e-9 && worst_recovery <= 1e-9,
          fmt("max |A^H r| / |v| %.2e, max amplitude rel err %.2e (tol 1e-9)", worst_normal, worst_recovery)};
}

// 10. 14-component illustration: every tone above threshold, exact recovery.
Outcome fourteen_components() {
  constexpr std::size_t n = 256;
  constexpr std::size_t n_a = 192;
  const SparseSpec spec = random_spec(n, 14, 1.0, 1.5, 1);
  const TimeSignal x = synthesize(spec);
  const ReconstructionResult r =
      reconstruct(sample(x, random_pattern(n, n_a, 1)), ThresholdConfig{0.99}, sum_sq_amplitudes(spec));
  double a_min = 1e300;
  for (const Tone& t : spec.components()) a_min = std::min(a_min, t.amplitude);
  const double sigma = std::sqrt(r.detection.variance);
  const double peak = static_cast<double>(n_a) * a_min;
  const double err = rel_mse(r.time_signal, x.samples);
  return {peak >= 3.0 * sigma && r.detection.positions == spec.support() && err <= 1e-12,
          fmt("weakest peak %.1f = %.2f sigma, threshold %.1f, %zu/14 detected, rel mse %.1e", peak, peak / sigma,
              r.detection.threshold, r.detection.positions.size(), err)};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"AC1  exact recovery (N=256, K=3, N_a=128)", exact_recovery},
      {"AC2  missing-sample variance model", variance_model},
      {"AC3  threshold calibration (P=0.9)", threshold_calibration},
      {"AC4  printed threshold formula", printed_threshold},
      {"AC5  non-restoring square root", nr_sqrt_exact},
      {"AC6  LUT logarithm", lut_logarithm},
      {"AC7  fixed-point vs reference threshold", fixed_vs_reference},
      {"AC8  initial DFT oracle", initial_dft_oracle},
      {"AC9  least-squares optimality", least_squares},
      {"AC10 14-component detection", fourteen_components},
  };
  int failures = 0;
  for (const auto& [name, run] : criteria) {
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += o.pass ? 0 : 1;
    std::printf("[%s] %s: %s\n", o.pass ? "PASS" : "FAIL", name, o.detail.c_str());
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
