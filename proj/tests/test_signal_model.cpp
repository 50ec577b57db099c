#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <set>

#include "oracles.hpp"
#include "sira/errors.hpp"
#include "sira/signal_model.hpp"

using namespace sira;

TEST_CASE("synthesize: DC tone is constant") {
  const TimeSignal x = synthesize(SparseSpec(8, {{1.0, 0}}));
  REQUIRE(x.size() == 8);
  for (const Complex& c : x.samples) CHECK(c == Complex(1.0, 0.0));
}

TEST_CASE("synthesize: quarter-turn rotation is exact") {
  const TimeSignal x = synthesize(SparseSpec(4, {{2.0, 1}}));
  const ComplexVector expected{{2, 0}, {0, 2}, {-2, 0}, {0, -2}};
  CHECK(x.samples == expected);
}

TEST_CASE("synthesize: matches long-double tone sum") {
  const SparseSpec spec = random_spec(256, 14, 0.5, 2.0, 11);
  const TimeSignal x = synthesize(spec);
  const ComplexVector ref = oracle::brute_force_tones(256, spec.components());
  CHECK(oracle::max_abs_diff(x.samples, ref) < 1e-12);
  CHECK(spec.k() == 14);
}

TEST_CASE("SparseSpec rejects invalid component lists") {
  CHECK_THROWS_AS(SparseSpec(8, {{1.0, 2}, {3.0, 2}}), InvalidSpec);
  CHECK_THROWS_AS(SparseSpec(8, {}), InvalidSpec);
  CHECK_THROWS_AS(SparseSpec(2, {{1.0, 0}, {1.0, 1}}), InvalidSpec);
  CHECK_THROWS_AS(SparseSpec(8, {{0.0, 1}}), InvalidSpec);
  CHECK_THROWS_AS(SparseSpec(8, {{-1.0, 1}}), InvalidSpec);
  CHECK_THROWS_AS(SparseSpec(8, {{1.0, 8}}), InvalidSpec);
}

TEST_CASE("unit_root agrees with polar form") {
  for (std::size_t n : {3u, 4u, 7u, 64u, 250u}) {
    for (std::uint64_t m = 0; m < 3 * n; ++m) {
      const long double angle = 2.0L * std::numbers::pi_v<long double> * static_cast<long double>(m % n) / n;
      const Complex ref(static_cast<double>(std::cos(angle)), static_cast<double>(std::sin(angle)));
      CHECK(std::abs(unit_root(m, n) - ref) < 1e-15);
    }
  }
  CHECK(unit_root(1, 4) == Complex(0.0, 1.0));
  CHECK(unit_root(6, 8) == Complex(0.0, -1.0));
}

TEST_CASE("random_pattern: full coverage is a permutation") {
  for (std::uint64_t seed : {0ull, 1ull, 99ull}) {
    const SamplingPattern p = random_pattern(4, 4, seed);
    std::vector<std::size_t> sorted(p.positions().begin(), p.positions().end());
    std::sort(sorted.begin(), sorted.end());
    CHECK(sorted == std::vector<std::size_t>{0, 1, 2, 3});
    CHECK(p.n_missing() == 0);
  }
}

TEST_CASE("random_pattern: deterministic per seed") {
  const SamplingPattern a = random_pattern(8, 4, 42);
  const SamplingPattern b = random_pattern(8, 4, 42);
  CHECK(std::ranges::equal(a.positions(), b.positions()));
  CHECK(a.n_available() == 4);
  CHECK(a.n_missing() == 4);
  const SamplingPattern c = random_pattern(256, 128, 43);
  const SamplingPattern d = random_pattern(256, 128, 42);
  CHECK_FALSE(std::ranges::equal(c.positions(), d.positions()));
}

TEST_CASE("random_pattern: argument errors") {
  CHECK_THROWS_AS(random_pattern(4, 5, 1), InvalidArgument);
  CHECK_THROWS_AS(random_pattern(4, 0, 1), InvalidArgument);
  CHECK_THROWS_AS(SamplingPattern(4, {0, 0}), InvalidArgument);
  CHECK_THROWS_AS(SamplingPattern(4, {4}), InvalidArgument);
}

TEST_CASE("random_pattern: uniform inclusion over 10,000 seeds") {
  constexpr std::size_t n = 256;
  constexpr std::size_t n_a = 128;
  constexpr int trials = 10000;
  std::vector<int> counts(n, 0);
  for (int s = 0; s < trials; ++s) {
    const SamplingPattern p = random_pattern(n, n_a, derive_seed(2024, s));
    std::set<std::size_t> seen(p.positions().begin(), p.positions().end());
    REQUIRE(seen.size() == n_a);
    for (std::size_t pos : p.positions()) ++counts[pos];
  }
  const double q = static_cast<double>(n_a) / n;
  double chi2 = 0.0;
  for (int c : counts) {
    const double freq = static_cast<double>(c) / trials;
    CHECK(std::abs(freq - 0.5) <= 0.02);
    const double expected = trials * q;
    chi2 += (c - expected) * (c - expected) / (expected * (1.0 - q));
  }
  // Inclusion counts sum to trials * n_a, which removes one degree of freedom.
  CHECK(oracle::chi_square_p_value(chi2, n - 1) > 0.001);
}

TEST_CASE("sample selects by position") {
  const TimeSignal x{{{2, 0}, {0, 2}, {-2, 0}, {0, -2}}};
  const Measurement m = sample(x, SamplingPattern(4, {0, 2}));
  CHECK(m.values == ComplexVector{{2, 0}, {-2, 0}});

  const Measurement all = sample(x, SamplingPattern::full(4));
  CHECK(all.values == x.samples);

  CHECK_THROWS_AS(sample(x, SamplingPattern::full(5)), InvalidArgument);
}

TEST_CASE("sample: values match source at every position") {
  const TimeSignal x = synthesize(random_spec(128, 5, 0.1, 3.0, 5));
  const Measurement m = sample(x, random_pattern(128, 40, 77));
  for (std::size_t a = 0; a < m.values.size(); ++a) CHECK(m.values[a] == x.samples[m.pattern.positions()[a]]);
}

TEST_CASE("sum_sq_amplitudes") {
  CHECK(sum_sq_amplitudes(SparseSpec(8, {{1.0, 3}})) == 1.0);
  CHECK(sum_sq_amplitudes(SparseSpec(8, {{1.0, 0}, {2.0, 1}, {3.0, 2}})) == 14.0);
}

TEST_CASE("estimate mode tracks the true amplitude energy") {
  const SparseSpec spec(256, {{1.0, 10}, {2.0, 77}, {0.5, 140}});
  const TimeSignal x = synthesize(spec);
  double mean = 0.0;
  constexpr int patterns = 500;
  for (int s = 0; s < patterns; ++s) mean += estimate_sum_sq_amplitudes(sample(x, random_pattern(256, 128, s)));
  mean /= patterns;
  CHECK(std::abs(mean - sum_sq_amplitudes(spec)) < 0.1 * sum_sq_amplitudes(spec));
}

TEST_CASE("synthesize is linear in amplitudes") {
  const SparseSpec spec = random_spec(100, 6, 0.2, 4.0, 3);
  std::vector<Tone> doubled(spec.components().begin(), spec.components().end());
  for (Tone& t : doubled) t.amplitude *= 2.0;
  const TimeSignal x = synthesize(spec);
  const TimeSignal y = synthesize(SparseSpec(100, doubled));
  for (std::size_t t = 0; t < x.size(); ++t) CHECK(std::abs(y.samples[t] - 2.0 * x.samples[t]) < 1e-12);
}

TEST_CASE("Parseval at full sampling") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const SparseSpec spec = random_spec(64 + seed, 1 + seed % 7, 0.3, 5.0, seed);
    const TimeSignal x = synthesize(spec);
    double energy = 0.0;
    for (const Complex& c : x.samples) energy += std::norm(c);
    energy /= static_cast<double>(x.size());
    CHECK(energy == doctest::Approx(sum_sq_amplitudes(spec)).epsilon(1e-9));
  }
}

TEST_CASE("random_spec draws distinct bins and bounded amplitudes") {
  const SparseSpec spec = random_spec(64, 10, 1.0, 2.0, 8);
  const auto support = spec.support();
  CHECK(std::adjacent_find(support.begin(), support.end()) == support.end());
  for (const Tone& t : spec.components()) {
    CHECK(t.amplitude >= 1.0);
    CHECK(t.amplitude <= 2.0);
  }
  CHECK_THROWS_AS(random_spec(64, 3, 0.0, 1.0, 1), InvalidArgument);
  CHECK_THROWS_AS(random_spec(4, 4, 1.0, 1.0, 1), InvalidSpec);
}

TEST_CASE("derive_seed spreads neighbouring indices") {
  std::set<std::uint64_t> seeds;
  for (std::uint64_t i = 0; i < 1000; ++i) seeds.insert(derive_seed(7, i));
  CHECK(seeds.size() == 1000);
  CHECK(derive_seed(7, 3) == derive_seed(7, 3));
  CHECK(derive_seed(7, 3) != derive_seed(8, 3));
}
