#include "sira/signal_model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>
#include <string>

#include "sira/errors.hpp"

namespace sira {

SparseSpec::SparseSpec(std::size_t n, std::vector<Tone> components) : n_(n), components_(std::move(components)) {
  if (components_.empty()) throw InvalidSpec("sparse spec needs at least one component");
  if (components_.size() >= n_) throw InvalidSpec("component count must be below the signal length");
  std::vector<bool> used(n_, false);
  for (const Tone& t : components_) {
    if (t.bin >= n_) throw InvalidSpec("frequency bin " + std::to_string(t.bin) + " outside [0, N-1]");
    if (used[t.bin]) throw InvalidSpec("duplicate frequency bin " + std::to_string(t.bin));
    used[t.bin] = true;
    if (!(t.amplitude > 0.0) || !std::isfinite(t.amplitude)) {
      throw InvalidSpec("amplitudes must be finite and strictly positive");
    }
  }
}

std::vector<std::size_t> SparseSpec::support() const {
  std::vector<std::size_t> bins;
  bins.reserve(components_.size());
  for (const Tone& t : components_) bins.push_back(t.bin);
  std::sort(bins.begin(), bins.end());
  return bins;
}

SamplingPattern::SamplingPattern(std::size_t n, std::vector<std::size_t> positions)
    : n_(n), positions_(std::move(positions)) {
  if (positions_.empty() || positions_.size() > n_) {
    throw InvalidArgument("available sample count must be in [1, N]");
  }
  std::vector<bool> used(n_, false);
  for (std::size_t p : positions_) {
    if (p >= n_) throw InvalidArgument("sample position " + std::to_string(p) + " outside [0, N-1]");
    if (used[p]) throw InvalidArgument("duplicate sample position " + std::to_string(p));
    used[p] = true;
  }
}

SamplingPattern SamplingPattern::full(std::size_t n) {
  std::vector<std::size_t> all(n);
  std::iota(all.begin(), all.end(), std::size_t{0});
  return SamplingPattern(n, std::move(all));
}

Complex unit_root(std::uint64_t m, std::size_t n) {
  if (n == 0) throw InvalidArgument("unit_root: n must be positive");
  m %= n;
  if ((4 * m) % n == 0) {
    switch ((4 * m) / n) {
      case 0: return {1.0, 0.0};
      case 1: return {0.0, 1.0};
      case 2: return {-1.0, 0.0};
      default: return {0.0, -1.0};
    }
  }
  // Evaluate on the shorter arc to keep the angle small.
  const double angle = 2.0 * std::numbers::pi * static_cast<double>(m) / static_cast<double>(n);
  if (2 * m > n) {
    const double back = 2.0 * std::numbers::pi * static_cast<double>(n - m) / static_cast<double>(n);
    return {std::cos(back), -std::sin(back)};
  }
  return {std::cos(angle), std::sin(angle)};
}

ComplexVector unit_root_table(std::size_t n) {
  ComplexVector table(n);
  for (std::size_t m = 0; m < n; ++m) table[m] = unit_root(m, n);
  return table;
}

TimeSignal synthesize(const SparseSpec& spec) {
  const std::size_t n = spec.n();
  const ComplexVector roots = unit_root_table(n);
  TimeSignal x{ComplexVector(n)};
  for (std::size_t t = 0; t < n; ++t) {
    Complex acc{0.0, 0.0};
    for (const Tone& tone : spec.components()) {
      acc += tone.amplitude * roots[(tone.bin * t) % n];
    }
    x.samples[t] = acc;
  }
  return x;
}

SamplingPattern random_pattern(std::size_t n, std::size_t n_a, std::uint64_t seed) {
  if (n_a < 1 || n_a > n) throw InvalidArgument("random_pattern: need 1 <= n_a <= n");
  std::mt19937_64 rng(seed);
  std::vector<std::size_t> pool(n);
  std::iota(pool.begin(), pool.end(), std::size_t{0});
  for (std::size_t i = 0; i < n_a; ++i) {
    std::uniform_int_distribution<std::size_t> pick(i, n - 1);
    std::swap(pool[i], pool[pick(rng)]);
  }
  pool.resize(n_a);
  return SamplingPattern(n, std::move(pool));
}

Measurement sample(const TimeSignal& x, const SamplingPattern& pattern) {
  if (x.size() != pattern.n()) throw InvalidArgument("sample: pattern length does not match signal length");
  ComplexVector values;
  values.reserve(pattern.n_available());
  for (std::size_t p : pattern.positions()) values.push_back(x.samples[p]);
  return Measurement{std::move(values), pattern};
}

double sum_sq_amplitudes(const SparseSpec& spec) {
  double s = 0.0;
  for (const Tone& t : spec.components()) s += t.amplitude * t.amplitude;
  return s;
}

double estimate_sum_sq_amplitudes(const Measurement& meas) {
  if (meas.values.empty()) throw InvalidArgument("estimate_sum_sq_amplitudes: empty measurement");
  double s = 0.0;
  for (const Complex& v : meas.values) s += std::norm(v);
  return s / static_cast<double>(meas.values.size());
}

SparseSpec random_spec(std::size_t n, std::size_t k, double lo, double hi, std::uint64_t seed) {
  if (!(lo > 0.0) || !(hi >= lo)) throw InvalidArgument("random_spec: need 0 < lo <= hi");
  if (k < 1 || k >= n) throw InvalidSpec("random_spec: need 1 <= K < N");
  const SamplingPattern bins = random_pattern(n, k, derive_seed(seed, 0));
  std::mt19937_64 rng(derive_seed(seed, 1));
  std::uniform_real_distribution<double> amp(lo, hi);
  std::vector<Tone> tones;
  tones.reserve(k);
  for (std::size_t bin : bins.positions()) tones.push_back({lo == hi ? lo : amp(rng), bin});
  return SparseSpec(n, std::move(tones));
}

namespace {

std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  return splitmix64(splitmix64(master) ^ (index * 0xd1342543de82ef95ULL + 1));
}

}  // namespace sira
