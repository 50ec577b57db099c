#pragma once

// Sparse multitone signals and random sample selection.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace sira {

using Complex = std::complex<double>;
using ComplexVector = std::vector<Complex>;

struct Tone {
  double amplitude = 0.0;
  std::size_t bin = 0;
};

// K tones with distinct on-grid bins in a length-N signal. Validated on
// construction; throws InvalidSpec.
class SparseSpec {
 public:
  SparseSpec(std::size_t n, std::vector<Tone> components);

  std::size_t n() const { return n_; }
  std::size_t k() const { return components_.size(); }
  std::span<const Tone> components() const { return components_; }
  std::vector<std::size_t> support() const;  // sorted ascending

 private:
  std::size_t n_;
  std::vector<Tone> components_;
};

struct TimeSignal {
  ComplexVector samples;

  std::size_t size() const { return samples.size(); }
};

// Ordered available-sample positions P_v. n_missing() is N - N_a.
class SamplingPattern {
 public:
  SamplingPattern(std::size_t n, std::vector<std::size_t> positions);

  // Every position 0..n-1 in natural order.
  static SamplingPattern full(std::size_t n);

  std::size_t n() const { return n_; }
  std::span<const std::size_t> positions() const { return positions_; }
  std::size_t n_available() const { return positions_.size(); }
  std::size_t n_missing() const { return n_ - positions_.size(); }

 private:
  std::size_t n_;
  std::vector<std::size_t> positions_;
};

struct Measurement {
  ComplexVector values;
  SamplingPattern pattern;
};

// exp(+j*2*pi*m/n), with m reduced modulo n. Quarter turns are exact.
Complex unit_root(std::uint64_t m, std::size_t n);

// Table of unit_root(m, n) for m = 0..n-1.
ComplexVector unit_root_table(std::size_t n);

TimeSignal synthesize(const SparseSpec& spec);

// n_a distinct positions drawn uniformly without replacement (partial
// Fisher-Yates), reported in draw order.
SamplingPattern random_pattern(std::size_t n, std::size_t n_a, std::uint64_t seed);

Measurement sample(const TimeSignal& x, const SamplingPattern& pattern);

double sum_sq_amplitudes(const SparseSpec& spec);

// (1/N_a) * sum |v(a)|^2; cross terms between distinct tones average out.
double estimate_sum_sq_amplitudes(const Measurement& meas);

// K distinct uniform bins, amplitudes uniform in [lo, hi].
SparseSpec random_spec(std::size_t n, std::size_t k, double lo, double hi, std::uint64_t seed);

// Seed for trial `index` of a run started from `master`. Independent of
// execution order.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

}  // namespace sira
