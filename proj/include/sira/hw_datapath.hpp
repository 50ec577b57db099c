#pragma once

// Fixed-point model of the threshold datapath and the comparator block.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <vector>

#include "sira/hw_primitives.hpp"
#include "sira/recon_core.hpp"

namespace sira::hw {

struct ComparatorBits {
  std::vector<std::uint8_t> bits;
  std::size_t count_ones = 0;

  std::vector<std::size_t> positions() const;
};

inline constexpr int kVarFracBits = 32;

struct FixedThresholdTrace {
  std::int64_t var_fixed = 0;  // variance in Q31.32
  double tail = 0.0;           // 1 - P^(1/N), host double
  FixedLog log_term;           // log2(tail) through the LUT
  double log10_term = 0.0;
  double root_arg = 0.0;       // value fed to the square root
  std::uint32_t root_in = 0;   // root_arg * 2^scale_shift, rounded
  SqrtResult root_out;
  int scale_shift = 0;         // even; root is rescaled by 2^(-scale_shift/2)
  double t_fixed = 0.0;
};

// Threshold for a given variance.
FixedThresholdTrace threshold_fixed_from_variance(double variance, std::size_t n, double p, ThresholdVariant variant);

FixedThresholdTrace threshold_fixed(std::size_t n, std::size_t n_a, double sum_sq_amp, double p,
                                    ThresholdVariant variant);

// bits[f] = 1 iff |V(f)| > t.
ComparatorBits comparator(const Spectrum& v, double t);

struct Part1Result {
  ComparatorBits bits;
  FixedThresholdTrace trace;
  Spectrum initial;
  double effective_threshold = 0.0;
};

Part1Result part1_pipeline(const Measurement& meas, const ThresholdConfig& cfg,
                           std::optional<double> oracle_sum_sq = std::nullopt);

// Detection record built from the hardware path, for use with
// solve_on_support.
DetectionResult to_detection(const Part1Result& part1);

// `stage,raw_value,scaled_value` per datapath stage.
void write_trace_csv(std::ostream& os, const FixedThresholdTrace& trace);

}  // namespace sira::hw
