#pragma once

// Experiment runner behind the command-line tool: run configuration,
// metrics, Monte-Carlo calibration and reference/hardware cross-checks.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sira/recon_core.hpp"
#include "sira/signal_model.hpp"

namespace sira::harness {

enum class PathKind { reference, hardware };

struct RunConfig {
  std::size_t n = 256;
  std::optional<std::size_t> n_a;  // defaults to n / 2
  std::optional<std::size_t> k;    // unit tones at random bins when no --tones
  std::string tones;               // "A@k,A@k" or "random:K:lo:hi"
  double p = 0.99;
  std::uint64_t seed = 1;
  ThresholdVariant variant = ThresholdVariant::ref10;
  AmplitudeMode amp_mode = AmplitudeMode::oracle;
  PathKind path = PathKind::reference;
  std::size_t trials = 200;
  std::string out;
  std::string in;
  unsigned threads = 0;  // 0: hardware concurrency
  bool grid = false;

  ThresholdConfig threshold_config() const { return {p, variant, amp_mode}; }
  std::size_t available() const { return n_a.value_or(n / 2); }
};

// Tone list from cfg.tones / cfg.k. Throws InvalidArgument or InvalidSpec.
SparseSpec resolve_spec(const RunConfig& cfg);

struct Metrics {
  bool support_exact = false;
  double precision = 0.0;
  double recall = 0.0;
  double rel_mse_time = 0.0;
  double threshold = 0.0;
  double variance = 0.0;
  std::size_t n_detected = 0;
};

// Precision is 1 when nothing is detected (no false positives).
Metrics compute_metrics(std::span<const Complex> truth, std::span<const std::size_t> true_support,
                        const ReconstructionResult& result);

void write_metrics_header(std::ostream& os);
void write_metrics_row(std::ostream& os, const Metrics& m);

// Runs fn(i) for i in [0, count) on up to `threads` workers.
void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& fn);

struct CalibrationTrial {
  std::uint64_t seed = 0;
  double noise_variance = 0.0;  // mean |V(f)|^2 over noise bins
  double max_noise = 0.0;
  double threshold = 0.0;
  bool all_below = false;
};

struct CalibrationSummary {
  double model_variance = 0.0;
  double empirical_variance = 0.0;
  double threshold = 0.0;
  double p_hat = 0.0;
  std::vector<CalibrationTrial> trials;
};

// Fixed signal, fresh random pattern per trial. The empirical variance is
// the pooled second moment of V over non-signal bins.
CalibrationSummary run_calibration(const SparseSpec& spec, std::size_t n_a, const ThresholdConfig& cfg,
                                   std::size_t trials, std::uint64_t seed, unsigned threads = 0);

struct XcheckTrial {
  std::uint64_t seed = 0;
  std::size_t n = 0;
  double p = 0.0;
  double variance = 0.0;
  double t_reference = 0.0;
  double t_fixed = 0.0;
  double rel_error = 0.0;
  bool support_agree = true;
};

struct XcheckSummary {
  double max_rel_error = 0.0;
  double agreement_rate = 1.0;
  std::vector<XcheckTrial> trials;
};

double relative_error(double value, double reference);

// Reference vs hardware Part 1 over random patterns.
XcheckSummary run_xcheck(const SparseSpec& spec, std::size_t n_a, const ThresholdConfig& cfg, std::size_t trials,
                         std::uint64_t seed, unsigned threads = 0);

// Threshold sweep over var in 1e-3..1e9 (half-decade steps),
// P in {0.5, 0.9, 0.99, 0.999} and N in {64, 256, 1024}.
XcheckSummary run_threshold_grid(ThresholdVariant variant);

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int config = 2;
inline constexpr int empty_support = 3;
inline constexpr int linear_algebra = 4;
}  // namespace exit_code

// Entry point of the command-line tool. args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sira::harness
