#pragma once

// Double-precision single-iteration reconstruction: initial DFT over the
// available samples, missing-sample noise variance, threshold, support
// detection, partial-DFT least squares and spectral positioning.

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "sira/linalg.hpp"
#include "sira/signal_model.hpp"

namespace sira {

struct Spectrum {
  ComplexVector bins;

  std::size_t size() const { return bins.size(); }
};

// paper: (1/N) * sqrt(-var^2 * log10(1 - P^(1/N))), the printed form.
// ref10: sqrt(-var * ln(1 - P^(1/N))), the Rayleigh-tail form.
enum class ThresholdVariant { paper, ref10 };

// oracle: sum of squared amplitudes is supplied by the caller.
// estimate: it is estimated from the measurement energy.
enum class AmplitudeMode { oracle, estimate };

ThresholdVariant parse_variant(std::string_view name);
AmplitudeMode parse_amp_mode(std::string_view name);
std::string_view to_string(ThresholdVariant v);
std::string_view to_string(AmplitudeMode m);

struct ThresholdConfig {
  double p = 0.99;
  ThresholdVariant variant = ThresholdVariant::ref10;
  AmplitudeMode amp_mode = AmplitudeMode::oracle;

  // Throws InvalidArgument unless 0 < p < 1.
  void validate() const;
};

struct DetectionResult {
  double threshold = 0.0;  // T as given by the threshold formula
  double variance = 0.0;
  // Threshold the comparison actually used: max(T, round-off floor).
  double effective_threshold = 0.0;
  std::vector<std::size_t> positions;
};

// Rows follow the pattern order, columns follow the support order.
// A_CS(m, i) = (1/N) exp(+j 2 pi P_v[m] pos[i] / N).
using CsMatrix = ComplexMatrix;

enum class ReconStatus { ok, empty_support };

struct ReconstructionResult {
  ComplexVector amplitudes;  // X_TP, one per detected bin
  Spectrum spectrum;         // X, length N
  ComplexVector time_signal;
  DetectionResult detection;
  ReconStatus status = ReconStatus::ok;
};

// V(f) = sum_a v(a) exp(-j 2 pi f P_v[a] / N), f = 0..N-1.
Spectrum initial_dft(const Measurement& meas);

// (N - N_a) * N_a / (N - 1) * sum_sq_amp.
double missing_noise_variance(std::size_t n, std::size_t n_a, double sum_sq_amp);

// 1 - P^(1/N), evaluated without cancellation.
double tail_complement(double p, std::size_t n);

double threshold(double variance, std::size_t n, const ThresholdConfig& cfg);

// Bins with |V(f)| > t, ascending.
std::vector<std::size_t> detect_positions(const Spectrum& v, double t);

// Magnitude below which initial-DFT bins are indistinguishable from
// accumulated round-off.
double roundoff_floor(const Measurement& meas);

CsMatrix build_cs_matrix(std::size_t n, const SamplingPattern& pattern, std::span<const std::size_t> pos);

// X_TP = (A^H A)^-1 (A^H v) via A_P = A^H A, X_P = A^H v and a QR solve.
ComplexVector ls_solve(const CsMatrix& a_cs, std::span<const Complex> v);

Spectrum spectral_positioning(std::span<const Complex> x_tp, std::span<const std::size_t> pos, std::size_t n);

// x(n) = (1/N) sum_f X(f) exp(+j 2 pi f n / N).
ComplexVector idft(const Spectrum& x);

// Sum of squared amplitudes per cfg.amp_mode. Oracle mode requires
// `oracle_sum_sq`.
double resolve_sum_sq(const Measurement& meas, const ThresholdConfig& cfg, std::optional<double> oracle_sum_sq);

// Part 2 and 3 for a given detection: CS matrix, least squares, positioning
// and IDFT. Empty support yields a zero spectrum with empty_support status.
ReconstructionResult solve_on_support(const Measurement& meas, DetectionResult detection);

ReconstructionResult reconstruct(const Measurement& meas, const ThresholdConfig& cfg,
                                 std::optional<double> oracle_sum_sq = std::nullopt);

}  // namespace sira
