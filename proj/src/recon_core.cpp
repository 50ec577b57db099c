#include "sira/recon_core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "sira/errors.hpp"

namespace sira {

ThresholdVariant parse_variant(std::string_view name) {
  if (name == "paper") return ThresholdVariant::paper;
  if (name == "ref10") return ThresholdVariant::ref10;
  throw InvalidArgument("unknown threshold variant '" + std::string(name) + "'");
}

AmplitudeMode parse_amp_mode(std::string_view name) {
  if (name == "oracle") return AmplitudeMode::oracle;
  if (name == "estimate") return AmplitudeMode::estimate;
  throw InvalidArgument("unknown amplitude mode '" + std::string(name) + "'");
}

std::string_view to_string(ThresholdVariant v) { return v == ThresholdVariant::paper ? "paper" : "ref10"; }

std::string_view to_string(AmplitudeMode m) { return m == AmplitudeMode::oracle ? "oracle" : "estimate"; }

void ThresholdConfig::validate() const {
  if (!(p > 0.0 && p < 1.0)) throw InvalidArgument("probability P must lie in (0, 1)");
}

Spectrum initial_dft(const Measurement& meas) {
  if (meas.values.empty()) throw InvalidArgument("initial_dft: empty measurement");
  const auto positions = meas.pattern.positions();
  if (positions.size() != meas.values.size()) {
    throw InvalidArgument("initial_dft: value count does not match pattern");
  }
  const std::size_t n = meas.pattern.n();
  const ComplexVector roots = unit_root_table(n);
  Spectrum v{ComplexVector(n)};
  for (std::size_t f = 0; f < n; ++f) {
    Complex acc{0.0, 0.0};
    for (std::size_t a = 0; a < positions.size(); ++a) {
      acc += meas.values[a] * std::conj(roots[(f * positions[a]) % n]);
    }
    v.bins[f] = acc;
  }
  return v;
}

double missing_noise_variance(std::size_t n, std::size_t n_a, double sum_sq_amp) {
  if (n < 2) throw InvalidArgument("missing_noise_variance: N must be at least 2");
  if (n_a < 1 || n_a > n) throw InvalidArgument("missing_noise_variance: need 1 <= N_a <= N");
  if (!(sum_sq_amp >= 0.0)) throw InvalidArgument("missing_noise_variance: negative amplitude energy");
  const double missing = static_cast<double>(n - n_a);
  return missing * static_cast<double>(n_a) / static_cast<double>(n - 1) * sum_sq_amp;
}

double tail_complement(double p, std::size_t n) {
  return -std::expm1(std::log(p) / static_cast<double>(n));
}

double threshold(double variance, std::size_t n, const ThresholdConfig& cfg) {
  cfg.validate();
  if (!(variance >= 0.0)) throw InvalidArgument("threshold: variance must be nonnegative");
  if (n == 0) throw InvalidArgument("threshold: N must be positive");
  if (variance == 0.0) return 0.0;
  const double u = tail_complement(cfg.p, n);
  if (cfg.variant == ThresholdVariant::paper) {
    return std::sqrt(-(variance * variance) * std::log10(u)) / static_cast<double>(n);
  }
  return std::sqrt(-variance * std::log(u));
}

std::vector<std::size_t> detect_positions(const Spectrum& v, double t) {
  std::vector<std::size_t> pos;
  for (std::size_t f = 0; f < v.size(); ++f) {
    if (std::abs(v.bins[f]) > t) pos.push_back(f);
  }
  return pos;
}

double roundoff_floor(const Measurement& meas) {
  double l1 = 0.0;
  for (const Complex& x : meas.values) l1 += std::abs(x);
  return 16.0 * std::numeric_limits<double>::epsilon() * std::sqrt(static_cast<double>(meas.values.size())) * l1;
}

CsMatrix build_cs_matrix(std::size_t n, const SamplingPattern& pattern, std::span<const std::size_t> pos) {
  if (pos.empty()) throw EmptySupportError("build_cs_matrix: empty support");
  if (pattern.n() != n) throw InvalidArgument("build_cs_matrix: pattern length differs from N");
  if (pos.size() > pattern.n_available()) {
    throw UnderdeterminedError("build_cs_matrix: " + std::to_string(pos.size()) + " detected bins exceed " +
                               std::to_string(pattern.n_available()) + " measurements");
  }
  const ComplexVector roots = unit_root_table(n);
  const double scale = 1.0 / static_cast<double>(n);
  const auto rows = pattern.positions();
  CsMatrix a(rows.size(), pos.size());
  for (std::size_t m = 0; m < rows.size(); ++m) {
    for (std::size_t i = 0; i < pos.size(); ++i) {
      if (pos[i] >= n) throw InvalidArgument("build_cs_matrix: bin index outside [0, N-1]");
      a(m, i) = scale * roots[(rows[m] * pos[i]) % n];
    }
  }
  return a;
}

ComplexVector ls_solve(const CsMatrix& a_cs, std::span<const Complex> v) {
  if (a_cs.rows() < a_cs.cols()) throw UnderdeterminedError("ls_solve: more unknowns than measurements");
  if (v.size() != a_cs.rows()) throw InvalidArgument("ls_solve: measurement length differs from row count");
  const ComplexMatrix a_h = hermitian(a_cs);
  ComplexMatrix a_p = multiply(a_h, a_cs);
  ComplexVector x_p = multiply(a_h, v);
  return qr_solve(std::move(a_p), std::move(x_p));
}

Spectrum spectral_positioning(std::span<const Complex> x_tp, std::span<const std::size_t> pos, std::size_t n) {
  if (x_tp.size() != pos.size()) throw InvalidArgument("spectral_positioning: amplitude and position counts differ");
  Spectrum x{ComplexVector(n)};
  for (std::size_t i = 0; i < pos.size(); ++i) {
    if (pos[i] >= n) throw InvalidArgument("spectral_positioning: bin index outside [0, N-1]");
    x.bins[pos[i]] = x_tp[i];
  }
  return x;
}

ComplexVector idft(const Spectrum& x) {
  const std::size_t n = x.size();
  ComplexVector out(n);
  if (n == 0) return out;
  const ComplexVector roots = unit_root_table(n);
  const double scale = 1.0 / static_cast<double>(n);
  for (std::size_t f = 0; f < n; ++f) {
    const Complex xf = x.bins[f];
    if (xf == Complex{0.0, 0.0}) continue;
    for (std::size_t t = 0; t < n; ++t) out[t] += xf * roots[(f * t) % n];
  }
  for (Complex& c : out) c *= scale;
  return out;
}

double resolve_sum_sq(const Measurement& meas, const ThresholdConfig& cfg, std::optional<double> oracle_sum_sq) {
  if (cfg.amp_mode == AmplitudeMode::estimate) return estimate_sum_sq_amplitudes(meas);
  if (!oracle_sum_sq) throw InvalidArgument("oracle amplitude mode requires the sum of squared amplitudes");
  if (!(*oracle_sum_sq >= 0.0)) throw InvalidArgument("sum of squared amplitudes must be nonnegative");
  return *oracle_sum_sq;
}

ReconstructionResult solve_on_support(const Measurement& meas, DetectionResult detection) {
  const std::size_t n = meas.pattern.n();
  ReconstructionResult result;
  if (detection.positions.empty()) {
    result.spectrum = Spectrum{ComplexVector(n)};
    result.time_signal = ComplexVector(n);
    result.detection = std::move(detection);
    result.status = ReconStatus::empty_support;
    return result;
  }
  const CsMatrix a_cs = build_cs_matrix(n, meas.pattern, detection.positions);
  result.amplitudes = ls_solve(a_cs, meas.values);
  result.spectrum = spectral_positioning(result.amplitudes, detection.positions, n);
  result.time_signal = idft(result.spectrum);
  result.detection = std::move(detection);
  return result;
}

ReconstructionResult reconstruct(const Measurement& meas, const ThresholdConfig& cfg,
                                 std::optional<double> oracle_sum_sq) {
  cfg.validate();
  const Spectrum v = initial_dft(meas);
  const std::size_t n = meas.pattern.n();
  DetectionResult det;
  det.variance = missing_noise_variance(n, meas.pattern.n_available(), resolve_sum_sq(meas, cfg, oracle_sum_sq));
  det.threshold = threshold(det.variance, n, cfg);
  det.effective_threshold = std::max(det.threshold, roundoff_floor(meas));
  det.positions = detect_positions(v, det.effective_threshold);
  return solve_on_support(meas, std::move(det));
}

}  // namespace sira
