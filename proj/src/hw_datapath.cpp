#include "sira/hw_datapath.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <numbers>

#include "sira/csv_io.hpp"
#include "sira/errors.hpp"

namespace sira::hw {

std::vector<std::size_t> ComparatorBits::positions() const {
  std::vector<std::size_t> pos;
  pos.reserve(count_ones);
  for (std::size_t f = 0; f < bits.size(); ++f) {
    if (bits[f] != 0) pos.push_back(f);
  }
  return pos;
}

namespace {

// Largest k with 2k <= 30 - e, so that x * 2^(2k) lands in [2^29, 2^31).
int prescale_half_shift(int exponent) {
  const int room = 30 - exponent;
  return room >= 0 ? room / 2 : -((-room + 1) / 2);
}

}  // namespace

FixedThresholdTrace threshold_fixed_from_variance(double variance, std::size_t n, double p,
                                                  ThresholdVariant variant) {
  ThresholdConfig{p, variant, AmplitudeMode::oracle}.validate();
  if (n == 0) throw InvalidArgument("threshold_fixed: N must be positive");
  if (!(variance >= 0.0) || !std::isfinite(variance)) throw InvalidArgument("threshold_fixed: bad variance");

  FixedThresholdTrace tr;
  const double var_scaled = std::round(std::ldexp(variance, kVarFracBits));
  if (var_scaled >= 0x1p63) throw RangeError("threshold_fixed: variance does not fit Q31.32");
  tr.var_fixed = static_cast<std::int64_t>(var_scaled);
  const double var_q = std::ldexp(static_cast<double>(tr.var_fixed), -kVarFracBits);

  // P^(1/N) has no dedicated unit; it is evaluated on the host.
  tr.tail = tail_complement(p, n);
  tr.log_term = lut_log2(tr.tail);
  tr.log10_term = lut_log10(tr.tail);

  if (variant == ThresholdVariant::paper) {
    tr.root_arg = -(var_q * var_q) * tr.log10_term;
  } else {
    tr.root_arg = -var_q * tr.log10_term * std::numbers::ln10;
  }
  if (!(tr.root_arg > 0.0)) {
    tr.root_arg = 0.0;
    return tr;
  }

  const int half = prescale_half_shift(decompose(tr.root_arg).exponent);
  tr.scale_shift = 2 * half;
  const double scaled = std::round(std::ldexp(tr.root_arg, tr.scale_shift));
  assert(scaled <= static_cast<double>(std::numeric_limits<std::uint32_t>::max()));
  tr.root_in = static_cast<std::uint32_t>(scaled);
  tr.root_out = nr_sqrt(tr.root_in);

  const double root = fixed_sqrt_real(tr.root_arg, half);
  tr.t_fixed = variant == ThresholdVariant::paper ? root / static_cast<double>(n) : root;
  return tr;
}

FixedThresholdTrace threshold_fixed(std::size_t n, std::size_t n_a, double sum_sq_amp, double p,
                                    ThresholdVariant variant) {
  return threshold_fixed_from_variance(missing_noise_variance(n, n_a, sum_sq_amp), n, p, variant);
}

ComparatorBits comparator(const Spectrum& v, double t) {
  ComparatorBits out;
  out.bits.resize(v.size());
  for (std::size_t f = 0; f < v.size(); ++f) {
    const bool above = std::abs(v.bins[f]) > t;
    out.bits[f] = above ? 1 : 0;
    out.count_ones += above ? 1 : 0;
  }
  return out;
}

Part1Result part1_pipeline(const Measurement& meas, const ThresholdConfig& cfg, std::optional<double> oracle_sum_sq) {
  cfg.validate();
  Part1Result r;
  r.initial = initial_dft(meas);
  const double sum_sq = resolve_sum_sq(meas, cfg, oracle_sum_sq);
  r.trace = threshold_fixed(meas.pattern.n(), meas.pattern.n_available(), sum_sq, cfg.p, cfg.variant);
  r.effective_threshold = std::max(r.trace.t_fixed, roundoff_floor(meas));
  r.bits = comparator(r.initial, r.effective_threshold);
  return r;
}

DetectionResult to_detection(const Part1Result& part1) {
  DetectionResult d;
  d.threshold = part1.trace.t_fixed;
  d.variance = std::ldexp(static_cast<double>(part1.trace.var_fixed), -kVarFracBits);
  d.effective_threshold = part1.effective_threshold;
  d.positions = part1.bits.positions();
  return d;
}

void write_trace_csv(std::ostream& os, const FixedThresholdTrace& tr) {
  using csv::format_real;
  const int half = tr.scale_shift / 2;
  os << "stage,raw_value,scaled_value\n";
  os << "variance," << tr.var_fixed << ',' << format_real(std::ldexp(static_cast<double>(tr.var_fixed), -kVarFracBits))
     << '\n';
  os << "tail," << format_real(tr.tail) << ',' << format_real(tr.tail) << '\n';
  os << "log2_tail," << tr.log_term.raw << ',' << format_real(tr.log_term.value()) << '\n';
  os << "log10_tail," << tr.log_term.raw << ',' << format_real(tr.log10_term) << '\n';
  os << "root_in," << tr.root_in << ',' << format_real(tr.root_arg) << '\n';
  os << "root_out," << tr.root_out.root << ',' << format_real(std::ldexp(static_cast<double>(tr.root_out.root), -half))
     << '\n';
  os << "remainder," << tr.root_out.remainder << ','
     << format_real(std::ldexp(static_cast<double>(tr.root_out.remainder), -tr.scale_shift)) << '\n';
  os << "threshold," << format_real(tr.t_fixed) << ',' << format_real(tr.t_fixed) << '\n';
}

}  // namespace sira::hw
