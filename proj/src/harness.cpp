#include "sira/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <sstream>
#include <thread>

#include "sira/csv_io.hpp"
#include "sira/errors.hpp"
#include "sira/hw_datapath.hpp"

namespace sira::harness {

namespace {

double parse_double(const std::string& s, const char* what) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size()) throw InvalidArgument(std::string("bad ") + what + " '" + s + "'");
  return v;
}

std::size_t parse_count(const std::string& s, const char* what) {
  std::size_t used = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size() || s.front() == '-') {
    throw InvalidArgument(std::string("bad ") + what + " '" + s + "'");
  }
  return static_cast<std::size_t>(v);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string part;
  std::istringstream ss(s);
  while (std::getline(ss, part, sep)) parts.push_back(part);
  if (!s.empty() && s.back() == sep) parts.emplace_back();
  return parts;
}

}  // namespace

SparseSpec resolve_spec(const RunConfig& cfg) {
  if (cfg.tones.rfind("random:", 0) == 0) {
    const auto parts = split(cfg.tones.substr(7), ':');
    if (parts.size() != 3) throw InvalidArgument("--tones random:K:lo:hi expects three fields");
    return random_spec(cfg.n, parse_count(parts[0], "tone count"), parse_double(parts[1], "amplitude"),
                       parse_double(parts[2], "amplitude"), cfg.seed);
  }
  if (!cfg.tones.empty()) {
    std::vector<Tone> tones;
    for (const std::string& item : split(cfg.tones, ',')) {
      const auto at = item.find('@');
      if (at == std::string::npos) throw InvalidArgument("tone '" + item + "' is not of the form A@k");
      tones.push_back({parse_double(item.substr(0, at), "amplitude"), parse_count(item.substr(at + 1), "bin")});
    }
    return SparseSpec(cfg.n, std::move(tones));
  }
  if (cfg.k) return random_spec(cfg.n, *cfg.k, 1.0, 1.0, cfg.seed);
  throw InvalidArgument("no signal components: pass --tones or --k");
}

Metrics compute_metrics(std::span<const Complex> truth, std::span<const std::size_t> true_support,
                        const ReconstructionResult& result) {
  if (truth.size() != result.time_signal.size()) throw InvalidArgument("compute_metrics: length mismatch");
  Metrics m;
  const auto& detected = result.detection.positions;
  std::size_t hits = 0;
  for (std::size_t f : detected) {
    if (std::find(true_support.begin(), true_support.end(), f) != true_support.end()) ++hits;
  }
  m.n_detected = detected.size();
  m.precision = detected.empty() ? 1.0 : static_cast<double>(hits) / static_cast<double>(detected.size());
  m.recall = true_support.empty() ? 1.0 : static_cast<double>(hits) / static_cast<double>(true_support.size());
  m.support_exact = m.precision == 1.0 && m.recall == 1.0;

  double err = 0.0;
  double ref = 0.0;
  for (std::size_t t = 0; t < truth.size(); ++t) {
    err += std::norm(result.time_signal[t] - truth[t]);
    ref += std::norm(truth[t]);
  }
  m.rel_mse_time = ref > 0.0 ? err / ref : err;
  m.threshold = result.detection.threshold;
  m.variance = result.detection.variance;
  return m;
}

void write_metrics_header(std::ostream& os) {
  os << "support_exact,precision,recall,rel_mse_time,threshold,variance,n_detected\n";
}

void write_metrics_row(std::ostream& os, const Metrics& m) {
  using csv::format_real;
  os << (m.support_exact ? "true" : "false") << ',' << format_real(m.precision) << ',' << format_real(m.recall) << ','
     << format_real(m.rel_mse_time) << ',' << format_real(m.threshold) << ',' << format_real(m.variance) << ','
     << m.n_detected << '\n';
}

void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& fn) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  const auto workers = static_cast<unsigned>(std::min<std::size_t>(threads, count));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < count; i = next++) {
          try {
            fn(i);
          } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
            next = count;
          }
        }
      });
    }
  }
  if (failure) std::rethrow_exception(failure);
}

CalibrationSummary run_calibration(const SparseSpec& spec, std::size_t n_a, const ThresholdConfig& cfg,
                                   std::size_t trials, std::uint64_t seed, unsigned threads) {
  cfg.validate();
  if (trials == 0) throw InvalidArgument("run_calibration: need at least one trial");
  const std::size_t n = spec.n();
  const TimeSignal x = synthesize(spec);
  const std::vector<std::size_t> support = spec.support();
  std::vector<bool> is_signal(n, false);
  for (std::size_t f : support) is_signal[f] = true;

  CalibrationSummary summary;
  summary.model_variance = missing_noise_variance(n, n_a, sum_sq_amplitudes(spec));
  summary.threshold = threshold(summary.model_variance, n, cfg);
  summary.trials.resize(trials);

  parallel_for(trials, threads, [&](std::size_t i) {
    CalibrationTrial& tr = summary.trials[i];
    tr.seed = derive_seed(seed, i);
    const Measurement meas = sample(x, random_pattern(n, n_a, tr.seed));
    const Spectrum v = initial_dft(meas);
    const double var = missing_noise_variance(n, n_a, resolve_sum_sq(meas, cfg, sum_sq_amplitudes(spec)));
    tr.threshold = threshold(var, n, cfg);
    double acc = 0.0;
    for (std::size_t f = 0; f < n; ++f) {
      if (is_signal[f]) continue;
      const double mag = std::abs(v.bins[f]);
      acc += mag * mag;
      tr.max_noise = std::max(tr.max_noise, mag);
    }
    tr.noise_variance = acc / static_cast<double>(n - support.size());
    // Without missing samples there is no missing-sample noise; what is
    // left in the noise bins is round-off.
    tr.all_below = meas.pattern.n_missing() == 0 || tr.max_noise < tr.threshold;
  });

  double var_sum = 0.0;
  std::size_t below = 0;
  for (const CalibrationTrial& tr : summary.trials) {
    var_sum += tr.noise_variance;
    below += tr.all_below ? 1 : 0;
  }
  summary.empirical_variance = var_sum / static_cast<double>(trials);
  summary.p_hat = static_cast<double>(below) / static_cast<double>(trials);
  return summary;
}

double relative_error(double value, double reference) {
  if (reference == 0.0) return value == 0.0 ? 0.0 : std::abs(value);
  return std::abs(value - reference) / std::abs(reference);
}

namespace {

void summarize(XcheckSummary& s) {
  std::size_t agree = 0;
  s.max_rel_error = 0.0;
  for (const XcheckTrial& t : s.trials) {
    s.max_rel_error = std::max(s.max_rel_error, t.rel_error);
    agree += t.support_agree ? 1 : 0;
  }
  s.agreement_rate = s.trials.empty() ? 1.0 : static_cast<double>(agree) / static_cast<double>(s.trials.size());
}

}  // namespace

XcheckSummary run_xcheck(const SparseSpec& spec, std::size_t n_a, const ThresholdConfig& cfg, std::size_t trials,
                         std::uint64_t seed, unsigned threads) {
  cfg.validate();
  const std::size_t n = spec.n();
  const TimeSignal x = synthesize(spec);
  const double oracle = sum_sq_amplitudes(spec);

  XcheckSummary summary;
  summary.trials.resize(trials);
  parallel_for(trials, threads, [&](std::size_t i) {
    XcheckTrial& tr = summary.trials[i];
    tr.seed = derive_seed(seed, i);
    tr.n = n;
    tr.p = cfg.p;
    const Measurement meas = sample(x, random_pattern(n, n_a, tr.seed));

    const Spectrum v = initial_dft(meas);
    tr.variance = missing_noise_variance(n, n_a, resolve_sum_sq(meas, cfg, oracle));
    tr.t_reference = threshold(tr.variance, n, cfg);
    const auto ref_pos = detect_positions(v, std::max(tr.t_reference, roundoff_floor(meas)));

    const hw::Part1Result hw_path = hw::part1_pipeline(meas, cfg, oracle);
    tr.t_fixed = hw_path.trace.t_fixed;
    tr.rel_error = relative_error(tr.t_fixed, tr.t_reference);
    tr.support_agree = hw_path.bits.positions() == ref_pos;
  });
  summarize(summary);
  return summary;
}

XcheckSummary run_threshold_grid(ThresholdVariant variant) {
  XcheckSummary summary;
  for (std::size_t n : {64u, 256u, 1024u}) {
    for (double p : {0.5, 0.9, 0.99, 0.999}) {
      for (int step = 0; step <= 24; ++step) {
        XcheckTrial tr;
        tr.n = n;
        tr.p = p;
        tr.variance = std::pow(10.0, -3.0 + 0.5 * step);
        const ThresholdConfig cfg{p, variant, AmplitudeMode::oracle};
        tr.t_reference = threshold(tr.variance, n, cfg);
        tr.t_fixed = hw::threshold_fixed_from_variance(tr.variance, n, p, variant).t_fixed;
        tr.rel_error = relative_error(tr.t_fixed, tr.t_reference);
        summary.trials.push_back(tr);
      }
    }
  }
  summarize(summary);
  return summary;
}

}  // namespace sira::harness
