#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>

#include "sira/csv_io.hpp"
#include "sira/errors.hpp"
#include "sira/harness.hpp"
#include "sira/hw_datapath.hpp"

namespace sira::harness {

namespace {

struct IoError : InvalidArgument {
  using InvalidArgument::InvalidArgument;
};

std::ofstream open_out(const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw IoError("cannot open '" + path + "' for writing");
  return os;
}

// Writes to `path`, or to `fallback` when no path was given.
template <typename Fn>
void emit(const std::string& path, std::ostream& fallback, Fn&& fn) {
  if (path.empty()) {
    fn(fallback);
    return;
  }
  std::ofstream os = open_out(path);
  fn(os);
}

void check_common(const RunConfig& cfg) {
  if (cfg.n < 2) throw InvalidArgument("--n must be at least 2");
  const std::size_t n_a = cfg.available();
  if (n_a < 1 || n_a > cfg.n) throw InvalidArgument("--na must lie in [1, n]");
  cfg.threshold_config().validate();
}

int cmd_gen(const RunConfig& cfg, std::ostream& out) {
  const SparseSpec spec = resolve_spec(cfg);
  const TimeSignal x = synthesize(spec);
  emit(cfg.out, out, [&](std::ostream& os) { csv::write_signal(os, x.samples); });
  return exit_code::ok;
}

// Bins that carry energy in the full-data DFT of `x`.
std::vector<std::size_t> support_from_signal(const ComplexVector& x) {
  const Spectrum full = initial_dft(Measurement{x, SamplingPattern::full(x.size())});
  double peak = 0.0;
  for (const Complex& c : full.bins) peak = std::max(peak, std::abs(c));
  return detect_positions(full, 1e-9 * peak);
}

int cmd_recon(RunConfig cfg, std::ostream& out) {
  ComplexVector truth;
  std::optional<SparseSpec> spec;
  if (!cfg.in.empty()) {
    std::ifstream is(cfg.in, std::ios::binary);
    if (!is) throw IoError("cannot open '" + cfg.in + "'");
    truth = csv::read_signal(is);
    cfg.n = truth.size();
    if (!cfg.tones.empty() || cfg.k) spec = resolve_spec(cfg);
  } else {
    spec = resolve_spec(cfg);
    truth = synthesize(*spec).samples;
  }
  check_common(cfg);

  double energy = 0.0;
  for (const Complex& c : truth) energy += std::norm(c);
  // Parseval stands in for the tone list when only the signal file is known.
  const double oracle_sum_sq = spec ? sum_sq_amplitudes(*spec) : energy / static_cast<double>(cfg.n);
  const std::vector<std::size_t> true_support = spec ? spec->support() : support_from_signal(truth);

  const std::size_t n_a = cfg.available();
  if (n_a < true_support.size()) {
    throw UnderdeterminedError("--na " + std::to_string(n_a) + " is below the component count " +
                               std::to_string(true_support.size()));
  }

  const Measurement meas = sample(TimeSignal{truth}, random_pattern(cfg.n, n_a, cfg.seed));
  const ThresholdConfig tcfg = cfg.threshold_config();
  ReconstructionResult result;
  if (cfg.path == PathKind::hardware) {
    const hw::Part1Result part1 = hw::part1_pipeline(meas, tcfg, oracle_sum_sq);
    if (!cfg.out.empty()) {
      std::ofstream os = open_out(cfg.out + "_trace.csv");
      hw::write_trace_csv(os, part1.trace);
    }
    result = solve_on_support(meas, hw::to_detection(part1));
  } else {
    result = reconstruct(meas, tcfg, oracle_sum_sq);
  }

  const Metrics m = compute_metrics(truth, true_support, result);
  if (!cfg.out.empty()) {
    std::ofstream spectrum = open_out(cfg.out + "_spectrum.csv");
    csv::write_spectrum(spectrum, result.spectrum);
    std::ofstream detection = open_out(cfg.out + "_detection.csv");
    csv::write_detection(detection, result.detection);
    std::ofstream metrics = open_out(cfg.out + "_metrics.csv");
    write_metrics_header(metrics);
    write_metrics_row(metrics, m);
  }
  write_metrics_header(out);
  write_metrics_row(out, m);
  return result.status == ReconStatus::empty_support ? exit_code::empty_support : exit_code::ok;
}

int cmd_calibrate(RunConfig cfg, std::ostream& out) {
  if (cfg.tones.empty() && !cfg.k) cfg.k = 1;
  check_common(cfg);
  if (cfg.trials < 100) throw InvalidArgument("--trials must be at least 100 for calibration");
  const SparseSpec spec = resolve_spec(cfg);
  const CalibrationSummary s =
      run_calibration(spec, cfg.available(), cfg.threshold_config(), cfg.trials, cfg.seed, cfg.threads);
  using csv::format_real;
  if (!cfg.out.empty()) {
    std::ofstream os = open_out(cfg.out);
    os << "trial,seed,noise_variance,max_noise,threshold,all_below\n";
    for (std::size_t i = 0; i < s.trials.size(); ++i) {
      const CalibrationTrial& t = s.trials[i];
      os << i << ',' << t.seed << ',' << format_real(t.noise_variance) << ',' << format_real(t.max_noise) << ','
         << format_real(t.threshold) << ',' << (t.all_below ? 1 : 0) << '\n';
    }
  }
  out << "trials,model_variance,empirical_variance,variance_rel_error,threshold,p_target,p_hat\n";
  out << s.trials.size() << ',' << format_real(s.model_variance) << ',' << format_real(s.empirical_variance) << ','
      << format_real(relative_error(s.empirical_variance, s.model_variance)) << ',' << format_real(s.threshold) << ','
      << format_real(cfg.p) << ',' << format_real(s.p_hat) << '\n';
  return exit_code::ok;
}

int cmd_xcheck(RunConfig cfg, std::ostream& out) {
  XcheckSummary s;
  if (cfg.grid) {
    cfg.threshold_config().validate();
    s = run_threshold_grid(cfg.variant);
  } else {
    if (cfg.tones.empty() && !cfg.k) cfg.k = 3;
    check_common(cfg);
    s = run_xcheck(resolve_spec(cfg), cfg.available(), cfg.threshold_config(), cfg.trials, cfg.seed, cfg.threads);
  }
  using csv::format_real;
  if (!cfg.out.empty()) {
    std::ofstream os = open_out(cfg.out);
    os << "trial,seed,n,p,variance,t_reference,t_fixed,rel_error,support_agree\n";
    for (std::size_t i = 0; i < s.trials.size(); ++i) {
      const XcheckTrial& t = s.trials[i];
      os << i << ',' << t.seed << ',' << t.n << ',' << format_real(t.p) << ',' << format_real(t.variance) << ','
         << format_real(t.t_reference) << ',' << format_real(t.t_fixed) << ',' << format_real(t.rel_error) << ','
         << (t.support_agree ? 1 : 0) << '\n';
    }
  }
  out << "trials,max_rel_error,agreement_rate\n";
  out << s.trials.size() << ',' << format_real(s.max_rel_error) << ',' << format_real(s.agreement_rate) << '\n';
  return exit_code::ok;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Single-iteration compressive sensing reconstruction toolkit", "sira_cli"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string variant = "ref10";
  std::string amp_mode = "oracle";
  std::string path = "reference";
  std::size_t n_a = 0;
  std::size_t k = 0;

  auto add_signal = [&](CLI::App* sub) {
    sub->add_option("--n", cfg.n, "Signal length N");
    sub->add_option("--tones", cfg.tones, "Components as A@k[,A@k...] or random:K:lo:hi");
    sub->add_option("--k", k, "Number of unit-amplitude tones at random bins");
    sub->add_option("--seed", cfg.seed, "Random seed");
    sub->add_option("--out", cfg.out, "Output file (or prefix for recon)");
  };
  auto add_recon = [&](CLI::App* sub) {
    sub->add_option("--na", n_a, "Available sample count N_a (default N/2)");
    sub->add_option("--p", cfg.p, "Probability P that all noise bins stay below the threshold");
    sub->add_option("--variant", variant, "Threshold formula: paper or ref10")->check(CLI::IsMember({"paper", "ref10"}));
    sub->add_option("--amp-mode", amp_mode, "Amplitude energy source: oracle or estimate")
        ->check(CLI::IsMember({"oracle", "estimate"}));
  };
  auto add_trials = [&](CLI::App* sub) {
    sub->add_option("--trials", cfg.trials, "Monte-Carlo trial count");
    sub->add_option("--threads", cfg.threads, "Worker threads (0: all cores)");
  };

  CLI::App* gen = app.add_subcommand("gen", "Synthesize a sparse multitone signal as CSV");
  add_signal(gen);

  CLI::App* recon = app.add_subcommand("recon", "Reconstruct a signal from a random subset of its samples");
  add_signal(recon);
  add_recon(recon);
  recon->add_option("--in", cfg.in, "Full input signal CSV (index,re,im)");
  recon->add_option("--path", path, "Detection path: reference or hardware")
      ->check(CLI::IsMember({"reference", "hardware"}));

  CLI::App* calibrate = app.add_subcommand("calibrate", "Monte-Carlo check of the noise variance and threshold");
  add_signal(calibrate);
  add_recon(calibrate);
  add_trials(calibrate);

  CLI::App* xcheck = app.add_subcommand("xcheck", "Compare the fixed-point threshold path with the reference");
  add_signal(xcheck);
  add_recon(xcheck);
  add_trials(xcheck);
  xcheck->add_flag("--grid", cfg.grid, "Sweep the (variance, P, N) grid instead of random trials");

  CLI::App* dump_lut = app.add_subcommand("dump-lut", "Write the log2 lookup table as CSV");
  dump_lut->add_option("--out", cfg.out, "Output file");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return exit_code::ok;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return exit_code::ok;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return exit_code::config;
  }

  try {
    cfg.variant = parse_variant(variant);
    cfg.amp_mode = parse_amp_mode(amp_mode);
    cfg.path = path == "hardware" ? PathKind::hardware : PathKind::reference;
    if (n_a > 0) cfg.n_a = n_a;
    if (k > 0) cfg.k = k;

    if (gen->parsed()) return cmd_gen(cfg, out);
    if (recon->parsed()) return cmd_recon(cfg, out);
    if (calibrate->parsed()) return cmd_calibrate(cfg, out);
    if (xcheck->parsed()) return cmd_xcheck(cfg, out);
    emit(cfg.out, out, [](std::ostream& os) { csv::write_lut(os); });
    return exit_code::ok;
  } catch (const LinearAlgebraError& e) {
    err << "error: " << e.what() << '\n';
    return exit_code::linear_algebra;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code::config;
  }
}

}  // namespace sira::harness
