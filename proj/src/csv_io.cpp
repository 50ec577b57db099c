#include "sira/csv_io.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "sira/errors.hpp"
#include "sira/hw_primitives.hpp"

namespace sira::csv {

std::string format_real(double x) {
  if (x == 0.0) x = 0.0;  // drop the sign of negative zero
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace {

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, sep)) fields.push_back(field);
  if (!line.empty() && line.back() == sep) fields.emplace_back();
  return fields;
}

double parse_real(const std::string& s) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw InvalidArgument("csv: cannot parse number '" + s + "'");
  }
  if (used != s.size()) throw InvalidArgument("csv: trailing characters in '" + s + "'");
  return v;
}

std::size_t parse_index(const std::string& s) {
  std::size_t used = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(s, &used);
  } catch (const std::exception&) {
    throw InvalidArgument("csv: cannot parse index '" + s + "'");
  }
  if (used != s.size() || s.front() == '-') throw InvalidArgument("csv: bad index '" + s + "'");
  return static_cast<std::size_t>(v);
}

void strip_cr(std::string& line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
}

// Reads rows of `width` fields whose first column counts 0, 1, 2, ...
template <typename Row>
void read_indexed(std::istream& is, const std::string& header, std::size_t width, Row&& row) {
  std::string line;
  if (!std::getline(is, line)) throw InvalidArgument("csv: missing header");
  strip_cr(line);
  if (line != header) throw InvalidArgument("csv: expected header '" + header + "', got '" + line + "'");
  std::size_t expected = 0;
  while (std::getline(is, line)) {
    strip_cr(line);
    if (line.empty()) continue;
    const auto fields = split(line, ',');
    if (fields.size() != width) throw InvalidArgument("csv: wrong field count in '" + line + "'");
    if (parse_index(fields[0]) != expected) throw InvalidArgument("csv: rows must be numbered 0, 1, 2, ...");
    row(fields);
    ++expected;
  }
}

}  // namespace

void write_signal(std::ostream& os, std::span<const Complex> samples) {
  os << "index,re,im\n";
  for (std::size_t i = 0; i < samples.size(); ++i) {
    os << i << ',' << format_real(samples[i].real()) << ',' << format_real(samples[i].imag()) << '\n';
  }
}

ComplexVector read_signal(std::istream& is) {
  ComplexVector out;
  read_indexed(is, "index,re,im", 3, [&](const std::vector<std::string>& f) {
    out.emplace_back(parse_real(f[1]), parse_real(f[2]));
  });
  if (out.empty()) throw InvalidArgument("csv: signal has no samples");
  return out;
}

void write_spectrum(std::ostream& os, const Spectrum& spectrum) {
  os << "bin,re,im,magnitude\n";
  for (std::size_t f = 0; f < spectrum.size(); ++f) {
    const Complex c = spectrum.bins[f];
    os << f << ',' << format_real(c.real()) << ',' << format_real(c.imag()) << ',' << format_real(std::abs(c)) << '\n';
  }
}

Spectrum read_spectrum(std::istream& is) {
  Spectrum out;
  read_indexed(is, "bin,re,im,magnitude", 4, [&](const std::vector<std::string>& f) {
    out.bins.emplace_back(parse_real(f[1]), parse_real(f[2]));
  });
  return out;
}

void write_detection(std::ostream& os, const DetectionResult& detection) {
  os << "threshold,variance,n_detected,positions\n";
  os << format_real(detection.threshold) << ',' << format_real(detection.variance) << ','
     << detection.positions.size() << ',';
  for (std::size_t i = 0; i < detection.positions.size(); ++i) {
    if (i > 0) os << ';';
    os << detection.positions[i];
  }
  os << '\n';
}

void write_lut(std::ostream& os) {
  const auto& lut = hw::LogLut::instance();
  os << "index,value\n";
  for (std::size_t i = 0; i < lut.size(); ++i) os << i << ',' << lut[i] << '\n';
}

}  // namespace sira::csv
