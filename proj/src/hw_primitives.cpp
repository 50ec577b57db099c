#include "sira/hw_primitives.hpp"

#include <cmath>
#include <limits>

#include "sira/errors.hpp"

namespace sira::hw {

FloatDecomposition decompose(double x) {
  if (!std::isfinite(x) || !(x > 0.0)) throw DomainError("decompose: input must be positive and finite");
  int e = 0;
  // frexp normalizes subnormals as well: x = f * 2^e with f in [0.5, 1).
  const double f = std::frexp(x, &e);
  return {2.0 * f, e - 1};
}

LogLut::LogLut() {
  for (std::size_t i = 0; i < kLutSize; ++i) {
    const double xm = 1.0 + static_cast<double>(i) / static_cast<double>(kLutSize);
    entries_[i] = static_cast<std::int32_t>(std::lround(static_cast<double>(kLogScale) * std::log2(xm)));
  }
}

const LogLut& LogLut::instance() {
  static const LogLut lut;
  return lut;
}

std::size_t LogLut::index_of(double mantissa) const {
  // (x_m - 1) * 2^12 is exact in binary floating point; truncation keeps the
  // top 12 fractional bits.
  const auto idx = static_cast<std::size_t>(std::floor((mantissa - 1.0) * static_cast<double>(kLutSize)));
  return idx < kLutSize ? idx : kLutSize - 1;
}

FixedLog lut_log2(double x) {
  const FloatDecomposition d = decompose(x);
  const LogLut& lut = LogLut::instance();
  return {static_cast<std::int64_t>(d.exponent) * kLogScale + lut[lut.index_of(d.mantissa)]};
}

double lut_log10(double x) {
  static const double log2_10 = std::log2(10.0);
  return lut_log2(x).value() / log2_10;
}

SqrtResult nr_sqrt(std::uint32_t b) {
  std::int64_t r = 0;   // partial remainder r_i, signed
  std::uint32_t w = 0;  // partial root w_i
  for (int i = 15; i >= 0; --i) {
    // r_{i+1} B_{2i+1} B_{2i}: shift the remainder left by two and append
    // the next pair of radicand bits.
    const std::int64_t pair = (b >> (2 * i)) & 0x3u;
    const std::int64_t shifted = r * 4 + pair;
    if (r >= 0) {
      r = shifted - ((static_cast<std::int64_t>(w) << 2) | 0x1);  // w_{i+1}01
    } else {
      r = shifted + ((static_cast<std::int64_t>(w) << 2) | 0x3);  // w_{i+1}11
    }
    w = (w << 1) | (r >= 0 ? 1u : 0u);
  }
  if (r < 0) r += (static_cast<std::int64_t>(w) << 1) | 0x1;  // w_0 1
  return {static_cast<std::uint16_t>(w), static_cast<std::uint32_t>(r)};
}

double fixed_sqrt_real(double x, int frac_bits) {
  if (!std::isfinite(x) || x < 0.0) throw DomainError("fixed_sqrt_real: input must be nonnegative and finite");
  const double scaled = std::round(std::ldexp(x, 2 * frac_bits));
  if (scaled > static_cast<double>(std::numeric_limits<std::uint32_t>::max())) {
    throw RangeError("fixed_sqrt_real: scaled input does not fit 32 bits");
  }
  const SqrtResult s = nr_sqrt(static_cast<std::uint32_t>(scaled));
  return std::ldexp(static_cast<double>(s.root), -frac_bits);
}

}  // namespace sira::hw
