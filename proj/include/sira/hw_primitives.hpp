#pragma once

// Software models of the FPGA-oriented numeric primitives: a LUT-based
// logarithm and the non-restoring digit-by-digit integer square root.

#include <array>
#include <cstdint>

namespace sira::hw {

// x = mantissa * 2^exponent with mantissa in [1, 2).
struct FloatDecomposition {
  double mantissa = 1.0;
  int exponent = 0;
};

// Throws DomainError for x <= 0, infinities and NaN.
FloatDecomposition decompose(double x);

inline constexpr int kLogFracBits = 15;
inline constexpr std::int64_t kLogScale = std::int64_t{1} << kLogFracBits;
inline constexpr int kLutIndexBits = 12;
inline constexpr std::size_t kLutSize = std::size_t{1} << kLutIndexBits;

// Q15 logarithm value: represents raw / 2^15.
struct FixedLog {
  std::int64_t raw = 0;

  double value() const { return static_cast<double>(raw) / static_cast<double>(kLogScale); }
};

// entry[i] = round(2^15 * log2(1 + i / 2^12)), addressed by the top 12
// fractional mantissa bits (truncated, no interpolation).
class LogLut {
 public:
  static const LogLut& instance();

  std::int32_t operator[](std::size_t i) const { return entries_[i]; }
  std::size_t size() const { return entries_.size(); }
  std::size_t index_of(double mantissa) const;

 private:
  LogLut();
  std::array<std::int32_t, kLutSize> entries_{};
};

// raw = x_e * 2^15 + LUT(x_m).
FixedLog lut_log2(double x);

// log2 through the LUT, divided by log2(10).
double lut_log10(double x);

struct SqrtResult {
  std::uint16_t root = 0;       // W, 16 bits
  std::uint32_t remainder = 0;  // R, 17 bits
};

// Non-restoring square root of a 32-bit unsigned integer, one result bit per
// iteration (i = 15..0) with a single remainder correction at the end.
SqrtResult nr_sqrt(std::uint32_t b);

// floor(sqrt(round(x * 2^(2*frac_bits)))) / 2^frac_bits. frac_bits may be
// negative. Throws RangeError when the scaled input exceeds 32 bits and
// DomainError for negative or non-finite x.
double fixed_sqrt_real(double x, int frac_bits = 8);

}  // namespace sira::hw
