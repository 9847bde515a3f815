#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace ihalton {

__extension__ typedef unsigned __int128 uint128;

/// Streams the base-b digits of a double in [0, 1).
///
/// The value is held as a 128-bit binary fraction, so digits are exact for
/// every x >= 2^-75 (all of x's mantissa bits fit). Both the scrambler and the
/// elementary-interval counters read digits through this class, which keeps
/// their view of cell membership identical.
class FractionDigits {
 public:
  FractionDigits(double x, std::uint64_t base) : base_(base) {
    if (!(x >= 0.0 && x < 1.0)) throw std::domain_error("value outside [0,1)");
    if (base < 2) throw std::invalid_argument("digit base must be >= 2");
    if (x == 0.0) return;
    int exp = 0;
    const double mant = std::frexp(x, &exp);  // x = mant * 2^exp, mant in [0.5, 1)
    const auto m = static_cast<uint128>(std::ldexp(mant, 53));
    const int shift = 75 + exp;  // frac = x * 2^128 = m * 2^(exp + 75)
    if (shift >= 0) {
      frac_ = m << shift;
    } else if (shift > -128) {
      frac_ = m >> -shift;
    }
  }

  std::uint64_t next() noexcept {
    constexpr uint128 kLowMask = ~std::uint64_t{0};
    const uint128 lo = (frac_ & kLowMask) * base_;
    const uint128 hi = (frac_ >> 64) * base_ + (lo >> 64);
    frac_ = (hi << 64) | (lo & kLowMask);
    return static_cast<std::uint64_t>(hi >> 64);
  }

 private:
  uint128 frac_ = 0;
  std::uint64_t base_;
};

/// floor(x * base^k), exact. Requires base^k to fit in 64 bits.
inline std::uint64_t elementary_index(double x, std::uint64_t base, std::uint32_t k) {
  FractionDigits digits(x, base);
  std::uint64_t index = 0;
  for (std::uint32_t l = 0; l < k; ++l) index = index * base + digits.next();
  return index;
}

}  // namespace ihalton
