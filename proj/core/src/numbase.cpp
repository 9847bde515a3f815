#include "ihalton/numbase.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <utility>

namespace ihalton {

namespace {

constexpr std::uint64_t kU64Max = std::numeric_limits<std::uint64_t>::max();

std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) noexcept {
  std::uint64_t r;
  return __builtin_mul_overflow(a, b, &r) ? kU64Max : r;
}

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) noexcept {
  std::uint64_t r;
  return __builtin_add_overflow(a, b, &r) ? kU64Max : r;
}

std::uint64_t isqrt(std::uint64_t n) noexcept {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

// Counts of admissible digit strings of a given length (leading zeros allowed),
// split by whether the digit just above the string is < q (low) or >= q (high).
struct AdmissibleCount {
  std::uint64_t low;
  std::uint64_t high;
};

// Counts grow at least like the golden ratio, so 2^64 is passed within 100 levels.
constexpr std::size_t kMaxCountLevels = 128;

struct CountTable {
  std::array<AdmissibleCount, kMaxCountLevels> level;
  std::size_t size = 0;
};

// Grows the count table until level[L].low > i, i.e. n_i has at most L digits.
void counts_covering(std::uint64_t i, std::uint64_t p, std::uint64_t q, CountTable& counts) {
  counts.level[0] = {1, 1};
  counts.size = 1;
  while (counts.level[counts.size - 1].low <= i && counts.level[counts.size - 1].low != kU64Max) {
    const auto prev = counts.level[counts.size - 1];
    counts.level[counts.size++] = {sat_add(sat_mul(q, prev.low), sat_mul(p + 1 - q, prev.high)),
                                   sat_add(sat_mul(q, prev.low), sat_mul(p - q, prev.high))};
  }
}

// Visits the digits of n_i from most to least significant.
template <typename Visit>
void unrank_admissible(std::uint64_t i, const QuadraticBase& base, Visit&& visit) {
  const std::uint64_t p = base.p();
  const std::uint64_t q = base.q();
  CountTable counts;
  counts_covering(i, p, q, counts);
  const std::size_t length = counts.size - 1;
  for (std::size_t pos = length; pos-- > 0;) {
    const auto& below = counts.level[pos];
    const std::uint64_t low_block = sat_mul(q, below.low);
    std::uint64_t digit;
    if (i < low_block) {
      digit = i / below.low;
      i %= below.low;
    } else {
      i -= low_block;
      digit = q + i / below.high;
      i %= below.high;
    }
    visit(pos, static_cast<std::uint32_t>(digit));
  }
}

}  // namespace

IntegerBase::IntegerBase(std::uint64_t b) : b_(b) {
  if (b < 2) throw std::invalid_argument("integer base must be >= 2, got " + std::to_string(b));
}

QuadraticBase quadratic_root(std::uint32_t p, std::uint32_t q) {
  if (p < 1 || q < 1 || q > p || p > (1u << 30)) {
    throw std::invalid_argument("quadratic base requires 1 <= q <= p <= 2^30, got (" +
                                std::to_string(p) + "," + std::to_string(q) + ")");
  }
  const std::uint64_t disc = std::uint64_t{p} * p + 4 * std::uint64_t{q};
  const std::uint64_t r = isqrt(disc);
  if (r * r == disc) {
    throw DegenerateBaseError("degenerate base: x^2 - " + std::to_string(p) + "x - " +
                              std::to_string(q) + " has a rational root");
  }

  // disc = root_factor^2 * d_free by trial division.
  std::uint64_t rest = disc;
  std::uint64_t root_factor = 1;
  std::uint64_t d_free = 1;
  for (std::uint64_t f = 2; f * f <= rest; ++f) {
    unsigned e = 0;
    while (rest % f == 0) {
      rest /= f;
      ++e;
    }
    for (unsigned j = 0; j < e / 2; ++j) root_factor *= f;
    if (e % 2 == 1) d_free *= f;
  }
  d_free *= rest;

  QuadraticBase qb;
  qb.p_ = p;
  qb.q_ = q;
  qb.disc_ = disc;
  qb.d_free_ = d_free;
  qb.root_factor_ = root_factor;
  qb.gamma_ = (static_cast<double>(p) + std::sqrt(static_cast<double>(disc))) / 2.0;
  return qb;
}

double base_value(const Base& base) noexcept {
  return std::visit([](const auto& b) { return b.value(); }, base);
}

bool is_integer_base(const Base& base) noexcept {
  return std::holds_alternative<IntegerBase>(base);
}

std::string to_string(const Base& base) {
  if (const auto* ib = std::get_if<IntegerBase>(&base)) return std::to_string(ib->b());
  const auto& qb = std::get<QuadraticBase>(base);
  return "gamma(" + std::to_string(qb.p()) + "," + std::to_string(qb.q()) + ")";
}

DigitString::DigitString(std::uint32_t alphabet, std::vector<std::uint32_t> digits)
    : alphabet_(alphabet), digits_(std::move(digits)) {
  if (alphabet_ < 2) throw std::invalid_argument("digit alphabet must be >= 2");
  for (auto d : digits_) {
    if (d >= alphabet_) throw std::invalid_argument("digit out of range for alphabet");
  }
  if (!digits_.empty() && digits_.back() == 0) {
    throw std::invalid_argument("digit string is not canonical (leading zero)");
  }
}

GammaPower gamma_power(const QuadraticBase& base, std::uint32_t k) {
  if (k < 1) throw std::invalid_argument("gamma_power requires k >= 1");
  GammaPower g{1, 0};
  for (std::uint32_t j = 1; j < k; ++j) {
    BigInt u_next = base.p() * g.u + g.v;
    g.v = base.q() * g.u;
    g.u = std::move(u_next);
  }
  return g;
}

DigitString digits_of(std::uint64_t n, std::uint32_t alphabet) {
  if (alphabet < 2) throw std::invalid_argument("digit alphabet must be >= 2");
  std::vector<std::uint32_t> digits;
  while (n != 0) {
    digits.push_back(static_cast<std::uint32_t>(n % alphabet));
    n /= alphabet;
  }
  return DigitString(alphabet, std::move(digits));
}

bool admissible(std::uint64_t n, const QuadraticBase& base) {
  const std::uint64_t radix = base.digit_base();
  std::uint64_t digit = n % radix;
  while (n != 0) {
    n /= radix;
    const std::uint64_t above = n % radix;
    if (digit == base.p() && above >= base.q()) return false;
    digit = above;
  }
  return true;
}

std::vector<std::uint32_t> nth_admissible_digits(std::uint64_t i, const QuadraticBase& base) {
  std::vector<std::uint32_t> digits;
  unrank_admissible(i, base, [&](std::size_t pos, std::uint32_t d) {
    if (digits.empty()) digits.resize(pos + 1);
    digits[pos] = d;
  });
  return digits;
}

std::uint64_t nth_admissible(std::uint64_t i, const QuadraticBase& base) {
  std::uint64_t n = 0;
  bool overflow = false;
  const std::uint64_t radix = base.digit_base();
  unrank_admissible(i, base, [&](std::size_t, std::uint32_t d) {
    overflow = overflow || __builtin_mul_overflow(n, radix, &n) || __builtin_add_overflow(n, d, &n);
  });
  if (overflow) throw std::overflow_error("admissible integer does not fit in 64 bits");
  return n;
}

double radical_inverse_int(std::uint64_t i, const IntegerBase& base) noexcept {
  const std::uint64_t b = base.b();
  constexpr std::uint64_t kExact = std::uint64_t{1} << 53;

  // Reverse the digits in chunks whose denominators stay below 2^53, so the
  // common case (one chunk) is a single correctly rounded division.
  struct Chunk {
    std::uint64_t reversed;
    std::uint64_t scale;
  };
  std::array<Chunk, 64> chunks{};
  std::size_t count = 0;
  while (i != 0) {
    Chunk c{0, 1};
    do {
      c.reversed = c.reversed * b + i % b;
      c.scale *= b;
      i /= b;
    } while (i != 0 && c.scale <= kExact / b);
    chunks[count++] = c;
  }

  double value = 0.0;
  for (std::size_t c = count; c-- > 0;) {
    value = (static_cast<double>(chunks[c].reversed) + value) / static_cast<double>(chunks[c].scale);
  }
  return value < 1.0 ? value : std::nextafter(1.0, 0.0);
}

double radical_inverse_quad(std::uint64_t i, const QuadraticBase& base) {
  const double gamma = base.gamma();
  double value = 0.0;
  unrank_admissible(i, base, [&](std::size_t, std::uint32_t d) {
    // Digits arrive most significant first.
    value = (value + d) / gamma;
  });
  return value < 1.0 ? value : std::nextafter(1.0, 0.0);
}

double radical_inverse(std::uint64_t i, const Base& base) {
  if (const auto* ib = std::get_if<IntegerBase>(&base)) return radical_inverse_int(i, *ib);
  return radical_inverse_quad(i, std::get<QuadraticBase>(base));
}

bool is_prime(std::uint64_t n) noexcept {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  if (n % 3 == 0) return n == 3;
  for (std::uint64_t f = 5; f * f <= n; f += 6) {
    if (n % f == 0 || n % (f + 2) == 0) return false;
  }
  return true;
}

}  // namespace ihalton
