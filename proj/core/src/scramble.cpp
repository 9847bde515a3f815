#include "ihalton/scramble.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <stdexcept>

#include "ihalton/fraction_digits.hpp"

namespace ihalton {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;
constexpr std::uint64_t kNodeDomain = 0x6F776E2D73637261ULL;
constexpr std::uint64_t kTailTag = 0x7461696C2D746167ULL;
constexpr std::uint32_t kMaxDepth = 64;

constexpr std::uint64_t fmix64(std::uint64_t k) noexcept {
  k ^= k >> 33;
  k *= 0xFF51AFD7ED558CCDULL;
  k ^= k >> 33;
  k *= 0xC4CEB9FE1A85EC53ULL;
  k ^= k >> 33;
  return k;
}

constexpr std::uint64_t splitmix(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Injective in v for fixed h and in h for fixed v.
constexpr std::uint64_t combine(std::uint64_t h, std::uint64_t v) noexcept {
  return fmix64((h * kGolden) ^ fmix64(v + 0x632BE59BD9B4E019ULL));
}

std::uint64_t root_key(std::uint64_t seed, std::uint32_t coordinate, std::uint64_t base) noexcept {
  return combine(combine(combine(kNodeDomain, seed), coordinate), base);
}

// Counter-based stream: the t-th draw of a node is a pure function of (key, t).
class NodeStream {
 public:
  explicit NodeStream(std::uint64_t key) noexcept : key_(key) {}

  std::uint64_t next() noexcept { return splitmix(key_ + (++counter_) * kGolden); }

  // Unbiased integer in [0, range) (Lemire's multiply-shift with rejection).
  std::uint64_t bounded(std::uint64_t range) noexcept {
    uint128 m = static_cast<uint128>(next()) * range;
    auto low = static_cast<std::uint64_t>(m);
    if (low < range) {
      const std::uint64_t threshold = (0 - range) % range;
      while (low < threshold) {
        m = static_cast<uint128>(next()) * range;
        low = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

// Identity-initialised array whose reset is O(1) via epoch stamps.
class PermutationScratch {
 public:
  void reset(std::uint64_t base) {
    if (value_.size() < base) {
      value_.resize(base);
      stamp_.resize(base, 0);
    }
    if (++epoch_ == 0) {
      std::fill(stamp_.begin(), stamp_.end(), 0);
      epoch_ = 1;
    }
  }
  std::uint32_t get(std::uint64_t i) const noexcept {
    return stamp_[i] == epoch_ ? value_[i] : static_cast<std::uint32_t>(i);
  }
  void set(std::uint64_t i, std::uint32_t v) noexcept {
    value_[i] = v;
    stamp_[i] = epoch_;
  }

 private:
  std::vector<std::uint32_t> value_;
  std::vector<std::uint32_t> stamp_;
  std::uint32_t epoch_ = 0;
};

// Image of `digit` under the node's forward Fisher-Yates shuffle; position
// `digit` is final after step `digit`, so later steps are skipped.
std::uint32_t node_image(std::uint64_t key, std::uint64_t base, std::uint32_t digit,
                         PermutationScratch& scratch) {
  NodeStream stream(key);
  if (base == 2) return digit ^ static_cast<std::uint32_t>(stream.bounded(2));
  scratch.reset(base);
  for (std::uint64_t i = 0; i <= digit; ++i) {
    const std::uint64_t j = i + stream.bounded(base - i);
    const std::uint32_t vi = scratch.get(i);
    scratch.set(i, scratch.get(j));
    scratch.set(j, vi);
  }
  return scratch.get(digit);
}

double uniform53(std::uint64_t key) noexcept {
  return static_cast<double>(splitmix(key) >> 11) * 0x1.0p-53;
}

PermutationScratch& thread_scratch() {
  thread_local PermutationScratch scratch;
  return scratch;
}

// floor(y * base^level), exact.
std::uint64_t cell_index(double y, std::uint64_t base, std::uint32_t level) {
  if (std::has_single_bit(base)) {
    return static_cast<std::uint64_t>(std::ldexp(y, static_cast<int>(level) * std::countr_zero(base)));
  }
  return elementary_index(y, base, level);
}

// Finest level whose cells are wide enough (base^k <= 2^44) to always contain doubles.
std::uint32_t settle_level(std::uint64_t base, std::uint32_t depth) noexcept {
  constexpr std::uint64_t kLimit = std::uint64_t{1} << 44;
  std::uint32_t k = 0;
  std::uint64_t volume = 1;
  while (k < depth && volume <= kLimit / base) {
    volume *= base;
    ++k;
  }
  return k;
}

// Assemble sum_l digits[l] base^-(l+1) + tail base^-depth, then nudge the
// double into the exact cell the scrambled digits name at the settle level, so
// elementary-interval membership is preserved bit-exactly.
double assemble(std::span<const std::uint32_t> digits, std::uint64_t base, double tail) {
  const auto b = static_cast<double>(base);
  double y = tail;
  for (std::size_t l = digits.size(); l-- > 0;) y = (y + digits[l]) / b;
  if (!(y < 1.0)) y = std::nextafter(1.0, 0.0);

  const std::uint32_t level = settle_level(base, static_cast<std::uint32_t>(digits.size()));
  std::uint64_t target = 0;
  for (std::uint32_t l = 0; l < level; ++l) target = target * base + digits[l];
  for (;;) {
    const std::uint64_t cell = cell_index(y, base, level);
    if (cell < target) {
      y = std::nextafter(y, 1.0);
    } else if (cell > target) {
      y = std::nextafter(y, 0.0);
    } else {
      return y;
    }
  }
}

}  // namespace

std::uint32_t default_scramble_depth(std::uint64_t base) {
  if (base < 2) throw std::invalid_argument("scramble base must be >= 2");
  constexpr std::uint64_t kResolution = std::uint64_t{1} << 53;
  std::uint32_t depth = 0;
  uint128 volume = 1;
  while (volume < kResolution) {
    volume *= base;
    ++depth;
  }
  return std::min(depth, kMaxScrambleDepth);
}

ScrambleSpec ScrambleSpec::make(std::uint64_t seed, std::uint32_t coordinate, std::uint64_t base) {
  return ScrambleSpec{seed, coordinate, base, default_scramble_depth(base)};
}

void ScrambleSpec::validate() const {
  if (base < 2 || base > (std::uint64_t{1} << 32)) {
    throw std::invalid_argument("scramble base must lie in [2, 2^32]");
  }
  if (depth < 1 || depth > kMaxDepth) throw std::invalid_argument("scramble depth must lie in [1, 64]");
}

std::uint64_t scramble_base_for(const Base& base) noexcept {
  if (const auto* ib = std::get_if<IntegerBase>(&base)) return ib->b();
  return std::get<QuadraticBase>(base).digit_base();
}

std::vector<std::uint32_t> node_permutation(std::uint64_t seed, std::uint32_t coordinate,
                                            std::uint64_t base,
                                            std::span<const std::uint32_t> prefix) {
  if (base < 2) throw std::invalid_argument("scramble base must be >= 2");
  std::uint64_t key = root_key(seed, coordinate, base);
  for (auto d : prefix) key = combine(key, d);

  std::vector<std::uint32_t> perm(base);
  for (std::uint64_t i = 0; i < base; ++i) perm[i] = static_cast<std::uint32_t>(i);
  NodeStream stream(key);
  for (std::uint64_t i = 0; i + 1 < base; ++i) {
    std::swap(perm[i], perm[i + stream.bounded(base - i)]);
  }
  return perm;
}

double scramble_value(double x, const ScrambleSpec& spec) {
  spec.validate();
  if (!(x >= 0.0 && x < 1.0)) throw std::domain_error("scramble_value requires x in [0,1)");

  FractionDigits original(x, spec.base);
  PermutationScratch& scratch = thread_scratch();
  std::array<std::uint32_t, kMaxDepth> scrambled{};
  std::uint64_t key = root_key(spec.seed, spec.coordinate, spec.base);
  for (std::uint32_t l = 0; l < spec.depth; ++l) {
    const auto d = static_cast<std::uint32_t>(original.next());
    scrambled[l] = node_image(key, spec.base, d, scratch);
    key = combine(key, d);
  }
  const double tail = uniform53(combine(key, kTailTag));
  return assemble(std::span(scrambled).first(spec.depth), spec.base, tail);
}

double scramble_value_with(double x, std::uint64_t base, std::uint32_t depth,
                           const NodeImageFn& image, std::optional<double> tail) {
  if (base < 2) throw std::invalid_argument("scramble base must be >= 2");
  if (depth < 1 || depth > kMaxDepth) throw std::invalid_argument("scramble depth must lie in [1, 64]");
  if (!(x >= 0.0 && x < 1.0)) throw std::domain_error("scramble_value requires x in [0,1)");
  if (tail && !(*tail >= 0.0 && *tail < 1.0)) throw std::domain_error("tail must lie in [0,1)");

  FractionDigits original(x, base);
  std::vector<std::uint32_t> prefix;
  std::vector<std::uint32_t> scrambled;
  for (std::uint32_t l = 0; l < depth; ++l) {
    const auto d = static_cast<std::uint32_t>(original.next());
    const std::uint32_t out = image(prefix, d);
    if (out >= base) throw std::out_of_range("node image outside the digit alphabet");
    scrambled.push_back(out);
    prefix.push_back(d);
  }
  return assemble(scrambled, base, tail.value_or(0.0));
}

RandomizedSequence::RandomizedSequence(BaseSchedule schedule, std::uint64_t seed)
    : schedule_(std::move(schedule)), seed_(seed) {
  specs_.reserve(schedule_.dimension());
  for (std::size_t j = 0; j < schedule_.dimension(); ++j) {
    specs_.push_back(
        ScrambleSpec::make(seed_, static_cast<std::uint32_t>(j), scramble_base_for(schedule_[j])));
  }
}

void RandomizedSequence::point(std::uint64_t i, std::span<double> out) const {
  interlaced_point(i, schedule_, out);
  for (std::size_t j = 0; j < out.size(); ++j) out[j] = scramble_value(out[j], specs_[j]);
}

std::vector<double> RandomizedSequence::point(std::uint64_t i) const {
  std::vector<double> x(dimension());
  point(i, x);
  return x;
}

std::vector<double> randomized_point(std::uint64_t i, const RandomizedSequence& rseq) {
  return rseq.point(i);
}

}  // namespace ihalton
