#pragma once

// Nested uniform (Owen) scrambling in an integer base, with permutations
// derived on demand from a keyed counter-based hash instead of a stored tree.
//
// The permutation applied to digit l of a coordinate value depends on
// (seed, coordinate, base, original digits 0..l-1). Digits beyond `depth` are
// replaced by a uniform tail keyed on the full original digit string.

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "ihalton/interlace.hpp"
#include "ihalton/numbase.hpp"

namespace ihalton {

inline constexpr std::uint32_t kMaxScrambleDepth = 34;

/// min(ceil(53 / log2(base)), 34).
std::uint32_t default_scramble_depth(std::uint64_t base);

struct ScrambleSpec {
  std::uint64_t seed = 0;
  std::uint32_t coordinate = 0;
  std::uint64_t base = 2;
  std::uint32_t depth = 0;

  static ScrambleSpec make(std::uint64_t seed, std::uint32_t coordinate, std::uint64_t base);
  void validate() const;
};

/// IntegerBase(b) -> b, QuadraticBase(p, q) -> p + 1.
std::uint64_t scramble_base_for(const Base& base) noexcept;

/// The full random permutation of {0..base-1} at the node addressed by `prefix`
/// (original digits, least significant first).
std::vector<std::uint32_t> node_permutation(std::uint64_t seed, std::uint32_t coordinate,
                                            std::uint64_t base,
                                            std::span<const std::uint32_t> prefix);

double scramble_value(double x, const ScrambleSpec& spec);

/// Test hook: nested scrambling with caller-supplied node permutations.
/// `image(prefix, digit)` returns the permuted digit at the node for `prefix`.
/// With no tail, the output is the truncated scrambled expansion itself.
using NodeImageFn =
    std::function<std::uint32_t(std::span<const std::uint32_t> prefix, std::uint32_t digit)>;
double scramble_value_with(double x, std::uint64_t base, std::uint32_t depth,
                           const NodeImageFn& image, std::optional<double> tail);

/// Interlaced Halton sequence randomized coordinate-wise: integer coordinates
/// are scrambled in their own base, quadratic ones in base p + 1.
class RandomizedSequence {
 public:
  RandomizedSequence(BaseSchedule schedule, std::uint64_t seed);

  const BaseSchedule& schedule() const noexcept { return schedule_; }
  std::uint64_t seed() const noexcept { return seed_; }
  const std::vector<ScrambleSpec>& specs() const noexcept { return specs_; }
  std::size_t dimension() const noexcept { return specs_.size(); }

  void point(std::uint64_t i, std::span<double> out) const;
  std::vector<double> point(std::uint64_t i) const;

 private:
  BaseSchedule schedule_;
  std::uint64_t seed_;
  std::vector<ScrambleSpec> specs_;
};

std::vector<double> randomized_point(std::uint64_t i, const RandomizedSequence& rseq);

}  // namespace ihalton
