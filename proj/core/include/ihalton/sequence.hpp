#pragma once

// Uniform handle over the point generators used by diagnostics and the
// integration experiments. Every point(i) is a pure function of i, so ranges
// of indices can be split across threads.

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ihalton/interlace.hpp"
#include "ihalton/points.hpp"
#include "ihalton/scramble.hpp"
#include "ihalton/sobol.hpp"

namespace ihalton {

class PointSequence {
 public:
  virtual ~PointSequence() = default;

  virtual std::size_t dimension() const noexcept = 0;
  virtual std::string name() const = 0;
  virtual void point(std::uint64_t i, std::span<double> out) const = 0;
  /// Randomized streams may start at i = 0; deterministic ones skip the origin.
  virtual bool randomized() const noexcept { return false; }

  std::uint64_t default_start() const noexcept { return randomized() ? 0 : 1; }
  std::vector<double> point(std::uint64_t i) const;
  PointSet generate(std::uint64_t start, std::size_t n) const;
};

class HaltonSequence final : public PointSequence {
 public:
  explicit HaltonSequence(std::size_t d);

  std::size_t dimension() const noexcept override { return bases_.size(); }
  std::string name() const override { return "halton"; }
  void point(std::uint64_t i, std::span<double> out) const override;
  using PointSequence::point;

  const std::vector<IntegerBase>& bases() const noexcept { return bases_; }

 private:
  std::vector<IntegerBase> bases_;
};

class InterlacedSequence final : public PointSequence {
 public:
  explicit InterlacedSequence(BaseSchedule schedule);

  std::size_t dimension() const noexcept override { return schedule_.dimension(); }
  std::string name() const override { return "interlaced"; }
  void point(std::uint64_t i, std::span<double> out) const override;
  using PointSequence::point;

  const BaseSchedule& schedule() const noexcept { return schedule_; }

 private:
  BaseSchedule schedule_;
};

/// One van der Corput coordinate in an arbitrary base.
class VanDerCorputSequence final : public PointSequence {
 public:
  explicit VanDerCorputSequence(Base base) : base_(base) {}

  std::size_t dimension() const noexcept override { return 1; }
  std::string name() const override { return "vdc:" + to_string(base_); }
  void point(std::uint64_t i, std::span<double> out) const override;
  using PointSequence::point;

  const Base& base() const noexcept { return base_; }

 private:
  Base base_;
};

class SobolSequence final : public PointSequence {
 public:
  SobolSequence(const DirectionTable& table, std::size_t d);

  std::size_t dimension() const noexcept override { return gen_.dimension(); }
  std::string name() const override { return "sobol"; }
  void point(std::uint64_t i, std::span<double> out) const override;
  using PointSequence::point;

 private:
  SobolGenerator gen_;
};

/// Nested scrambling of an inner sequence, coordinate j in base scramble_bases[j].
class ScrambledSequence final : public PointSequence {
 public:
  ScrambledSequence(std::shared_ptr<const PointSequence> inner,
                    std::vector<std::uint64_t> scramble_bases, std::uint64_t seed);

  std::size_t dimension() const noexcept override { return specs_.size(); }
  std::string name() const override { return inner_->name() + "+owen"; }
  void point(std::uint64_t i, std::span<double> out) const override;
  bool randomized() const noexcept override { return true; }
  using PointSequence::point;

  std::uint64_t seed() const noexcept { return seed_; }
  const std::vector<ScrambleSpec>& specs() const noexcept { return specs_; }

 private:
  std::shared_ptr<const PointSequence> inner_;
  std::uint64_t seed_;
  std::vector<ScrambleSpec> specs_;
};

/// Counter-based pseudorandom points in (0,1)^d for plain Monte Carlo.
class RandomSequence final : public PointSequence {
 public:
  RandomSequence(std::size_t d, std::uint64_t seed);

  std::size_t dimension() const noexcept override { return d_; }
  std::string name() const override { return "mc"; }
  void point(std::uint64_t i, std::span<double> out) const override;
  bool randomized() const noexcept override { return true; }
  using PointSequence::point;

 private:
  std::size_t d_;
  std::uint64_t seed_;
};

enum class SequenceKind { Halton, Interlaced, Sobol, Random };

SequenceKind parse_sequence_kind(std::string_view text);
std::string_view sequence_kind_name(SequenceKind kind) noexcept;

struct SequenceOptions {
  SequenceKind kind = SequenceKind::Interlaced;
  std::size_t d = 1;
  bool scramble = false;
  std::uint64_t seed = 0;
  /// Required for Sobol'.
  std::shared_ptr<const DirectionTable> directions;
};

/// Scrambled Halton and interlaced coordinates use scramble_base_for; Sobol'
/// uses base 2. Random sequences ignore `scramble`.
std::shared_ptr<const PointSequence> make_sequence(const SequenceOptions& options);

}  // namespace ihalton
