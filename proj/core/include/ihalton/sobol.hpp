#pragma once

// Sobol' sequence in Gray-code order from Joe-Kuo style direction numbers.

#include <array>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace ihalton {

inline constexpr unsigned kSobolBits = 32;

class DirectionParseError : public std::runtime_error {
 public:
  enum class Kind { Empty, Malformed, EvenM, MTooLarge, Gap };

  DirectionParseError(Kind kind, std::size_t line, const std::string& what);

  Kind kind() const noexcept { return kind_; }
  /// 1-based line number; 0 for whole-stream errors.
  std::size_t line() const noexcept { return line_; }

 private:
  Kind kind_;
  std::size_t line_;
};

/// Primitive polynomial data for dimensions 2..max_dimension(); dimension 1 is
/// van der Corput in base 2 and carries no entry.
class DirectionTable {
 public:
  struct Entry {
    std::uint32_t dimension = 0;
    std::uint32_t s = 0;
    std::uint32_t a = 0;
    std::vector<std::uint32_t> m;
  };

  DirectionTable() = default;
  explicit DirectionTable(std::vector<Entry> entries);

  std::size_t max_dimension() const noexcept { return entries_.size() + 1; }
  const std::vector<Entry>& entries() const noexcept { return entries_; }
  /// Entry for dimension j >= 2.
  const Entry& entry(std::size_t j) const { return entries_.at(j - 2); }

 private:
  std::vector<Entry> entries_;
};

/// Header line (if any), then "d s a m_1 ... m_s" per line.
DirectionTable load_direction_numbers(std::istream& in);
DirectionTable load_direction_numbers(const std::filesystem::path& path);

/// Direction numbers v_{j,c} = m_{j,c} << (32 - c) for c = 1..32.
using DirectionVector = std::array<std::uint32_t, kSobolBits>;
std::vector<DirectionVector> direction_vectors(const DirectionTable& table, std::size_t d);

/// Direct Gray-code formula: X_j(i) = XOR of v_{j,c} over set bits c of i ^ (i >> 1).
class SobolGenerator {
 public:
  SobolGenerator(const DirectionTable& table, std::size_t d);

  std::size_t dimension() const noexcept { return v_.size(); }
  void numerators(std::uint64_t i, std::span<std::uint32_t> out) const;
  void point(std::uint64_t i, std::span<double> out) const;

 private:
  std::vector<DirectionVector> v_;
};

std::vector<double> sobol_point(std::uint64_t i, std::size_t d, const DirectionTable& table);

/// Sequential iterator: one XOR per coordinate per step.
class SobolState {
 public:
  SobolState(const DirectionTable& table, std::size_t d);

  std::uint64_t index() const noexcept { return index_; }
  std::span<const std::uint32_t> numerators() const noexcept { return x_; }
  void point(std::span<double> out) const;
  void advance();
  void reset(std::uint64_t i);

 private:
  std::vector<DirectionVector> v_;
  std::vector<std::uint32_t> x_;
  std::uint64_t index_ = 0;
};

}  // namespace ihalton
