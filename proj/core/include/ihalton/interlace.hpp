#pragma once

// Base schedule selection for the interlaced Halton sequence, and point
// generation for the classical and interlaced constructions.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "ihalton/numbase.hpp"

namespace ihalton {

struct SelectionConfig {
  std::uint32_t power_k_max = 20;
  std::uint32_t power_m_max = 20;
  double near_integer_threshold = 0.1;

  void validate() const;
};

/// Ordered list of generation bases, one per coordinate.
///
/// Construction checks the structural invariants: values strictly increasing,
/// integer bases are the consecutive primes 2, 3, 5, ... and every quadratic
/// base has gcd(p, q) = 1. Pairwise rational-power screening is done by
/// select_bases, not re-checked here.
class BaseSchedule {
 public:
  BaseSchedule() = default;
  explicit BaseSchedule(std::vector<Base> bases);

  std::size_t dimension() const noexcept { return bases_.size(); }
  const std::vector<Base>& bases() const noexcept { return bases_; }
  const Base& operator[](std::size_t j) const { return bases_.at(j); }

  /// One base per line: "int <b>" or "quad <p> <q> <gamma, 16 decimals>".
  std::string to_text() const;
  static BaseSchedule from_text(std::istream& in);

  friend bool operator==(const BaseSchedule&, const BaseSchedule&) = default;

 private:
  std::vector<Base> bases_;
};

/// True iff candidate^k / gamma2^m is rational for some quadratic gamma2 in
/// `existing`, k in [1, power_k_max], m in [1, power_m_max]. Exact arithmetic
/// in Q(sqrt(d_free)); integer bases never conflict.
bool check_power_conflict(const QuadraticBase& candidate, std::span<const Base> existing,
                          const SelectionConfig& cfg = {});

/// |round(gamma, 1) - round(gamma, 0)| < threshold, rounding half away from zero.
bool near_integer(double gamma, double threshold);

BaseSchedule select_bases(std::size_t d, const SelectionConfig& cfg = {});

/// The first d primes as integer bases.
BaseSchedule classical_schedule(std::size_t d);

std::vector<std::uint64_t> first_primes(std::size_t count);

std::vector<double> halton_point(std::uint64_t i, std::size_t d);
std::vector<double> interlaced_point(std::uint64_t i, const BaseSchedule& schedule);
void interlaced_point(std::uint64_t i, const BaseSchedule& schedule, std::span<double> out);

}  // namespace ihalton
