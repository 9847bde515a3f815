#pragma once

// Integer and quadratic-irrational generation bases, admissible digit
// expansions, and one-dimensional radical-inverse (van der Corput) maps.

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace ihalton {

using BigInt = boost::multiprecision::cpp_int;

/// Thrown when (p, q) yields a rational root (p^2 + 4q is a perfect square).
class DegenerateBaseError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class IntegerBase {
 public:
  explicit IntegerBase(std::uint64_t b);

  std::uint64_t b() const noexcept { return b_; }
  double value() const noexcept { return static_cast<double>(b_); }

  friend bool operator==(const IntegerBase&, const IntegerBase&) = default;

 private:
  std::uint64_t b_;
};

/// Largest root gamma of x^2 - p x - q with 1 <= q <= p. Digits of the
/// associated van der Corput sequence live in base p + 1.
///
/// The discriminant D = p^2 + 4q is stored factored as D = root_factor^2 * d_free
/// with d_free square-free, so gamma = (p + root_factor * sqrt(d_free)) / 2.
class QuadraticBase {
 public:
  std::uint32_t p() const noexcept { return p_; }
  std::uint32_t q() const noexcept { return q_; }
  double gamma() const noexcept { return gamma_; }
  double value() const noexcept { return gamma_; }
  std::uint64_t discriminant() const noexcept { return disc_; }
  std::uint64_t d_free() const noexcept { return d_free_; }
  std::uint64_t root_factor() const noexcept { return root_factor_; }
  std::uint32_t digit_base() const noexcept { return p_ + 1; }

  friend bool operator==(const QuadraticBase& a, const QuadraticBase& b) noexcept {
    return a.p_ == b.p_ && a.q_ == b.q_;
  }

 private:
  friend QuadraticBase quadratic_root(std::uint32_t p, std::uint32_t q);
  QuadraticBase() = default;

  std::uint32_t p_ = 0;
  std::uint32_t q_ = 0;
  double gamma_ = 0.0;
  std::uint64_t disc_ = 0;
  std::uint64_t d_free_ = 0;
  std::uint64_t root_factor_ = 0;
};

using Base = std::variant<IntegerBase, QuadraticBase>;

double base_value(const Base& base) noexcept;
bool is_integer_base(const Base& base) noexcept;
std::string to_string(const Base& base);

/// Finite digit expansion, least-significant digit first. Zero is the empty
/// string; otherwise the most significant digit is non-zero.
class DigitString {
 public:
  DigitString(std::uint32_t alphabet, std::vector<std::uint32_t> digits);

  std::uint32_t alphabet() const noexcept { return alphabet_; }
  std::span<const std::uint32_t> digits() const noexcept { return digits_; }
  std::size_t size() const noexcept { return digits_.size(); }
  bool empty() const noexcept { return digits_.empty(); }
  std::uint32_t operator[](std::size_t l) const { return digits_.at(l); }

  friend bool operator==(const DigitString&, const DigitString&) = default;

 private:
  std::uint32_t alphabet_;
  std::vector<std::uint32_t> digits_;
};

/// gamma^k = u * gamma + v, exactly.
struct GammaPower {
  BigInt u;
  BigInt v;
};

/// Validates 1 <= q <= p and irrationality of the root.
/// Throws std::invalid_argument for out-of-range (p, q) and DegenerateBaseError
/// when p^2 + 4q is a perfect square.
QuadraticBase quadratic_root(std::uint32_t p, std::uint32_t q);

/// Iterates u_{k+1} = p u_k + v_k, v_{k+1} = q u_k from (u_1, v_1) = (1, 0).
GammaPower gamma_power(const QuadraticBase& base, std::uint32_t k);

DigitString digits_of(std::uint64_t n, std::uint32_t alphabet);

/// True iff every digit p in the base-(p+1) expansion of n has an adjacent
/// more-significant digit (zero beyond the expansion) strictly less than q.
bool admissible(std::uint64_t n, const QuadraticBase& base);

/// The i-th admissible natural (n_0 = 0), by direct unranking.
/// Throws std::overflow_error if n_i does not fit in 64 bits.
std::uint64_t nth_admissible(std::uint64_t i, const QuadraticBase& base);

/// Base-(p+1) digits of n_i, least-significant first, without forming n_i.
std::vector<std::uint32_t> nth_admissible_digits(std::uint64_t i, const QuadraticBase& base);

double radical_inverse_int(std::uint64_t i, const IntegerBase& base) noexcept;
double radical_inverse_quad(std::uint64_t i, const QuadraticBase& base);
double radical_inverse(std::uint64_t i, const Base& base);

bool is_prime(std::uint64_t n) noexcept;

}  // namespace ihalton
