#include "ihalton/interlace.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <numeric>
#include <optional>
#include <sstream>

namespace ihalton {

namespace {

// gamma^k written as (x + y sqrt(d_free)) / 2 with integer x, y.
struct FieldVector {
  BigInt x;
  BigInt y;
};

std::vector<FieldVector> power_vectors(const QuadraticBase& base, std::uint32_t max_power) {
  std::vector<FieldVector> out;
  out.reserve(max_power);
  GammaPower g{1, 0};
  for (std::uint32_t k = 1; k <= max_power; ++k) {
    if (k > 1) {
      BigInt u_next = base.p() * g.u + g.v;
      g.v = base.q() * g.u;
      g.u = std::move(u_next);
    }
    // gamma = (p + f sqrt(d_free)) / 2, so u gamma + v = (u p + 2 v + u f sqrt(d_free)) / 2.
    out.push_back({g.u * base.p() + 2 * g.v, g.u * base.root_factor()});
  }
  return out;
}

double round_half_away(double x, int decimals) {
  const double scale = std::pow(10.0, decimals);
  return std::round(x * scale) / scale;
}

std::string format_fixed16(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.16f", v);
  return buf;
}

}  // namespace

void SelectionConfig::validate() const {
  if (power_k_max < 2 || power_m_max < 2) {
    throw std::invalid_argument("power bounds must be >= 2");
  }
  if (!(near_integer_threshold > 0.0 && near_integer_threshold < 1.0)) {
    throw std::invalid_argument("near-integer threshold must lie in (0,1)");
  }
}

BaseSchedule::BaseSchedule(std::vector<Base> bases) : bases_(std::move(bases)) {
  std::uint64_t expected_prime = 2;
  for (std::size_t j = 0; j < bases_.size(); ++j) {
    if (j > 0 && !(base_value(bases_[j - 1]) < base_value(bases_[j]))) {
      throw std::invalid_argument("schedule bases must be strictly increasing (position " +
                                  std::to_string(j) + ")");
    }
    if (const auto* ib = std::get_if<IntegerBase>(&bases_[j])) {
      if (ib->b() != expected_prime) {
        throw std::invalid_argument("schedule integer base " + std::to_string(ib->b()) +
                                    " breaks the prime sequence; expected " +
                                    std::to_string(expected_prime));
      }
      do ++expected_prime;
      while (!is_prime(expected_prime));
    } else {
      const auto& qb = std::get<QuadraticBase>(bases_[j]);
      if (std::gcd(qb.p(), qb.q()) != 1) {
        throw std::invalid_argument("schedule quadratic base " + to_string(bases_[j]) +
                                    " has gcd(p,q) != 1");
      }
    }
  }
}

std::string BaseSchedule::to_text() const {
  std::string out;
  for (const auto& base : bases_) {
    if (const auto* ib = std::get_if<IntegerBase>(&base)) {
      out += "int " + std::to_string(ib->b()) + "\n";
    } else {
      const auto& qb = std::get<QuadraticBase>(base);
      out += "quad " + std::to_string(qb.p()) + " " + std::to_string(qb.q()) + " " +
             format_fixed16(qb.gamma()) + "\n";
    }
  }
  return out;
}

BaseSchedule BaseSchedule::from_text(std::istream& in) {
  std::vector<Base> bases;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream fields(line);
    std::string kind;
    if (!(fields >> kind) || kind.front() == '#') continue;
    const auto fail = [&](const std::string& why) {
      throw std::invalid_argument("schedule line " + std::to_string(line_no) + ": " + why);
    };
    if (kind == "int") {
      std::uint64_t b = 0;
      if (!(fields >> b)) fail("expected 'int <b>'");
      bases.emplace_back(IntegerBase(b));
    } else if (kind == "quad") {
      std::uint32_t p = 0, q = 0;
      double gamma = 0.0;
      if (!(fields >> p >> q >> gamma)) fail("expected 'quad <p> <q> <gamma>'");
      auto qb = quadratic_root(p, q);
      if (std::abs(qb.gamma() - gamma) > 1e-12 * qb.gamma()) fail("gamma does not match (p,q)");
      bases.emplace_back(qb);
    } else {
      fail("unknown base kind '" + kind + "'");
    }
    std::string extra;
    if (fields >> extra) fail("trailing fields");
  }
  return BaseSchedule(std::move(bases));
}

bool check_power_conflict(const QuadraticBase& candidate, std::span<const Base> existing,
                          const SelectionConfig& cfg) {
  std::optional<std::vector<FieldVector>> candidate_powers;
  for (const auto& base : existing) {
    const auto* other = std::get_if<QuadraticBase>(&base);
    if (other == nullptr) continue;
    // A rational ratio needs both powers in the same quadratic field.
    if (other->d_free() != candidate.d_free()) continue;
    if (!candidate_powers) candidate_powers = power_vectors(candidate, cfg.power_k_max);
    const auto other_powers = power_vectors(*other, cfg.power_m_max);
    for (const auto& a : *candidate_powers) {
      for (const auto& b : other_powers) {
        if (a.x * b.y == b.x * a.y) return true;
      }
    }
  }
  return false;
}

bool near_integer(double gamma, double threshold) {
  return std::abs(round_half_away(gamma, 1) - round_half_away(gamma, 0)) < threshold;
}

BaseSchedule select_bases(std::size_t d, const SelectionConfig& cfg) {
  if (d == 0) throw std::invalid_argument("select_bases requires d >= 1");
  cfg.validate();

  std::vector<Base> bases;
  bases.reserve(d);
  std::uint64_t next_prime = 2;
  for (std::uint32_t p = 1; bases.size() < d; ++p) {
    std::optional<QuadraticBase> accepted;
    for (std::uint32_t q = is_prime(p) ? p / 2 : 1; q <= p; ++q) {
      const QuadraticBase candidate = quadratic_root(p, q);
      if (check_power_conflict(candidate, bases, cfg) || std::gcd(p, q) != 1 ||
          near_integer(candidate.gamma(), cfg.near_integer_threshold)) {
        continue;
      }
      accepted = candidate;
      break;
    }
    if (!accepted) continue;

    if (accepted->gamma() > static_cast<double>(next_prime)) {
      bases.emplace_back(IntegerBase(next_prime));
      do ++next_prime;
      while (!is_prime(next_prime));
    }
    if (bases.size() == d) break;
    bases.emplace_back(*accepted);
  }
  return BaseSchedule(std::move(bases));
}

std::vector<std::uint64_t> first_primes(std::size_t count) {
  std::vector<std::uint64_t> primes;
  primes.reserve(count);
  for (std::uint64_t n = 2; primes.size() < count; ++n) {
    if (is_prime(n)) primes.push_back(n);
  }
  return primes;
}

BaseSchedule classical_schedule(std::size_t d) {
  if (d == 0) throw std::invalid_argument("classical schedule requires d >= 1");
  std::vector<Base> bases;
  for (auto b : first_primes(d)) bases.emplace_back(IntegerBase(b));
  return BaseSchedule(std::move(bases));
}

std::vector<double> halton_point(std::uint64_t i, std::size_t d) {
  if (d == 0) throw std::invalid_argument("halton_point requires d >= 1");
  std::vector<double> x;
  x.reserve(d);
  for (auto b : first_primes(d)) x.push_back(radical_inverse_int(i, IntegerBase(b)));
  return x;
}

void interlaced_point(std::uint64_t i, const BaseSchedule& schedule, std::span<double> out) {
  if (out.size() != schedule.dimension()) throw std::invalid_argument("output span has wrong size");
  for (std::size_t j = 0; j < out.size(); ++j) out[j] = radical_inverse(i, schedule[j]);
}

std::vector<double> interlaced_point(std::uint64_t i, const BaseSchedule& schedule) {
  std::vector<double> x(schedule.dimension());
  interlaced_point(i, schedule, x);
  return x;
}

}  // namespace ihalton
