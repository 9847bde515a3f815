#include "ihalton/diagnose.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <deque>
#include <limits>
#include <ostream>
#include <set>
#include <stdexcept>
#include <unordered_map>

#include "ihalton/fraction_digits.hpp"

namespace ihalton {

namespace {

struct BoxHash {
  std::size_t operator()(const std::vector<std::uint64_t>& box) const noexcept {
    std::uint64_t h = 0x243F6A8885A308D3ULL;
    for (auto a : box) {
      h ^= a + 0x9E3779B97F4A7C15ULL + (h << 6) + (h >> 2);
      h *= 0xFF51AFD7ED558CCDULL;
    }
    return static_cast<std::size_t>(h ^ (h >> 32));
  }
};

bool power_fits(std::uint64_t b, std::uint32_t k, std::uint64_t& out) {
  std::uint64_t v = 1;
  for (std::uint32_t i = 0; i < k; ++i) {
    if (v > std::numeric_limits<std::uint64_t>::max() / b) return false;
    v *= b;
  }
  out = v;
  return true;
}

void check_inputs(const PointSet& points, const MultiBase& mb, std::span<const std::uint32_t> k) {
  if (k.size() != mb.dimension()) throw std::invalid_argument("k and bases differ in length");
  if (!points.empty() && points.dimension() != mb.dimension()) {
    throw std::invalid_argument("point dimension does not match the number of bases");
  }
  for (std::size_t j = 0; j < k.size(); ++j) {
    std::uint64_t unused = 0;
    if (!power_fits(mb[j], k[j], unused)) {
      throw std::out_of_range("b^k exceeds 64 bits in coordinate " + std::to_string(j));
    }
  }
  for (double x : points.data()) {
    if (!(x >= 0.0 && x < 1.0)) throw std::domain_error("point coordinate outside [0,1)");
  }
}

double volume_of(const MultiBase& mb, std::span<const std::uint32_t> k) {
  double v = 1.0;
  for (std::size_t j = 0; j < k.size(); ++j) v *= std::pow(static_cast<double>(mb[j]), k[j]);
  return v;
}

std::uint64_t count_pairs(const PointSet& points, const MultiBase& mb,
                          std::span<const std::uint32_t> k) {
  const std::size_t d = mb.dimension();
  std::unordered_map<std::vector<std::uint64_t>, std::uint64_t, BoxHash> occupancy;
  occupancy.reserve(points.size());
  std::vector<std::uint64_t> box(d);
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto x = points[i];
    for (std::size_t j = 0; j < d; ++j) box[j] = elementary_index(x[j], mb[j], k[j]);
    ++occupancy[box];
  }
  std::uint64_t m = 0;
  for (const auto& [cell, n] : occupancy) m += n * (n - 1);
  return m;
}

CReport make_report(const PointSet& points, const MultiBase& mb, std::span<const std::uint32_t> k,
                    std::uint64_t m) {
  const auto n = static_cast<double>(points.size());
  return CReport{{k.begin(), k.end()}, m, volume_of(mb, k) * static_cast<double>(m) / (n * (n - 1.0))};
}

}  // namespace

MultiBase::MultiBase(std::vector<std::uint64_t> bases) : bases_(std::move(bases)) {
  if (bases_.empty()) throw std::invalid_argument("MultiBase needs at least one base");
  for (auto b : bases_) {
    if (b < 2) throw std::invalid_argument("diagnostic bases must be >= 2");
  }
}

std::uint64_t pair_collisions(const PointSet& points, const MultiBase& mb,
                              std::span<const std::uint32_t> k) {
  check_inputs(points, mb, k);
  return count_pairs(points, mb, k);
}

CReport c_value(const PointSet& points, const MultiBase& mb, std::span<const std::uint32_t> k) {
  if (points.size() < 2) throw std::invalid_argument("N < 2");
  check_inputs(points, mb, k);
  return make_report(points, mb, k, count_pairs(points, mb, k));
}

CqeReport cqe_scan(const PointSet& points, const MultiBase& mb) {
  if (points.size() < 2) throw std::invalid_argument("N < 2");
  const std::size_t d = mb.dimension();
  const std::vector<std::uint32_t> origin(d, 0);
  check_inputs(points, mb, origin);

  const double n = static_cast<double>(points.size());
  const double cap = 2.0 * std::log(n) + 4.0 * std::log(2.0) + 1e-9;
  std::vector<double> log_b(d);
  for (std::size_t j = 0; j < d; ++j) log_b[j] = std::log(static_cast<double>(mb[j]));

  CqeReport report;
  std::deque<std::vector<std::uint32_t>> frontier{origin};
  std::set<std::vector<std::uint32_t>> queued{origin};
  while (!frontier.empty()) {
    const auto k = std::move(frontier.front());
    frontier.pop_front();
    CReport row = make_report(points, mb, k, count_pairs(points, mb, k));
    report.max_c = std::max(report.max_c, row.C);
    if (row.C > 1.0) {
      report.cqe = false;
      report.violations.push_back(row);
    }
    const bool expand = row.M > 0;
    report.visited.push_back(std::move(row));
    if (!expand) continue;

    for (std::size_t j = 0; j < d; ++j) {
      auto child = k;
      ++child[j];
      double resolution = 0.0;
      for (std::size_t t = 0; t < d; ++t) resolution += child[t] * log_b[t];
      std::uint64_t unused = 0;
      if (resolution > cap || !power_fits(mb[j], child[j], unused)) {
        report.cap_reached = true;
        continue;
      }
      if (queued.insert(child).second) frontier.push_back(std::move(child));
    }
  }
  return report;
}

std::vector<std::pair<double, double>> projection_dump(const PointSequence& seq, std::size_t j1,
                                                       std::size_t j2, std::size_t n,
                                                       std::uint64_t start) {
  const std::size_t d = seq.dimension();
  if (j1 == j2 || j1 >= d || j2 >= d) {
    throw std::invalid_argument("projection dims must be distinct and below " + std::to_string(d));
  }
  std::vector<std::pair<double, double>> out;
  out.reserve(n);
  std::vector<double> x(d);
  for (std::size_t r = 0; r < n; ++r) {
    seq.point(start + r, x);
    out.emplace_back(x[j1], x[j2]);
  }
  return out;
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_creport_csv(std::ostream& out, std::span<const CReport> rows, std::size_t d) {
  for (std::size_t j = 1; j <= d; ++j) out << 'k' << j << ',';
  out << "M,C\n";
  for (const auto& row : rows) {
    if (row.k.size() != d) throw std::invalid_argument("CReport dimension mismatch");
    for (auto kj : row.k) out << kj << ',';
    out << row.M << ',' << format_double(row.C) << '\n';
  }
}

void write_projection_csv(std::ostream& out, std::span<const std::pair<double, double>> rows) {
  out << "x,y\n";
  for (const auto& [x, y] : rows) out << format_double(x) << ',' << format_double(y) << '\n';
}

}  // namespace ihalton
