#pragma once

// Pair-collision statistics over elementary intervals.
//
// For a point set P_N and per-coordinate bases b and levels k, M counts the
// ordered pairs of distinct points sharing a box
// prod_j [a_j / b_j^k_j, (a_j + 1) / b_j^k_j), and
// C = prod_j b_j^k_j * M / (N (N - 1)). C = 1 is the expectation for iid
// uniform points; P is completely quasi-equidistributed when C <= 1 for all k.

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ihalton/points.hpp"
#include "ihalton/sequence.hpp"

namespace ihalton {

class MultiBase {
 public:
  explicit MultiBase(std::vector<std::uint64_t> bases);

  std::size_t dimension() const noexcept { return bases_.size(); }
  const std::vector<std::uint64_t>& bases() const noexcept { return bases_; }
  std::uint64_t operator[](std::size_t j) const { return bases_.at(j); }

 private:
  std::vector<std::uint64_t> bases_;
};

struct CReport {
  std::vector<std::uint32_t> k;
  std::uint64_t M = 0;
  double C = 0.0;
};

/// Throws for points outside [0,1), dimension mismatch, or b_j^k_j >= 2^64.
std::uint64_t pair_collisions(const PointSet& points, const MultiBase& mb,
                              std::span<const std::uint32_t> k);

/// Throws if N < 2.
CReport c_value(const PointSet& points, const MultiBase& mb, std::span<const std::uint32_t> k);

struct CqeReport {
  bool cqe = true;
  double max_c = 0.0;
  std::vector<CReport> violations;
  std::vector<CReport> visited;
  /// Some k with M > 0 had a refinement beyond the resolution cap.
  bool cap_reached = false;
};

/// Breadth-first over k by total refinement from k = 0. Children of k with
/// M = 0 are pruned (M is monotone under refinement); k with
/// sum_j k_j log b_j > 2 log N + 4 log 2 are not visited.
CqeReport cqe_scan(const PointSet& points, const MultiBase& mb);

/// (x_{j1}, x_{j2}) for i = start .. start + n - 1.
std::vector<std::pair<double, double>> projection_dump(const PointSequence& seq, std::size_t j1,
                                                       std::size_t j2, std::size_t n,
                                                       std::uint64_t start = 0);

/// Header "k1,...,kd,M,C".
void write_creport_csv(std::ostream& out, std::span<const CReport> rows, std::size_t d);
/// Header "x,y".
void write_projection_csv(std::ostream& out, std::span<const std::pair<double, double>> rows);

/// %.17g, the round-trip form used in every CSV.
std::string format_double(double v);

}  // namespace ihalton
