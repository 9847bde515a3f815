#pragma once

// Benchmark integrands and (randomized) quasi-Monte Carlo estimators.
//
// Estimates are bit-reproducible for any thread count: indices are cut into
// fixed blocks of kEstimateBlock points, each block is summed in order, and
// block sums are combined by a fixed pairwise tree.

#include <cstdint>
#include <filesystem>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "ihalton/sequence.hpp"
#include "ihalton/sobol.hpp"

namespace ihalton {

inline constexpr std::uint64_t kEstimateBlock = 4096;

/// prod_j (|4 x_j - 2| + a_j) / (1 + a_j); unit integral.
struct F1Spec {
  std::vector<double> a;
  /// Short description for CSV output; the a_j are listed when empty.
  std::string label;
};

/// prod_j (1 + c (x_j - 1/2)); unit integral.
struct F2Spec {
  double c = 0.1;
  std::size_t d = 1;
};

/// Arithmetic-average call on d equally spaced observations u_j = j T / d,
/// forward Brownian increments.
struct AsianCallSpec {
  double S0 = 50.0;
  double K = 45.0;
  double r = 0.05;
  double sigma = 0.3;
  double T = 1.0;
  std::size_t d = 50;
};

using IntegrandSpec = std::variant<F1Spec, F2Spec, AsianCallSpec>;

/// a_j = j^power for j = 1..d.
F1Spec f1_power_weights(std::size_t d, int power);

void validate(const IntegrandSpec& spec);
std::size_t integrand_dimension(const IntegrandSpec& spec);
std::string integrand_name(const IntegrandSpec& spec);
/// ';'-separated parameter summary, safe inside a CSV field.
std::string integrand_params(const IntegrandSpec& spec);

double eval_f1(std::span<const double> x, std::span<const double> a);
double eval_f2(std::span<const double> x, double c);
/// Throws std::domain_error if some x_l is outside (0,1).
double asian_payoff(std::span<const double> x, const AsianCallSpec& spec);
double evaluate(const IntegrandSpec& spec, std::span<const double> x);

struct EstimateResult {
  double estimate = 0.0;
  std::uint64_t N = 0;
  std::optional<double> reference;
  std::optional<double> abs_error;
};

/// (1/N) sum_{i=start}^{start+N-1} f(x_i). threads = 0 uses all cores.
EstimateResult qmc_estimate(const IntegrandSpec& spec, const PointSequence& seq, std::uint64_t N,
                            std::uint64_t start, unsigned threads = 0,
                            std::optional<double> reference = std::nullopt);

struct RqmcResult {
  std::vector<std::uint64_t> seeds;
  std::vector<double> replicates;
  double mean = 0.0;
  /// Unbiased, divisor R - 1.
  double variance = 0.0;
  std::size_t R = 0;

  double standard_error() const;
};

using SequenceFactory = std::function<std::shared_ptr<const PointSequence>(std::uint64_t seed)>;

/// One estimate per seed from index 0. Throws for R < 2 or repeated seeds.
RqmcResult rqmc_estimate(const IntegrandSpec& spec, const SequenceFactory& factory,
                         std::uint64_t N, std::span<const std::uint64_t> seeds,
                         unsigned threads = 0);

struct ErrorPoint {
  std::uint64_t N = 0;
  double estimate = 0.0;
  double abs_error = 0.0;
};

std::vector<ErrorPoint> error_curve(const IntegrandSpec& spec, const PointSequence& seq,
                                    std::span<const std::uint64_t> n_grid, double reference,
                                    std::uint64_t start, unsigned threads = 0);

inline constexpr std::uint64_t kAsianReferencePoints = 2'000'000;
inline constexpr std::uint64_t kAsianReferenceSeed = 20210501;

struct AsianReference {
  double value = 0.0;
  std::uint64_t N = 0;
  std::uint64_t seed = 0;
  bool from_cache = false;
};

/// Scrambled Sobol' estimate of the option value. When `cache` is given, a
/// record matching every contract term, N and seed is reused, otherwise the
/// value is computed and appended to the file.
AsianReference asian_reference(const AsianCallSpec& spec, const DirectionTable& table,
                               const std::optional<std::filesystem::path>& cache,
                               std::uint64_t N = kAsianReferencePoints,
                               std::uint64_t seed = kAsianReferenceSeed, unsigned threads = 0);

unsigned resolve_threads(unsigned requested) noexcept;

}  // namespace ihalton
