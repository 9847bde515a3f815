#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "ihalton/integrate.hpp"
#include "ihalton/normal.hpp"
#include "oracles.hpp"

using namespace ihalton;

namespace {

std::shared_ptr<const DirectionTable> table() {
  static const auto t = std::make_shared<const DirectionTable>(
      load_direction_numbers(std::filesystem::path(IHALTON_TEST_DIRNUMS)));
  return t;
}

// Tensor Gauss-Legendre over [0,1]^d, each axis split at 1/2 so the kink of
// |4x - 2| falls on a panel edge.
template <class F>
long double tensor_quadrature(std::size_t d, int nodes_per_panel, F f) {
  auto rule = oracle::gauss_legendre(nodes_per_panel, 0.0L, 0.5L);
  const auto right = oracle::gauss_legendre(nodes_per_panel, 0.5L, 1.0L);
  rule.insert(rule.end(), right.begin(), right.end());
  std::vector<std::size_t> idx(d, 0);
  std::vector<double> x(d);
  long double total = 0;
  for (;;) {
    long double w = 1;
    for (std::size_t j = 0; j < d; ++j) {
      x[j] = static_cast<double>(rule[idx[j]].first);
      w *= rule[idx[j]].second;
    }
    total += w * f(x);
    std::size_t j = 0;
    while (j < d && ++idx[j] == rule.size()) idx[j++] = 0;
    if (j == d) break;
  }
  return total;
}

}  // namespace

TEST(InvNormCdf, Examples) {
  EXPECT_EQ(inv_norm_cdf(0.5), 0.0);
  EXPECT_NEAR(inv_norm_cdf(0.975), 1.959963984540054, 1e-12);
  // Dyadic u keeps 1 - u exact.
  for (double u : {0x1p-40, 0x1p-7, 0.375, 51.0 / 2048, 0.025390625}) {
    EXPECT_EQ(inv_norm_cdf(u), -inv_norm_cdf(1.0 - u)) << u;
  }
  EXPECT_THROW(inv_norm_cdf(0.0), std::domain_error);
  EXPECT_THROW(inv_norm_cdf(1.0), std::domain_error);
  EXPECT_THROW(inv_norm_cdf(std::nan("")), std::domain_error);
}

TEST(InvNormCdf, RoundTripAgainstHighPrecisionPhi) {
  double worst = 0.0;
  for (int i = 1; i <= 10000; ++i) {
    const double u = i / 10001.0;
    const double x = inv_norm_cdf(u);
    const double back = static_cast<double>(oracle::phi(oracle::HighFloat(x)));
    worst = std::max(worst, std::abs(back - u));
  }
  EXPECT_LE(worst, 1e-12);
}

TEST(InvNormCdf, TailsRelativeAccuracy) {
  for (double u : {1e-15, 1e-10, 1e-6, 1e-3, 0.02}) {
    const double x = inv_norm_cdf(u);
    const auto back = oracle::phi(oracle::HighFloat(x));
    EXPECT_LE(std::abs(static_cast<double>(back / u) - 1.0), 1e-12) << u;
  }
}

TEST(InvNormCdf, Monotone) {
  double prev = -INFINITY;
  for (int i = 1; i < 100000; ++i) {
    const double x = inv_norm_cdf(i / 100000.0);
    ASSERT_GT(x, prev);
    prev = x;
  }
}

TEST(F1, Examples) {
  const std::vector<double> a{1, 2};
  EXPECT_DOUBLE_EQ(eval_f1(std::vector<double>{0.5, 0.5}, a), 1.0 / 3);
  EXPECT_DOUBLE_EQ(eval_f1(std::vector<double>{0.0}, std::vector<double>{1}), 1.5);
  EXPECT_THROW(eval_f1(std::vector<double>{0.5}, a), std::invalid_argument);
}

TEST(F1, UnitIntegralByQuadrature) {
  const std::vector<double> a{1, 2, 3};
  const auto I = tensor_quadrature(3, 32, [&](const std::vector<double>& x) { return eval_f1(x, a); });
  EXPECT_NEAR(static_cast<double>(I), 1.0, 1e-10);
}

TEST(F2, Examples) {
  for (double c : {-2.0, 0.1, 1.0}) {
    EXPECT_EQ(eval_f2(std::vector<double>(7, 0.5), c), 1.0);
  }
  EXPECT_DOUBLE_EQ(eval_f2(std::vector<double>{1, 1}, 1.0), 2.25);
}

TEST(F2, UnitIntegralByQuadrature) {
  const auto I = tensor_quadrature(5, 4, [](const std::vector<double>& x) { return eval_f2(x, 0.1); });
  EXPECT_NEAR(static_cast<double>(I), 1.0, 1e-12);
}

TEST(Integrands, PermutationInvariance) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  for (int t = 0; t < 100; ++t) {
    std::vector<double> x(6), a(6);
    for (int j = 0; j < 6; ++j) {
      x[j] = U(rng);
      a[j] = 10 * U(rng);
    }
    std::vector<int> perm{0, 1, 2, 3, 4, 5};
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<double> px(6), pa(6);
    for (int j = 0; j < 6; ++j) {
      px[j] = x[perm[j]];
      pa[j] = a[perm[j]];
    }
    EXPECT_NEAR(eval_f1(x, a), eval_f1(px, pa), 1e-12 * eval_f1(x, a));
    EXPECT_NEAR(eval_f2(x, 0.7), eval_f2(px, 0.7), 1e-12);
  }
}

TEST(F2, ReflectionIdentity) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  for (int t = 0; t < 100; ++t) {
    const double x = U(rng), c = 4 * U(rng) - 2;
    const double lhs = eval_f2(std::vector<double>{x}, c) * eval_f2(std::vector<double>{1 - x}, c);
    EXPECT_NEAR(lhs, 1 - c * c * (x - 0.5) * (x - 0.5), 1e-14);
  }
}

TEST(AsianPayoff, CentredPathExample) {
  AsianCallSpec spec;
  spec.d = 4;
  long double avg = 0;
  for (int j = 1; j <= 4; ++j) avg += 50.0L * std::exp(0.005L * j / 4);
  avg /= 4;
  const long double want = std::exp(-0.05L) * (avg - 45);
  const double got = asian_payoff(std::vector<double>(4, 0.5), spec);
  EXPECT_NEAR(got, static_cast<double>(want), 1e-12);
  EXPECT_NEAR(got, 4.905, 1e-3);
}

TEST(AsianPayoff, DeepOutOfTheMoneyAndZeroVolatility) {
  AsianCallSpec spec;
  spec.d = 4;
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> U(0.01, 0.99);
  std::vector<double> x(4);
  for (auto& v : x) v = U(rng);
  AsianCallSpec otm = spec;
  otm.K = 1e9;
  EXPECT_EQ(asian_payoff(x, otm), 0.0);
  AsianCallSpec calm = spec;
  calm.sigma = 1e-12;
  calm.r = 0.05;
  // The sigma -> 0 path grows at rate r; compare with the centred path in the same limit.
  EXPECT_NEAR(asian_payoff(x, calm), asian_payoff(std::vector<double>(4, 0.5), calm), 1e-9);
  EXPECT_THROW(asian_payoff(std::vector<double>{0.5, 0.5, 0.0, 0.5}, spec), std::domain_error);
  EXPECT_THROW(asian_payoff(std::vector<double>{0.5}, spec), std::invalid_argument);
}

TEST(AsianPayoff, MonotoneInEachCoordinate) {
  AsianCallSpec spec;
  spec.d = 8;
  spec.K = 40;
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> U(0.05, 0.95);
  for (int t = 0; t < 200; ++t) {
    std::vector<double> x(8);
    for (auto& v : x) v = U(rng);
    const double base = asian_payoff(x, spec);
    const auto l = rng() % 8;
    x[l] = std::min(0.999, x[l] + 0.01 + 0.04 * U(rng));
    EXPECT_GE(asian_payoff(x, spec), base);
  }
}

TEST(Validate, RejectsBadParameters) {
  EXPECT_THROW(validate(F1Spec{{1.0, -1.0}, ""}), std::invalid_argument);
  EXPECT_THROW(validate(F1Spec{}), std::invalid_argument);
  EXPECT_THROW(validate(F2Spec{2.5, 3}), std::invalid_argument);
  EXPECT_THROW(validate(F2Spec{0.1, 0}), std::invalid_argument);
  AsianCallSpec bad;
  bad.sigma = 0;
  EXPECT_THROW(validate(bad), std::invalid_argument);
  EXPECT_NO_THROW(validate(AsianCallSpec{}));
}

TEST(IntegrandMetadata, NamesAndParams) {
  EXPECT_EQ(integrand_name(f1_power_weights(3, 2)), "f1");
  EXPECT_EQ(integrand_params(f1_power_weights(3, 2)), "a_j=j^2");
  EXPECT_EQ(f1_power_weights(3, 2).a, (std::vector<double>{1, 4, 9}));
  EXPECT_EQ(integrand_params(F1Spec{{1, 0.5}, ""}), "a=1;0.5");
  EXPECT_EQ(integrand_params(F2Spec{0.1, 4}), "c=0.1");
  EXPECT_EQ(integrand_dimension(F2Spec{0.1, 4}), 4u);
  EXPECT_EQ(integrand_name(AsianCallSpec{}), "asian");
  EXPECT_EQ(integrand_params(AsianCallSpec{}), "S0=50;K=45;r=0.05;sigma=0.3;T=1");
}

TEST(QmcEstimate, ConstantIntegrandIsExact) {
  const HaltonSequence halton(3);
  for (std::uint64_t n : {1u, 7u, 4096u, 10000u}) {
    EXPECT_EQ(qmc_estimate(F2Spec{0.0, 3}, halton, n, 1).estimate, 1.0);
  }
  EXPECT_THROW(qmc_estimate(F2Spec{0.0, 3}, halton, 0, 1), std::invalid_argument);
  EXPECT_THROW(qmc_estimate(F2Spec{0.0, 4}, halton, 10, 1), std::invalid_argument);
}

TEST(QmcEstimate, OneDimensionalF1Converges) {
  const VanDerCorputSequence vdc(IntegerBase(2));
  const auto r = qmc_estimate(F1Spec{{1.0}, ""}, vdc, 1u << 16, 1, 0, 1.0);
  EXPECT_LE(*r.abs_error, 1e-3);
  EXPECT_EQ(*r.abs_error, std::abs(r.estimate - 1.0));
  EXPECT_EQ(*r.reference, 1.0);
}

TEST(QmcEstimate, ErrorShrinksWithN) {
  const HaltonSequence halton(2);
  const F2Spec f{1.0, 2};
  const double e10 = std::abs(qmc_estimate(f, halton, 1u << 10, 1).estimate - 1.0);
  const double e14 = std::abs(qmc_estimate(f, halton, 1u << 14, 1).estimate - 1.0);
  EXPECT_LT(e14, e10);
}

TEST(QmcEstimate, MatchesNaiveSumClosely) {
  const auto seq = make_sequence({SequenceKind::Interlaced, 6, false, 0, nullptr});
  const F2Spec f{0.7, 6};
  long double naive = 0;
  const std::uint64_t n = 10000;
  for (std::uint64_t i = 1; i <= n; ++i) naive += eval_f2(seq->point(i), 0.7);
  EXPECT_NEAR(qmc_estimate(f, *seq, n, 1).estimate, static_cast<double>(naive / n), 1e-14);
}

TEST(QmcEstimate, ThreadCountDoesNotChangeBits) {
  const auto seq = make_sequence({SequenceKind::Halton, 10, true, 99, nullptr});
  const auto f = f1_power_weights(10, 2);
  const double one = qmc_estimate(f, *seq, 50000, 0, 1).estimate;
  for (unsigned t : {2u, 3u, 7u, 16u}) EXPECT_EQ(qmc_estimate(f, *seq, 50000, 0, t).estimate, one);
}

TEST(QmcEstimate, MonteCarloConverges) {
  const RandomSequence mc(10, 12345);
  const auto r = qmc_estimate(F2Spec{0.1, 10}, mc, 1000000, 0);
  EXPECT_LE(std::abs(r.estimate - 1.0), 0.003);
}

TEST(QmcEstimate, PropagatesWorkerExceptions) {
  // Index 0 of an unscrambled sequence is the origin, where the Asian payoff is undefined.
  const auto seq = make_sequence({SequenceKind::Sobol, 50, false, 0, table()});
  EXPECT_THROW(qmc_estimate(AsianCallSpec{}, *seq, 20000, 0, 4), std::domain_error);
}

TEST(RqmcEstimate, ConstantHasZeroVariance) {
  const SequenceFactory factory = [](std::uint64_t seed) {
    return make_sequence({SequenceKind::Interlaced, 3, true, seed, nullptr});
  };
  const std::vector<std::uint64_t> seeds{1, 2, 3};
  const auto r = rqmc_estimate(F2Spec{0.0, 3}, factory, 100, seeds);
  EXPECT_EQ(r.variance, 0.0);
  EXPECT_EQ(r.mean, 1.0);
  EXPECT_EQ(r.R, 3u);
  const std::vector<std::uint64_t> dup{1, 1}, one{1};
  EXPECT_THROW(rqmc_estimate(F2Spec{0.0, 3}, factory, 100, dup), std::invalid_argument);
  EXPECT_THROW(rqmc_estimate(F2Spec{0.0, 3}, factory, 100, one), std::invalid_argument);
}

TEST(RqmcEstimate, UnbiasedAndVarianceDoesNotBlowUp) {
  const SequenceFactory factory = [](std::uint64_t seed) {
    return make_sequence({SequenceKind::Interlaced, 25, true, seed, nullptr});
  };
  std::vector<std::uint64_t> seeds;
  for (std::uint64_t s = 1; s <= 20; ++s) seeds.push_back(s);
  const F2Spec f{0.1, 25};
  const auto r4 = rqmc_estimate(f, factory, 4096, seeds);
  EXPECT_LE(std::abs(r4.mean - 1.0), 3 * std::sqrt(r4.variance / 20));
  const auto r8 = rqmc_estimate(f, factory, 8192, seeds);
  EXPECT_LE(r8.variance, 2 * r4.variance);

  // Mean and variance are recomputable from the replicates.
  double mean = 0;
  for (double v : r4.replicates) mean += v;
  mean /= 20;
  double ss = 0;
  for (double v : r4.replicates) ss += (v - mean) * (v - mean);
  EXPECT_DOUBLE_EQ(r4.mean, mean);
  EXPECT_DOUBLE_EQ(r4.variance, ss / 19);
  EXPECT_DOUBLE_EQ(r4.standard_error(), std::sqrt(r4.variance / 20));
}

TEST(ErrorCurve, Examples) {
  const HaltonSequence halton(4);
  const std::vector<std::uint64_t> grid{256, 1024};
  for (const auto& row : error_curve(F2Spec{0.0, 4}, halton, grid, 1.0, 1)) {
    EXPECT_EQ(row.abs_error, 0.0);
  }
  EXPECT_TRUE(error_curve(F2Spec{0.0, 4}, halton, {}, 1.0, 1).empty());

  const InterlacedSequence interlaced(select_bases(25));
  std::vector<std::uint64_t> powers;
  for (int m = 8; m <= 14; ++m) powers.push_back(std::uint64_t{1} << m);
  const auto curve = error_curve(f1_power_weights(25, 2), interlaced, powers, 1.0, 1);
  ASSERT_EQ(curve.size(), powers.size());
  for (const auto& row : curve) EXPECT_LE(row.abs_error, 0.05) << row.N;
}

TEST(AsianReference, CachesAndReuses) {
  const auto dir = std::filesystem::temp_directory_path() / "ihalton_asian_cache_test";
  std::filesystem::remove_all(dir);
  const auto cache = dir / "ref.txt";
  AsianCallSpec spec;
  spec.d = 8;
  const auto first = asian_reference(spec, *table(), cache, 4096, 5);
  EXPECT_FALSE(first.from_cache);
  const auto second = asian_reference(spec, *table(), cache, 4096, 5);
  EXPECT_TRUE(second.from_cache);
  EXPECT_EQ(first.value, second.value);
  // Any changed term misses the cache.
  spec.K = 46;
  EXPECT_FALSE(asian_reference(spec, *table(), cache, 4096, 5).from_cache);
  spec.K = 45;
  EXPECT_FALSE(asian_reference(spec, *table(), cache, 4096, 6).from_cache);
  EXPECT_TRUE(asian_reference(spec, *table(), cache, 4096, 5).from_cache);
  std::filesystem::remove_all(dir);
}
