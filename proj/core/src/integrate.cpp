#include "ihalton/integrate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "ihalton/diagnose.hpp"
#include "ihalton/normal.hpp"

namespace ihalton {

namespace {

template <class... Fs>
struct Overloaded : Fs... {
  using Fs::operator()...;
};
template <class... Fs>
Overloaded(Fs...) -> Overloaded<Fs...>;

void check_dimension(std::span<const double> x, std::size_t d) {
  if (x.size() != d) {
    throw std::invalid_argument("point has dimension " + std::to_string(x.size()) +
                                ", integrand expects " + std::to_string(d));
  }
}

double pairwise_sum(std::span<const double> v) {
  if (v.empty()) return 0.0;
  if (v.size() == 1) return v[0];
  const std::size_t half = v.size() / 2;
  return pairwise_sum(v.first(half)) + pairwise_sum(v.subspan(half));
}

// Sum of f over [start, start + N), reproducible for any thread count.
double deterministic_sum(const IntegrandSpec& spec, const PointSequence& seq, std::uint64_t N,
                         std::uint64_t start, unsigned threads) {
  const std::uint64_t blocks = (N + kEstimateBlock - 1) / kEstimateBlock;
  std::vector<double> block_sums(blocks, 0.0);
  const std::size_t d = seq.dimension();

  auto work = [&](std::uint64_t first_block, std::uint64_t stride) {
    std::vector<double> x(d);
    for (std::uint64_t b = first_block; b < blocks; b += stride) {
      const std::uint64_t lo = b * kEstimateBlock;
      const std::uint64_t hi = std::min(N, lo + kEstimateBlock);
      double s = 0.0;
      for (std::uint64_t i = lo; i < hi; ++i) {
        seq.point(start + i, x);
        s += evaluate(spec, x);
      }
      block_sums[b] = s;
    }
  };

  const auto workers = static_cast<std::uint64_t>(
      std::min<std::uint64_t>(resolve_threads(threads), std::max<std::uint64_t>(blocks, 1)));
  if (workers <= 1) {
    work(0, 1);
  } else {
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(workers);
    for (std::uint64_t t = 0; t < workers; ++t) {
      pool.emplace_back([&, t] {
        try {
          work(t, workers);
        } catch (...) {
          errors[t] = std::current_exception();
        }
      });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }
  return pairwise_sum(block_sums);
}

std::string format_short(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::map<std::string, std::string> parse_record(const std::string& line) {
  std::map<std::string, std::string> fields;
  std::istringstream in(line);
  for (std::string token; in >> token;) {
    const auto eq = token.find('=');
    if (eq == std::string::npos) return {};
    fields[token.substr(0, eq)] = token.substr(eq + 1);
  }
  return fields;
}

std::map<std::string, std::string> reference_key(const AsianCallSpec& s, std::uint64_t N,
                                                 std::uint64_t seed) {
  return {{"S0", format_double(s.S0)},      {"K", format_double(s.K)},
          {"r", format_double(s.r)},        {"sigma", format_double(s.sigma)},
          {"T", format_double(s.T)},        {"d", std::to_string(s.d)},
          {"N", std::to_string(N)},         {"seed", std::to_string(seed)},
          {"method", "sobol+owen"}};
}

}  // namespace

unsigned resolve_threads(unsigned requested) noexcept {
  if (requested > 0) return requested;
  return std::max(1U, std::thread::hardware_concurrency());
}

F1Spec f1_power_weights(std::size_t d, int power) {
  F1Spec spec;
  spec.a.reserve(d);
  for (std::size_t j = 1; j <= d; ++j) spec.a.push_back(std::pow(static_cast<double>(j), power));
  spec.label = "a_j=j^" + std::to_string(power);
  return spec;
}

void validate(const IntegrandSpec& spec) {
  std::visit(Overloaded{
                 [](const F1Spec& s) {
                   if (s.a.empty()) throw std::invalid_argument("f1 needs d >= 1");
                   for (double a : s.a) {
                     if (!(a >= 0.0)) throw std::invalid_argument("f1 requires a_j >= 0");
                   }
                 },
                 [](const F2Spec& s) {
                   if (s.d == 0) throw std::invalid_argument("f2 needs d >= 1");
                   if (!(std::abs(s.c) <= 2.0)) throw std::invalid_argument("f2 requires |c| <= 2");
                 },
                 [](const AsianCallSpec& s) {
                   if (!(s.S0 > 0 && s.K > 0 && s.T > 0 && s.sigma > 0)) {
                     throw std::invalid_argument("Asian call requires S0, K, T, sigma > 0");
                   }
                   if (!std::isfinite(s.r)) throw std::invalid_argument("Asian call rate not finite");
                   if (s.d == 0) throw std::invalid_argument("Asian call needs d >= 1");
                 },
             },
             spec);
}

std::size_t integrand_dimension(const IntegrandSpec& spec) {
  return std::visit(Overloaded{[](const F1Spec& s) { return s.a.size(); },
                               [](const F2Spec& s) { return s.d; },
                               [](const AsianCallSpec& s) { return s.d; }},
                    spec);
}

std::string integrand_name(const IntegrandSpec& spec) {
  return std::visit(Overloaded{[](const F1Spec&) { return std::string("f1"); },
                               [](const F2Spec&) { return std::string("f2"); },
                               [](const AsianCallSpec&) { return std::string("asian"); }},
                    spec);
}

std::string integrand_params(const IntegrandSpec& spec) {
  return std::visit(Overloaded{
                        [](const F1Spec& s) {
                          if (!s.label.empty()) return s.label;
                          std::string out = "a=";
                          for (std::size_t j = 0; j < s.a.size(); ++j) {
                            out += (j ? ";" : "") + format_short(s.a[j]);
                          }
                          return out;
                        },
                        [](const F2Spec& s) { return "c=" + format_short(s.c); },
                        [](const AsianCallSpec& s) {
                          return "S0=" + format_short(s.S0) + ";K=" + format_short(s.K) +
                                 ";r=" + format_short(s.r) + ";sigma=" + format_short(s.sigma) +
                                 ";T=" + format_short(s.T);
                        },
                    },
                    spec);
}

double eval_f1(std::span<const double> x, std::span<const double> a) {
  check_dimension(x, a.size());
  double f = 1.0;
  for (std::size_t j = 0; j < x.size(); ++j) f *= (std::abs(4.0 * x[j] - 2.0) + a[j]) / (1.0 + a[j]);
  return f;
}

double eval_f2(std::span<const double> x, double c) {
  double f = 1.0;
  for (double xj : x) f *= 1.0 + c * (xj - 0.5);
  return f;
}

double asian_payoff(std::span<const double> x, const AsianCallSpec& spec) {
  check_dimension(x, spec.d);
  const double dt = spec.T / static_cast<double>(spec.d);
  const double drift = (spec.r - 0.5 * spec.sigma * spec.sigma) * dt;
  const double step = spec.sigma * std::sqrt(dt);
  double log_increment = 0.0;
  double total = 0.0;
  for (std::size_t j = 0; j < spec.d; ++j) {
    log_increment += drift + step * inv_norm_cdf(x[j]);
    total += spec.S0 * std::exp(log_increment);
  }
  const double average = total / static_cast<double>(spec.d);
  return std::exp(-spec.r * spec.T) * std::max(0.0, average - spec.K);
}

double evaluate(const IntegrandSpec& spec, std::span<const double> x) {
  return std::visit(Overloaded{[&](const F1Spec& s) { return eval_f1(x, s.a); },
                               [&](const F2Spec& s) {
                                 check_dimension(x, s.d);
                                 return eval_f2(x, s.c);
                               },
                               [&](const AsianCallSpec& s) { return asian_payoff(x, s); }},
                    spec);
}

EstimateResult qmc_estimate(const IntegrandSpec& spec, const PointSequence& seq, std::uint64_t N,
                            std::uint64_t start, unsigned threads,
                            std::optional<double> reference) {
  if (N == 0) throw std::invalid_argument("qmc_estimate requires N >= 1");
  validate(spec);
  if (seq.dimension() != integrand_dimension(spec)) {
    throw std::invalid_argument("sequence dimension does not match the integrand");
  }
  EstimateResult result;
  result.N = N;
  result.estimate = deterministic_sum(spec, seq, N, start, threads) / static_cast<double>(N);
  if (reference) {
    result.reference = reference;
    result.abs_error = std::abs(result.estimate - *reference);
  }
  return result;
}

double RqmcResult::standard_error() const {
  return R == 0 ? 0.0 : std::sqrt(variance / static_cast<double>(R));
}

RqmcResult rqmc_estimate(const IntegrandSpec& spec, const SequenceFactory& factory,
                         std::uint64_t N, std::span<const std::uint64_t> seeds,
                         unsigned threads) {
  if (seeds.size() < 2) throw std::invalid_argument("RQMC needs R >= 2 seeds");
  if (std::set<std::uint64_t>(seeds.begin(), seeds.end()).size() != seeds.size()) {
    throw std::invalid_argument("RQMC seeds must be distinct");
  }
  RqmcResult result;
  result.seeds.assign(seeds.begin(), seeds.end());
  result.R = seeds.size();
  for (auto seed : seeds) {
    const auto seq = factory(seed);
    result.replicates.push_back(qmc_estimate(spec, *seq, N, 0, threads).estimate);
  }
  double sum = 0.0;
  for (double v : result.replicates) sum += v;
  result.mean = sum / static_cast<double>(result.R);
  double ss = 0.0;
  for (double v : result.replicates) ss += (v - result.mean) * (v - result.mean);
  result.variance = ss / static_cast<double>(result.R - 1);
  return result;
}

std::vector<ErrorPoint> error_curve(const IntegrandSpec& spec, const PointSequence& seq,
                                    std::span<const std::uint64_t> n_grid, double reference,
                                    std::uint64_t start, unsigned threads) {
  std::vector<ErrorPoint> out;
  out.reserve(n_grid.size());
  for (auto n : n_grid) {
    const auto r = qmc_estimate(spec, seq, n, start, threads, reference);
    out.push_back({n, r.estimate, *r.abs_error});
  }
  return out;
}

AsianReference asian_reference(const AsianCallSpec& spec, const DirectionTable& table,
                               const std::optional<std::filesystem::path>& cache, std::uint64_t N,
                               std::uint64_t seed, unsigned threads) {
  validate(spec);
  const auto key = reference_key(spec, N, seed);
  if (cache) {
    std::ifstream in(*cache);
    for (std::string line; std::getline(in, line);) {
      if (line.empty() || line.front() == '#') continue;
      auto fields = parse_record(line);
      const auto value = fields.find("value");
      if (value == fields.end()) continue;
      const std::string text = value->second;
      fields.erase(value);
      if (fields == key) return {std::stod(text), N, seed, true};
    }
  }

  SequenceOptions options;
  options.kind = SequenceKind::Sobol;
  options.d = spec.d;
  options.scramble = true;
  options.seed = seed;
  options.directions = std::make_shared<DirectionTable>(table);
  const auto seq = make_sequence(options);
  const double value = qmc_estimate(spec, *seq, N, 0, threads).estimate;

  if (cache) {
    if (cache->has_parent_path()) std::filesystem::create_directories(cache->parent_path());
    std::ofstream out(*cache, std::ios::app);
    for (const auto& [k, v] : key) out << k << '=' << v << ' ';
    out << "value=" << format_double(value) << '\n';
  }
  return {value, N, seed, false};
}

}  // namespace ihalton
