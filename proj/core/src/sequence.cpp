#include "ihalton/sequence.hpp"

#include <stdexcept>

namespace ihalton {

namespace {

constexpr std::uint64_t mix(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

void check_span(std::span<double> out, std::size_t d) {
  if (out.size() != d) throw std::invalid_argument("output span has wrong size");
}

}  // namespace

std::vector<double> PointSequence::point(std::uint64_t i) const {
  std::vector<double> x(dimension());
  point(i, x);
  return x;
}

PointSet PointSequence::generate(std::uint64_t start, std::size_t n) const {
  PointSet set(n, dimension());
  for (std::size_t r = 0; r < n; ++r) point(start + r, set[r]);
  return set;
}

HaltonSequence::HaltonSequence(std::size_t d) {
  if (d == 0) throw std::invalid_argument("Halton dimension must be >= 1");
  for (auto b : first_primes(d)) bases_.emplace_back(b);
}

void HaltonSequence::point(std::uint64_t i, std::span<double> out) const {
  check_span(out, bases_.size());
  for (std::size_t j = 0; j < out.size(); ++j) out[j] = radical_inverse_int(i, bases_[j]);
}

InterlacedSequence::InterlacedSequence(BaseSchedule schedule) : schedule_(std::move(schedule)) {
  if (schedule_.dimension() == 0) throw std::invalid_argument("empty base schedule");
}

void InterlacedSequence::point(std::uint64_t i, std::span<double> out) const {
  interlaced_point(i, schedule_, out);
}

void VanDerCorputSequence::point(std::uint64_t i, std::span<double> out) const {
  check_span(out, 1);
  out[0] = radical_inverse(i, base_);
}

SobolSequence::SobolSequence(const DirectionTable& table, std::size_t d) : gen_(table, d) {}

void SobolSequence::point(std::uint64_t i, std::span<double> out) const { gen_.point(i, out); }

ScrambledSequence::ScrambledSequence(std::shared_ptr<const PointSequence> inner,
                                     std::vector<std::uint64_t> scramble_bases,
                                     std::uint64_t seed)
    : inner_(std::move(inner)), seed_(seed) {
  if (!inner_) throw std::invalid_argument("scrambled sequence needs an inner sequence");
  if (scramble_bases.size() != inner_->dimension()) {
    throw std::invalid_argument("one scrambling base per coordinate required");
  }
  for (std::size_t j = 0; j < scramble_bases.size(); ++j) {
    specs_.push_back(ScrambleSpec::make(seed_, static_cast<std::uint32_t>(j), scramble_bases[j]));
    specs_.back().validate();
  }
}

void ScrambledSequence::point(std::uint64_t i, std::span<double> out) const {
  inner_->point(i, out);
  for (std::size_t j = 0; j < out.size(); ++j) out[j] = scramble_value(out[j], specs_[j]);
}

RandomSequence::RandomSequence(std::size_t d, std::uint64_t seed) : d_(d), seed_(seed) {
  if (d == 0) throw std::invalid_argument("dimension must be >= 1");
}

void RandomSequence::point(std::uint64_t i, std::span<double> out) const {
  check_span(out, d_);
  const std::uint64_t row = mix(mix(seed_ ^ 0x5EEDF00DCAFEBABEULL) + i);
  for (std::size_t j = 0; j < d_; ++j) {
    const std::uint64_t bits = mix(row + (j + 1) * 0x9E3779B97F4A7C15ULL) >> 11;
    out[j] = (static_cast<double>(bits) + 0.5) * 0x1.0p-53;  // open interval (0,1)
  }
}

SequenceKind parse_sequence_kind(std::string_view text) {
  if (text == "halton") return SequenceKind::Halton;
  if (text == "interlaced") return SequenceKind::Interlaced;
  if (text == "sobol") return SequenceKind::Sobol;
  if (text == "mc" || text == "random") return SequenceKind::Random;
  throw std::invalid_argument("unknown sequence kind '" + std::string(text) +
                              "' (expected halton, interlaced, sobol or mc)");
}

std::string_view sequence_kind_name(SequenceKind kind) noexcept {
  switch (kind) {
    case SequenceKind::Halton: return "halton";
    case SequenceKind::Interlaced: return "interlaced";
    case SequenceKind::Sobol: return "sobol";
    case SequenceKind::Random: return "mc";
  }
  return "?";
}

std::shared_ptr<const PointSequence> make_sequence(const SequenceOptions& options) {
  if (options.d == 0) throw std::invalid_argument("dimension must be >= 1");
  std::shared_ptr<const PointSequence> base;
  std::vector<std::uint64_t> scramble_bases;
  switch (options.kind) {
    case SequenceKind::Random:
      return std::make_shared<RandomSequence>(options.d, options.seed);
    case SequenceKind::Halton: {
      auto halton = std::make_shared<HaltonSequence>(options.d);
      for (const auto& b : halton->bases()) scramble_bases.push_back(b.b());
      base = std::move(halton);
      break;
    }
    case SequenceKind::Interlaced: {
      auto interlaced = std::make_shared<InterlacedSequence>(select_bases(options.d));
      for (const auto& b : interlaced->schedule().bases()) {
        scramble_bases.push_back(scramble_base_for(b));
      }
      base = std::move(interlaced);
      break;
    }
    case SequenceKind::Sobol:
      if (!options.directions) throw std::invalid_argument("Sobol' needs a direction table");
      base = std::make_shared<SobolSequence>(*options.directions, options.d);
      scramble_bases.assign(options.d, 2);
      break;
  }
  if (!options.scramble) return base;
  return std::make_shared<ScrambledSequence>(std::move(base), std::move(scramble_bases),
                                             options.seed);
}

}  // namespace ihalton
