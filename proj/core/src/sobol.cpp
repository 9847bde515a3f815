#include "ihalton/sobol.hpp"

#include <bit>
#include <charconv>
#include <fstream>
#include <istream>
#include <sstream>

namespace ihalton {

namespace {

constexpr double kInvTwo32 = 0x1.0p-32;

bool parse_u32(const std::string& token, std::uint32_t& out) {
  const char* end = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(token.data(), end, out);
  return ec == std::errc() && ptr == end;
}

std::vector<std::string> split_ws(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> tokens;
  for (std::string t; in >> t;) tokens.push_back(std::move(t));
  return tokens;
}

using Kind = DirectionParseError::Kind;

void check_entry(const DirectionTable::Entry& e, std::size_t line) {
  if (e.s == 0 || e.s >= kSobolBits || e.m.size() != e.s) {
    throw DirectionParseError(Kind::Malformed, line, "degree and m_i count disagree");
  }
  if (e.a >= (std::uint32_t{1} << (e.s - 1))) {
    throw DirectionParseError(Kind::Malformed, line, "polynomial coefficient a out of range");
  }
  for (std::size_t i = 0; i < e.m.size(); ++i) {
    if (e.m[i] % 2 == 0) {
      throw DirectionParseError(Kind::EvenM, line, "m_" + std::to_string(i + 1) + " is not odd");
    }
    if (e.m[i] >= (std::uint64_t{1} << (i + 1))) {
      throw DirectionParseError(Kind::MTooLarge, line,
                                "m_" + std::to_string(i + 1) + " >= 2^" + std::to_string(i + 1));
    }
  }
}

DirectionVector expand(const DirectionTable::Entry* e) {
  DirectionVector v{};
  if (e == nullptr) {
    for (unsigned c = 0; c < kSobolBits; ++c) v[c] = std::uint32_t{1} << (kSobolBits - 1 - c);
    return v;
  }
  const unsigned s = e->s;
  std::array<std::uint64_t, kSobolBits> m{};
  for (unsigned k = 0; k < s; ++k) m[k] = e->m[k];
  // m_k = 2^s m_{k-s} ^ m_{k-s} ^ sum_{r=1}^{s-1} 2^r a_r m_{k-r}, a_r = bit (s-1-r) of a.
  for (unsigned k = s; k < kSobolBits; ++k) {
    std::uint64_t mk = (m[k - s] << s) ^ m[k - s];
    for (unsigned r = 1; r < s; ++r) {
      if ((e->a >> (s - 1 - r)) & 1U) mk ^= m[k - r] << r;
    }
    m[k] = mk;
  }
  for (unsigned c = 0; c < kSobolBits; ++c) {
    v[c] = static_cast<std::uint32_t>(m[c] << (kSobolBits - 1 - c));
  }
  return v;
}

std::uint32_t gray_xor(const DirectionVector& v, std::uint32_t gray) noexcept {
  std::uint32_t x = 0;
  for (; gray != 0; gray &= gray - 1) x ^= v[std::countr_zero(gray)];
  return x;
}

}  // namespace

DirectionParseError::DirectionParseError(Kind kind, std::size_t line, const std::string& what)
    : std::runtime_error(line == 0 ? what : "direction numbers line " + std::to_string(line) + ": " + what),
      kind_(kind),
      line_(line) {}

DirectionTable::DirectionTable(std::vector<Entry> entries) : entries_(std::move(entries)) {
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (entries_[i].dimension != i + 2) {
      throw DirectionParseError(Kind::Gap, 0,
                                "expected dimension " + std::to_string(i + 2) + ", got " +
                                    std::to_string(entries_[i].dimension));
    }
    check_entry(entries_[i], 0);
  }
}

DirectionTable load_direction_numbers(std::istream& in) {
  std::vector<DirectionTable::Entry> entries;
  std::string line;
  std::size_t line_no = 0;
  bool seen_content = false;
  while (std::getline(in, line)) {
    ++line_no;
    const auto tokens = split_ws(line);
    if (tokens.empty()) continue;
    std::uint32_t first = 0;
    if (!parse_u32(tokens[0], first)) {
      if (!seen_content) {  // header row
        seen_content = true;
        continue;
      }
      throw DirectionParseError(Kind::Malformed, line_no, "expected 'd s a m_1 ... m_s'");
    }
    seen_content = true;

    DirectionTable::Entry e;
    if (tokens.size() < 4 || !parse_u32(tokens[1], e.s) || !parse_u32(tokens[2], e.a)) {
      throw DirectionParseError(Kind::Malformed, line_no, "expected 'd s a m_1 ... m_s'");
    }
    e.dimension = first;
    for (std::size_t t = 3; t < tokens.size(); ++t) {
      std::uint32_t m = 0;
      if (!parse_u32(tokens[t], m)) {
        throw DirectionParseError(Kind::Malformed, line_no, "non-integer m_i '" + tokens[t] + "'");
      }
      e.m.push_back(m);
    }
    if (e.dimension != entries.size() + 2) {
      throw DirectionParseError(Kind::Gap, line_no,
                                "expected dimension " + std::to_string(entries.size() + 2) +
                                    ", got " + std::to_string(e.dimension));
    }
    check_entry(e, line_no);
    entries.push_back(std::move(e));
  }
  if (entries.empty()) throw DirectionParseError(Kind::Empty, 0, "no dimensions");
  return DirectionTable(std::move(entries));
}

DirectionTable load_direction_numbers(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open direction numbers file " + path.string());
  return load_direction_numbers(in);
}

std::vector<DirectionVector> direction_vectors(const DirectionTable& table, std::size_t d) {
  if (d == 0) throw std::invalid_argument("Sobol' dimension must be >= 1");
  if (d > table.max_dimension()) {
    throw std::out_of_range("Sobol' dimension " + std::to_string(d) + " exceeds table capacity " +
                            std::to_string(table.max_dimension()));
  }
  std::vector<DirectionVector> v;
  v.reserve(d);
  v.push_back(expand(nullptr));
  for (std::size_t j = 2; j <= d; ++j) v.push_back(expand(&table.entry(j)));
  return v;
}

SobolGenerator::SobolGenerator(const DirectionTable& table, std::size_t d)
    : v_(direction_vectors(table, d)) {}

void SobolGenerator::numerators(std::uint64_t i, std::span<std::uint32_t> out) const {
  if (out.size() != v_.size()) throw std::invalid_argument("output span has wrong size");
  if (i >> kSobolBits) throw std::out_of_range("Sobol' index exceeds 2^32 - 1");
  const auto gray = static_cast<std::uint32_t>(i ^ (i >> 1));
  for (std::size_t j = 0; j < v_.size(); ++j) {
    out[j] = gray_xor(v_[j], gray);
  }
}

void SobolGenerator::point(std::uint64_t i, std::span<double> out) const {
  if (out.size() != v_.size()) throw std::invalid_argument("output span has wrong size");
  if (i >> kSobolBits) throw std::out_of_range("Sobol' index exceeds 2^32 - 1");
  const auto gray = static_cast<std::uint32_t>(i ^ (i >> 1));
  for (std::size_t j = 0; j < v_.size(); ++j) {
    out[j] = gray_xor(v_[j], gray) * kInvTwo32;
  }
}

std::vector<double> sobol_point(std::uint64_t i, std::size_t d, const DirectionTable& table) {
  SobolGenerator gen(table, d);
  std::vector<double> x(d);
  gen.point(i, x);
  return x;
}

SobolState::SobolState(const DirectionTable& table, std::size_t d)
    : v_(direction_vectors(table, d)), x_(d, 0) {}

void SobolState::point(std::span<double> out) const {
  if (out.size() != x_.size()) throw std::invalid_argument("output span has wrong size");
  for (std::size_t j = 0; j < x_.size(); ++j) out[j] = x_[j] * kInvTwo32;
}

void SobolState::advance() {
  // gray(i+1) differs from gray(i) in bit ctz(i+1).
  const unsigned c = std::countr_zero(index_ + 1);
  if (c >= kSobolBits) throw std::out_of_range("Sobol' index exceeds 2^32 - 1");
  for (std::size_t j = 0; j < x_.size(); ++j) x_[j] ^= v_[j][c];
  ++index_;
}

void SobolState::reset(std::uint64_t i) {
  if (i >> kSobolBits) throw std::out_of_range("Sobol' index exceeds 2^32 - 1");
  const auto gray = static_cast<std::uint32_t>(i ^ (i >> 1));
  for (std::size_t j = 0; j < x_.size(); ++j) {
    x_[j] = gray_xor(v_[j], gray);
  }
  index_ = i;
}

}  // namespace ihalton
