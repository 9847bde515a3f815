#include "ihalton/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "CLI11.hpp"
#include "ihalton/ihalton.hpp"

#ifndef IHALTON_DEFAULT_DIRNUMS
#define IHALTON_DEFAULT_DIRNUMS "new-joe-kuo-6.1111"
#endif

namespace ihalton::cli {

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Options {
  std::size_t d = 0;
  std::uint64_t n = 0;
  std::string n_grid = "2^8..2^17";
  std::string seq;
  std::uint64_t seed = 0;
  std::string seeds = "1..20";
  bool scramble = false;
  std::string dirnums = IHALTON_DEFAULT_DIRNUMS;
  std::string out;
  unsigned threads = 0;
  std::uint64_t start_index = 0;

  std::string base;
  std::string input;
  std::string diag_bases;
  std::uint32_t kmax = 9;
  bool scan = false;

  std::string dims = "0,1";

  std::string preset = "f2";
  double c = 0.1;
  int a_power = 2;
  double s0 = 50.0;
  double strike = 45.0;
  double rate = 0.05;
  double sigma = 0.3;
  double maturity = 1.0;
  std::uint64_t rqmc_n = 16384;
  std::string rqmc_out;
  std::string reference_cache = "asian_reference.txt";
  std::uint64_t reference_n = kAsianReferencePoints;
  std::uint64_t reference_seed = kAsianReferenceSeed;
};

struct Given {
  CLI::Option* d = nullptr;
  CLI::Option* n = nullptr;
  CLI::Option* seq = nullptr;
  CLI::Option* start_index = nullptr;
};

using Header = std::vector<std::pair<std::string, std::string>>;

// Output file or the caller's stream.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (path.empty() || path == "-") return;
    file_.open(path, std::ios::binary | std::ios::trunc);
    if (!file_) throw std::runtime_error("cannot open output file " + path);
    stream_ = &file_;
  }
  std::ostream& operator*() { return *stream_; }

 private:
  std::ofstream file_;
  std::ostream* stream_;
};

std::vector<std::string> split(std::string_view text, char sep) {
  std::vector<std::string> parts;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto next = text.find(sep, pos);
    const auto piece = text.substr(pos, next == std::string_view::npos ? text.npos : next - pos);
    const auto b = piece.find_first_not_of(" \t");
    const auto e = piece.find_last_not_of(" \t");
    if (b != std::string_view::npos) parts.emplace_back(piece.substr(b, e - b + 1));
    if (next == std::string_view::npos) break;
    pos = next + 1;
  }
  return parts;
}

std::uint64_t parse_u64(std::string_view text) {
  std::uint64_t v = 0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end) {
    throw UsageError("expected a non-negative integer, got '" + std::string(text) + "'");
  }
  return v;
}

std::uint64_t parse_term(std::string_view text) {
  if (text.starts_with("2^")) {
    const auto e = parse_u64(text.substr(2));
    if (e > 63) throw UsageError("exponent too large in '" + std::string(text) + "'");
    return std::uint64_t{1} << e;
  }
  return parse_u64(text);
}

std::string join(const std::vector<std::string>& parts, char sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? std::string(1, sep) : "") + parts[i];
  return out;
}

std::string fmt(double v) { return format_double(v); }

void write_header(std::ostream& out, const Header& header) {
  for (const auto& [k, v] : header) out << "# " << k << '=' << v << '\n';
}

Base parse_base(std::string_view text) {
  const auto parts = split(text, ':');
  if (parts.size() == 2 && parts[0] == "int") return IntegerBase(parse_u64(parts[1]));
  if (parts.size() == 3 && parts[0] == "quad") {
    return quadratic_root(static_cast<std::uint32_t>(parse_u64(parts[1])),
                          static_cast<std::uint32_t>(parse_u64(parts[2])));
  }
  throw UsageError("base must be 'int:<b>' or 'quad:<p>:<q>', got '" + std::string(text) + "'");
}

SequenceKind parse_kind(std::string_view text) {
  try {
    return parse_sequence_kind(text);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

std::size_t require_d(const Options& o, const Given& g, std::size_t fallback = 0) {
  if (g.d->count() == 0) {
    if (fallback == 0) throw UsageError("--d is required");
    return fallback;
  }
  if (o.d == 0) throw UsageError("--d must be >= 1");
  return o.d;
}

class Context {
 public:
  explicit Context(const Options& o) : o_(o) {}

  std::shared_ptr<const DirectionTable> directions() {
    if (!table_) table_ = std::make_shared<DirectionTable>(load_direction_numbers(o_.dirnums));
    return table_;
  }

  std::shared_ptr<const PointSequence> sequence(SequenceKind kind, std::size_t d, bool scramble,
                                                std::uint64_t seed) {
    SequenceOptions so;
    so.kind = kind;
    so.d = d;
    so.scramble = scramble;
    so.seed = seed;
    if (kind == SequenceKind::Sobol) so.directions = directions();
    return make_sequence(so);
  }

 private:
  const Options& o_;
  std::shared_ptr<const DirectionTable> table_;
};

std::vector<std::uint64_t> seed_list(const std::string& text) {
  if (text.empty() || text == "none") return {};
  return parse_index_list(text);
}

void append_sequence_header(Header& h, const Options& o, SequenceKind kind, bool scramble) {
  h.emplace_back("seq", std::string(sequence_kind_name(kind)));
  h.emplace_back("scramble", scramble ? "true" : "false");
  if (scramble || kind == SequenceKind::Random) h.emplace_back("seed", std::to_string(o.seed));
  if (kind == SequenceKind::Sobol) h.emplace_back("dirnums", o.dirnums);
}

// ---------------------------------------------------------------- commands

int cmd_bases(const Options& o, const Given& g, std::ostream& stdout_stream) {
  const std::size_t d = require_d(o, g);
  Sink sink(o.out, stdout_stream);
  *sink << select_bases(d).to_text();
  return 0;
}

int cmd_generate(const Options& o, const Given& g, std::ostream& stdout_stream) {
  const SequenceKind kind = parse_kind(g.seq->count() ? o.seq : "interlaced");
  const std::size_t d = require_d(o, g);
  if (g.n->count() == 0) throw UsageError("--n is required");
  Context ctx(o);
  const auto seq = ctx.sequence(kind, d, o.scramble, o.seed);
  const std::uint64_t start = g.start_index->count() ? o.start_index : 0;

  Sink sink(o.out, stdout_stream);
  std::ostream& out = *sink;
  Header h{{"command", "generate"}};
  append_sequence_header(h, o, kind, o.scramble);
  h.emplace_back("d", std::to_string(d));
  h.emplace_back("n", std::to_string(o.n));
  h.emplace_back("start-index", std::to_string(start));
  write_header(out, h);
  for (std::size_t j = 1; j <= d; ++j) out << (j > 1 ? "," : "") << 'x' << j;
  out << '\n';

  std::vector<double> x(d);
  std::string line;
  char buf[32];
  for (std::uint64_t i = 0; i < o.n; ++i) {
    seq->point(start + i, x);
    line.clear();
    for (std::size_t j = 0; j < d; ++j) {
      const int len = std::snprintf(buf, sizeof buf, "%.17g", x[j]);
      if (j) line += ',';
      line.append(buf, static_cast<std::size_t>(len));
    }
    line += '\n';
    out << line;
  }
  return 0;
}

PointSet read_points(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open input file " + path);
  PointSet points;
  std::string line;
  bool first = true;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line.front() == '#') continue;
    std::vector<double> row;
    bool numeric = true;
    for (const auto& cell : split(line, ',')) {
      char* end = nullptr;
      const double v = std::strtod(cell.c_str(), &end);
      if (end == cell.c_str() || *end != '\0') {
        numeric = false;
        break;
      }
      row.push_back(v);
    }
    if (!numeric) {
      if (first) {
        first = false;
        continue;
      }
      throw std::runtime_error(path + ":" + std::to_string(line_no) + ": non-numeric row");
    }
    first = false;
    points.push_back(row);
  }
  return points;
}

int cmd_cbk(const Options& o, const Given& g, std::ostream& stdout_stream) {
  PointSet points;
  std::vector<std::uint64_t> diag;
  Header h{{"command", "cbk"}};
  const std::uint64_t n = g.n->count() ? o.n : 500;
  const std::uint64_t start = g.start_index->count() ? o.start_index : 0;

  if (!o.input.empty()) {
    points = read_points(o.input);
    h.emplace_back("input", o.input);
  } else if (!o.base.empty()) {
    const Base base = parse_base(o.base);
    points = VanDerCorputSequence(base).generate(start, n);
    diag.push_back(scramble_base_for(base));
    h.emplace_back("base", to_string(base));
  } else {
    const SequenceKind kind = parse_kind(g.seq->count() ? o.seq : "interlaced");
    const std::size_t d = require_d(o, g, 1);
    Context ctx(o);
    const auto seq = ctx.sequence(kind, d, o.scramble, o.seed);
    points = seq->generate(start, n);
    append_sequence_header(h, o, kind, o.scramble);
    h.emplace_back("d", std::to_string(d));
    if (kind == SequenceKind::Halton) {
      for (auto b : first_primes(d)) diag.push_back(b);
    } else if (kind == SequenceKind::Interlaced) {
      for (const auto& b : select_bases(d).bases()) diag.push_back(scramble_base_for(b));
    } else {
      diag.assign(d, 2);
    }
  }
  if (o.input.empty()) {
    h.emplace_back("n", std::to_string(n));
    h.emplace_back("start-index", std::to_string(start));
  }
  if (!o.diag_bases.empty()) {
    diag.clear();
    for (const auto& t : split(o.diag_bases, ',')) diag.push_back(parse_u64(t));
  }
  if (points.size() < 2) throw std::runtime_error("N < 2");
  if (diag.empty()) diag.assign(points.dimension(), 2);
  const MultiBase mb(diag);
  std::vector<std::string> diag_text;
  for (auto b : diag) diag_text.push_back(std::to_string(b));
  h.emplace_back("cbk-bases", join(diag_text, ','));

  Sink sink(o.out, stdout_stream);
  std::ostream& out = *sink;
  std::vector<CReport> rows;
  if (o.scan) {
    const CqeReport rep = cqe_scan(points, mb);
    h.emplace_back("mode", "scan");
    h.emplace_back("cqe", rep.cqe ? "true" : "false");
    h.emplace_back("max_c", fmt(rep.max_c));
    h.emplace_back("violations", std::to_string(rep.violations.size()));
    h.emplace_back("cap_reached", rep.cap_reached ? "true" : "false");
    rows = rep.visited;
  } else {
    h.emplace_back("kmax", std::to_string(o.kmax));
    for (std::uint32_t k = 1; k <= o.kmax; ++k) {
      const std::vector<std::uint32_t> kv(mb.dimension(), k);
      rows.push_back(c_value(points, mb, kv));
    }
  }
  write_header(out, h);
  write_creport_csv(out, rows, mb.dimension());
  return 0;
}

int cmd_project(const Options& o, const Given& g, std::ostream& stdout_stream) {
  const auto dims = split(o.dims, ',');
  if (dims.size() != 2) throw UsageError("--dims expects 'j1,j2'");
  const std::size_t j1 = parse_u64(dims[0]);
  const std::size_t j2 = parse_u64(dims[1]);
  const SequenceKind kind = parse_kind(g.seq->count() ? o.seq : "interlaced");
  const std::size_t d = require_d(o, g, std::max(j1, j2) + 1);
  const std::uint64_t n = g.n->count() ? o.n : 500;
  const std::uint64_t start = g.start_index->count() ? o.start_index : 0;
  Context ctx(o);
  const auto seq = ctx.sequence(kind, d, o.scramble, o.seed);
  const auto pairs = projection_dump(*seq, j1, j2, n, start);

  Header h{{"command", "project"}};
  append_sequence_header(h, o, kind, o.scramble);
  h.emplace_back("d", std::to_string(d));
  h.emplace_back("dims", std::to_string(j1) + "," + std::to_string(j2));
  h.emplace_back("n", std::to_string(n));
  h.emplace_back("start-index", std::to_string(start));
  if (kind == SequenceKind::Interlaced) {
    const auto schedule = select_bases(d);
    h.emplace_back("base1", to_string(schedule[j1]));
    h.emplace_back("base2", to_string(schedule[j2]));
  }
  Sink sink(o.out, stdout_stream);
  write_header(*sink, h);
  write_projection_csv(*sink, pairs);
  return 0;
}

IntegrandSpec build_integrand(const Options& o, std::size_t d) {
  if (o.preset == "f1") {
    return f1_power_weights(d, o.a_power);
  }
  if (o.preset == "f2") return F2Spec{o.c, d};
  if (o.preset == "asian") return AsianCallSpec{o.s0, o.strike, o.rate, o.sigma, o.maturity, d};
  throw UsageError("unknown preset '" + o.preset + "' (expected f1, f2 or asian)");
}

std::vector<SequenceKind> sequence_list(const Options& o, const Given& g, const char* fallback) {
  const auto names = split(g.seq->count() ? o.seq : fallback, ',');
  if (names.empty()) throw UsageError("empty sequence list");
  std::vector<SequenceKind> kinds;
  for (const auto& name : names) kinds.push_back(parse_kind(name));
  return kinds;
}

double integrand_reference(const Options& o, const IntegrandSpec& spec, Context& ctx,
                           Header& h) {
  const auto* asian = std::get_if<AsianCallSpec>(&spec);
  if (asian == nullptr) {
    h.emplace_back("reference", "1");
    return 1.0;
  }
  std::optional<std::filesystem::path> cache;
  if (!o.reference_cache.empty() && o.reference_cache != "none") cache = o.reference_cache;
  const auto ref =
      asian_reference(*asian, *ctx.directions(), cache, o.reference_n, o.reference_seed, o.threads);
  h.emplace_back("reference", fmt(ref.value));
  h.emplace_back("reference-method", "sobol+owen");
  h.emplace_back("reference-n", std::to_string(ref.N));
  h.emplace_back("reference-seed", std::to_string(ref.seed));
  return ref.value;
}

int cmd_experiment(const Options& o, const Given& g, std::ostream& stdout_stream) {
  const std::size_t d = require_d(o, g, 50);
  const IntegrandSpec spec = build_integrand(o, d);
  validate(spec);
  const auto kinds = sequence_list(o, g, "halton,interlaced,sobol");
  const auto grid = parse_index_list(o.n_grid);
  const auto seeds = seed_list(o.seeds);
  Context ctx(o);

  Header h{{"command", "experiment"}, {"preset", o.preset}};
  h.emplace_back("function", integrand_name(spec));
  h.emplace_back("params", integrand_params(spec));
  h.emplace_back("d", std::to_string(d));
  std::vector<std::string> kind_names;
  for (auto k : kinds) kind_names.emplace_back(sequence_kind_name(k));
  h.emplace_back("seq", join(kind_names, ','));
  h.emplace_back("n-grid", o.n_grid);
  if (g.start_index->count()) h.emplace_back("start-index", std::to_string(o.start_index));
  else h.emplace_back("start-index", "default");
  if (kinds.end() != std::find(kinds.begin(), kinds.end(), SequenceKind::Sobol)) {
    h.emplace_back("dirnums", o.dirnums);
  }
  const double reference = integrand_reference(o, spec, ctx, h);

  Header error_header = h;
  error_header.emplace_back("table", "error");
  std::ostringstream errors;
  write_header(errors, error_header);
  errors << "sequence,function,d,params,N,abs_error\n";
  for (auto kind : kinds) {
    // Plain Monte Carlo points are drawn with --seed; QMC streams are unscrambled.
    const auto seq = ctx.sequence(kind, d, false, o.seed);
    const std::uint64_t start = g.start_index->count() ? o.start_index : seq->default_start();
    for (const auto& e : error_curve(spec, *seq, grid, reference, start, o.threads)) {
      errors << seq->name() << ',' << integrand_name(spec) << ',' << d << ','
             << integrand_params(spec) << ',' << e.N << ',' << fmt(e.abs_error) << '\n';
    }
  }

  std::ostringstream rqmc;
  if (!seeds.empty()) {
    Header rqmc_header = h;
    rqmc_header.emplace_back("table", "rqmc");
    rqmc_header.emplace_back("seeds", o.seeds);
    rqmc_header.emplace_back("rqmc-n", std::to_string(o.rqmc_n));
    write_header(rqmc, rqmc_header);
    rqmc << "sequence,function,d,params,N,R,mean,variance\n";
    for (auto kind : kinds) {
      const auto factory = [&](std::uint64_t seed) { return ctx.sequence(kind, d, true, seed); };
      const auto r = rqmc_estimate(spec, factory, o.rqmc_n, seeds, o.threads);
      rqmc << factory(seeds.front())->name() << ',' << integrand_name(spec) << ',' << d << ','
           << integrand_params(spec) << ',' << o.rqmc_n << ',' << r.R << ',' << fmt(r.mean)
           << ',' << fmt(r.variance) << '\n';
    }
  }

  if (o.out.empty() || o.out == "-") {
    stdout_stream << errors.str();
    if (!seeds.empty()) stdout_stream << '\n' << rqmc.str();
    return 0;
  }
  Sink(o.out, stdout_stream).operator*() << errors.str();
  if (!seeds.empty()) {
    std::string rqmc_path = o.rqmc_out;
    if (rqmc_path.empty()) {
      rqmc_path = std::filesystem::path(o.out).replace_extension(".rqmc.csv").string();
    }
    Sink(rqmc_path, stdout_stream).operator*() << rqmc.str();
  }
  return 0;
}

int cmd_price_asian(const Options& o, const Given& g, std::ostream& stdout_stream) {
  const std::size_t d = require_d(o, g, 50);
  const AsianCallSpec spec{o.s0, o.strike, o.rate, o.sigma, o.maturity, d};
  validate(spec);
  const auto kinds = sequence_list(o, g, "interlaced,sobol");
  const std::uint64_t n = g.n->count() ? o.n : (std::uint64_t{1} << 17);
  const auto seeds = seed_list(o.seeds);
  Context ctx(o);

  Header h{{"command", "price-asian"}, {"params", integrand_params(spec)}, {"d", std::to_string(d)}};
  std::vector<std::string> kind_names;
  for (auto k : kinds) kind_names.emplace_back(sequence_kind_name(k));
  h.emplace_back("seq", join(kind_names, ','));
  h.emplace_back("n", std::to_string(n));
  h.emplace_back("seeds", seeds.empty() ? "none" : o.seeds);
  const double reference = integrand_reference(o, spec, ctx, h);

  Sink sink(o.out, stdout_stream);
  std::ostream& out = *sink;
  write_header(out, h);
  out << "sequence,method,N,R,estimate,std_error,reference,abs_error\n";
  for (auto kind : kinds) {
    const auto seq = ctx.sequence(kind, d, false, o.seed);
    const std::uint64_t start = g.start_index->count() ? o.start_index : seq->default_start();
    const auto est = qmc_estimate(spec, *seq, n, start, o.threads, reference);
    out << seq->name() << ",qmc," << n << ",1," << fmt(est.estimate) << ",," << fmt(reference)
        << ',' << fmt(*est.abs_error) << '\n';
    if (seeds.size() >= 2) {
      const auto factory = [&](std::uint64_t seed) { return ctx.sequence(kind, d, true, seed); };
      const auto r = rqmc_estimate(spec, factory, n, seeds, o.threads);
      out << factory(seeds.front())->name() << ",rqmc," << n << ',' << r.R << ',' << fmt(r.mean)
          << ',' << fmt(r.standard_error()) << ',' << fmt(reference) << ','
          << fmt(std::abs(r.mean - reference)) << '\n';
    }
  }
  return 0;
}

}  // namespace

std::vector<std::uint64_t> parse_index_list(std::string_view text) {
  std::vector<std::uint64_t> out;
  for (const auto& token : split(text, ',')) {
    const auto dots = token.find("..");
    if (dots == std::string::npos) {
      out.push_back(parse_term(token));
      continue;
    }
    const std::string lo_text = token.substr(0, dots);
    const std::string hi_text = token.substr(dots + 2);
    if (lo_text.starts_with("2^") && hi_text.starts_with("2^")) {
      const auto lo = parse_u64(std::string_view(lo_text).substr(2));
      const auto hi = parse_u64(std::string_view(hi_text).substr(2));
      if (lo > hi || hi > 63) throw UsageError("bad power-of-two range '" + token + "'");
      for (auto e = lo; e <= hi; ++e) out.push_back(std::uint64_t{1} << e);
    } else {
      const auto lo = parse_term(lo_text);
      const auto hi = parse_term(hi_text);
      if (lo > hi || hi - lo > 10'000'000) throw UsageError("bad range '" + token + "'");
      for (auto v = lo; v <= hi; ++v) out.push_back(v);
    }
  }
  if (out.empty()) throw UsageError("empty index list");
  return out;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Interlaced Halton sequences: generation, scrambling, diagnostics, experiments"};
  app.set_config("--config", "", "Read key=value option lines from a file (flags override)");
  app.require_subcommand(1);
  app.fallthrough();

  Options o;
  Given g;
  g.d = app.add_option("--d", o.d, "Dimension");
  g.n = app.add_option("--n", o.n, "Number of points");
  app.add_option("--n-grid", o.n_grid, "N values: list, 'a..b' or '2^a..2^b'")->capture_default_str();
  g.seq = app.add_option("--seq", o.seq, "halton | interlaced | sobol | mc (lists for experiments)");
  app.add_option("--seed", o.seed, "Scrambling / Monte Carlo seed")->capture_default_str();
  app.add_option("--seeds", o.seeds, "RQMC seeds: list, 'a..b', or 'none'")->capture_default_str();
  app.add_flag("--scramble", o.scramble, "Nested uniform scrambling");
  app.add_option("--dirnums", o.dirnums, "Sobol' direction-number file")->capture_default_str();
  app.add_option("--out", o.out, "Output path (default stdout)");
  app.add_option("--threads", o.threads, "Worker threads, 0 = all cores")->capture_default_str();
  g.start_index = app.add_option("--start-index", o.start_index, "First sequence index");
  app.add_option("--base", o.base, "cbk: single van der Corput base 'int:<b>' or 'quad:<p>:<q>'");
  app.add_option("--input", o.input, "cbk: CSV of points instead of a generator");
  app.add_option("--cbk-bases", o.diag_bases, "cbk: diagnostic bases, comma separated");
  app.add_option("--kmax", o.kmax, "cbk: report k = 1..kmax")->capture_default_str();
  app.add_flag("--scan", o.scan, "cbk: full complete-quasi-equidistribution scan");
  app.add_option("--dims", o.dims, "project: coordinate pair 'j1,j2' (0-based)")->capture_default_str();
  app.add_option("--preset", o.preset, "experiment: f1 | f2 | asian")->capture_default_str();
  app.add_option("--c", o.c, "f2 coefficient")->capture_default_str();
  app.add_option("--a-power", o.a_power, "f1 weights a_j = j^power")->capture_default_str();
  app.add_option("--s0", o.s0, "Asian: spot price")->capture_default_str();
  app.add_option("--strike", o.strike, "Asian: strike")->capture_default_str();
  app.add_option("--rate", o.rate, "Asian: risk-free rate")->capture_default_str();
  app.add_option("--sigma", o.sigma, "Asian: volatility")->capture_default_str();
  app.add_option("--maturity", o.maturity, "Asian: maturity in years")->capture_default_str();
  app.add_option("--rqmc-n", o.rqmc_n, "experiment: points per RQMC replicate")->capture_default_str();
  app.add_option("--rqmc-out", o.rqmc_out, "experiment: RQMC table path");
  app.add_option("--reference-cache", o.reference_cache, "Asian reference cache file, or 'none'")
      ->capture_default_str();
  app.add_option("--reference-n", o.reference_n, "Asian reference points")->capture_default_str();
  app.add_option("--reference-seed", o.reference_seed, "Asian reference seed")->capture_default_str();

  auto* bases = app.add_subcommand("bases", "Print the interlaced base schedule");
  auto* generate = app.add_subcommand("generate", "Write N points as CSV");
  auto* cbk = app.add_subcommand("cbk", "Pair-collision statistics C_b(k)");
  auto* project = app.add_subcommand("project", "Dump a 2-D projection");
  auto* experiment = app.add_subcommand("experiment", "Integration error curves and RQMC variance");
  auto* price = app.add_subcommand("price-asian", "Price the Asian call against the reference");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (bases->parsed()) return cmd_bases(o, g, out);
    if (generate->parsed()) return cmd_generate(o, g, out);
    if (cbk->parsed()) return cmd_cbk(o, g, out);
    if (project->parsed()) return cmd_project(o, g, out);
    if (experiment->parsed()) return cmd_experiment(o, g, out);
    if (price->parsed()) return cmd_price_asian(o, g, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\nRun with --help for usage.\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}

}  // namespace ihalton::cli
