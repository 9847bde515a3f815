#include <gtest/gtest.h>

#include <unistd.h>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "ihalton/cli.hpp"

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "ihalton");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = ihalton::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> data_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) {
    if (!line.empty() && line.front() != '#') lines.push_back(line);
  }
  return lines;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class TempDir {
 public:
  TempDir() : path_(std::filesystem::temp_directory_path() / ("ihalton_cli_" + std::to_string(::getpid()))) {
    std::filesystem::create_directories(path_);
  }
  ~TempDir() { std::filesystem::remove_all(path_); }
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

}  // namespace

TEST(ParseIndexList, Forms) {
  using ihalton::cli::parse_index_list;
  EXPECT_EQ(parse_index_list("3..6"), (std::vector<std::uint64_t>{3, 4, 5, 6}));
  EXPECT_EQ(parse_index_list("2^3..2^5"), (std::vector<std::uint64_t>{8, 16, 32}));
  EXPECT_EQ(parse_index_list("2^4"), (std::vector<std::uint64_t>{16}));
  EXPECT_EQ(parse_index_list("1,5,2^2"), (std::vector<std::uint64_t>{1, 5, 4}));
  EXPECT_THROW(parse_index_list("6..3"), std::runtime_error);
  EXPECT_THROW(parse_index_list("x"), std::runtime_error);
  EXPECT_THROW(parse_index_list(""), std::runtime_error);
}

TEST(CliBases, Examples) {
  const auto five = run({"bases", "--d", "5"});
  EXPECT_EQ(five.code, 0);
  EXPECT_EQ(five.out,
            "quad 1 1 1.6180339887498949\nint 2\nquad 2 1 2.4142135623730949\nint 3\n"
            "quad 3 1 3.3027756377319948\n");
  EXPECT_EQ(run({"bases", "--d", "1"}).out, "quad 1 1 1.6180339887498949\n");
  EXPECT_EQ(run({"bases", "--d", "0"}).code, 2);
  EXPECT_EQ(run({"bases"}).code, 2);
}

TEST(CliGenerate, Examples) {
  const auto halton = run({"generate", "--seq", "halton", "--d", "2", "--n", "2"});
  ASSERT_EQ(halton.code, 0) << halton.err;
  EXPECT_EQ(data_lines(halton.out),
            (std::vector<std::string>{"x1,x2", "0,0", "0.5,0.33333333333333331"}));
  const auto inter = run({"generate", "--seq", "interlaced", "--d", "2", "--n", "1"});
  EXPECT_EQ(data_lines(inter.out), (std::vector<std::string>{"x1,x2", "0,0"}));
  EXPECT_EQ(run({"generate", "--seq", "lattice", "--d", "2", "--n", "1"}).code, 2);
  EXPECT_EQ(run({"generate", "--seq", "halton", "--n", "1"}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({}).code, 2);
}

TEST(CliGenerate, HeaderCarriesConfigWithoutThreads) {
  const auto r = run({"generate", "--seq", "sobol", "--d", "3", "--n", "4", "--scramble", "--seed",
                      "9", "--threads", "2"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("# seq=sobol\n"), std::string::npos);
  EXPECT_NE(r.out.find("# scramble=true\n"), std::string::npos);
  EXPECT_NE(r.out.find("# seed=9\n"), std::string::npos);
  EXPECT_EQ(r.out.find("threads"), std::string::npos);
  EXPECT_EQ(data_lines(r.out).size(), 5u);
}

TEST(CliGenerate, OutFileMatchesStdout) {
  TempDir tmp;
  const auto path = tmp.path() / "pts.csv";
  const auto to_stdout = run({"generate", "--seq", "interlaced", "--d", "4", "--n", "50"});
  const auto to_file =
      run({"generate", "--seq", "interlaced", "--d", "4", "--n", "50", "--out", path.string()});
  ASSERT_EQ(to_file.code, 0) << to_file.err;
  EXPECT_EQ(slurp(path), to_stdout.out);
}

TEST(CliConfig, FileSuppliesFlagsAndFlagsOverride) {
  TempDir tmp;
  const auto cfg = tmp.path() / "run.cfg";
  std::ofstream(cfg) << "# generate settings\nseq=halton\nd=3\nn=4\n";
  const auto from_file = run({"generate", "--config", cfg.string()});
  ASSERT_EQ(from_file.code, 0) << from_file.err;
  EXPECT_EQ(data_lines(from_file.out).size(), 5u);
  EXPECT_NE(from_file.out.find("# seq=halton"), std::string::npos);
  const auto overridden = run({"generate", "--config", cfg.string(), "--n", "2"});
  EXPECT_EQ(data_lines(overridden.out).size(), 3u);
}

TEST(CliCbk, GoldenRatioRows) {
  const auto r = run({"cbk", "--base", "quad:1:1", "--n", "500"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto lines = data_lines(r.out);
  ASSERT_EQ(lines.size(), 10u);
  EXPECT_EQ(lines[0], "k1,M,C");
  EXPECT_EQ(lines[1].rfind("1,", 0), 0u);
}

TEST(CliCbk, InputFileErrors) {
  TempDir tmp;
  const auto one = tmp.path() / "one.csv";
  std::ofstream(one) << "x\n0.25\n";
  const auto r1 = run({"cbk", "--input", one.string(), "--cbk-bases", "2"});
  EXPECT_EQ(r1.code, 1);
  EXPECT_NE(r1.err.find("N < 2"), std::string::npos);

  const auto dup = tmp.path() / "dup.csv";
  std::ofstream(dup) << "x\n0.25\n0.25\n";
  const auto r2 = run({"cbk", "--input", dup.string(), "--cbk-bases", "2", "--scan"});
  ASSERT_EQ(r2.code, 0) << r2.err;
  EXPECT_NE(r2.out.find("# cqe=false"), std::string::npos);
  EXPECT_NE(r2.out.find("# cap_reached=true"), std::string::npos);
}

TEST(CliProject, HaltonDump) {
  const auto r = run({"project", "--seq", "halton", "--d", "2", "--n", "4", "--start-index", "0"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(data_lines(r.out), (std::vector<std::string>{"x,y", "0,0", "0.5,0.33333333333333331",
                                                         "0.25,0.66666666666666663",
                                                         "0.75,0.1111111111111111"}));
}

TEST(CliExperiment, SmallRunHasBothTables) {
  const auto r = run({"experiment", "--preset", "f2", "--d", "5", "--seq", "halton,interlaced",
                      "--n-grid", "2^6..2^8", "--seeds", "1..3", "--rqmc-n", "256"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto lines = data_lines(r.out);
  ASSERT_FALSE(lines.empty());
  EXPECT_EQ(lines[0], "sequence,function,d,params,N,abs_error");
  const auto rqmc_header =
      std::find(lines.begin(), lines.end(), "sequence,function,d,params,N,R,mean,variance");
  ASSERT_NE(rqmc_header, lines.end());
  EXPECT_EQ(rqmc_header - lines.begin(), 7);  // 2 sequences x 3 grid points
  EXPECT_EQ(lines.end() - rqmc_header, 3);
  EXPECT_EQ(run({"experiment", "--seq", "", "--d", "3"}).code, 2);
  EXPECT_EQ(run({"experiment", "--preset", "f9", "--d", "3"}).code, 2);
}

TEST(CliExperiment, ThreadsDoNotChangeOutput) {
  const std::vector<std::string> base{"experiment", "--preset",  "f1",   "--d",    "8",
                                      "--seq",      "interlaced,sobol", "--n-grid", "2^10..2^12",
                                      "--seeds",    "1..2",     "--rqmc-n", "1024"};
  auto with_threads = [&](const char* t) {
    auto args = base;
    args.push_back("--threads");
    args.push_back(t);
    return run(args);
  };
  const auto one = with_threads("1");
  ASSERT_EQ(one.code, 0) << one.err;
  EXPECT_EQ(with_threads("4").out, one.out);
  EXPECT_EQ(with_threads("1").out, one.out);
}

TEST(CliBinary, RepeatedRunsAreByteIdentical) {
  auto capture = [](const std::string& cmd) {
    std::string text;
    FILE* pipe = ::popen(cmd.c_str(), "r");
    if (pipe == nullptr) return text;
    char buf[4096];
    for (std::size_t got; (got = std::fread(buf, 1, sizeof buf, pipe)) > 0;) text.append(buf, got);
    ::pclose(pipe);
    return text;
  };
  const std::string cmd =
      std::string(IHALTON_CLI_BINARY) + " generate --seq interlaced --d 6 --n 200 --scramble --seed 4";
  const auto first = capture(cmd);
  EXPECT_FALSE(first.empty());
  EXPECT_EQ(capture(cmd), first);
  EXPECT_EQ(run({"generate", "--seq", "interlaced", "--d", "6", "--n", "200", "--scramble", "--seed",
                 "4"})
                .out,
            first);
}
