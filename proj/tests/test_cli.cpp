#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "support.hpp"

namespace racelab {
namespace {

namespace fs = std::filesystem;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "racelab");
  std::vector<const char*> argv;
  for (const std::string& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("racelab_cli_" + std::to_string(::getpid()) + "_" +
                                        ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string write(const std::string& name, const std::string& text) {
    const fs::path p = dir_ / name;
    std::ofstream(p) << text;
    return p.string();
  }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

std::vector<std::string> split(const std::string& row) {
  std::vector<std::string> out;
  std::istringstream in(row);
  for (std::string f; std::getline(in, f, ',');) out.push_back(f);
  return out;
}

TEST_F(Cli, AnalyzeWorkedExampleIsClean) {
  const std::string trace = write("fig2.trace", testing::kFig2Text);
  const Result r = invoke({"analyze", "--trace", trace, "--engine", "sampling"});
  EXPECT_EQ(r.code, cli::kExitClean) << r.err;
  EXPECT_TRUE(r.out.empty());
}

TEST_F(Cli, AnalyzeReportsRace) {
  const std::string trace = write("race.trace", "T1|w(x)|*\nT2|w(x)|*\n");
  for (const char* engine : {"djitp", "sampling", "uclock", "orderedlist"}) {
    const Result r = invoke({"analyze", "--trace", trace, "--engine", engine});
    EXPECT_EQ(r.code, cli::kExitFound) << engine;
    EXPECT_EQ(r.out, "RACE write-write at e2 on x\n") << engine;
  }
}

TEST_F(Cli, AnalyzeWritesMetrics) {
  const std::string trace = write("fig2.trace", testing::kFig2Text);
  const std::string metrics = path("m.json");
  const Result r = invoke({"analyze", "--trace", trace, "--engine", "uclock", "--out-metrics", metrics});
  EXPECT_EQ(r.code, 0) << r.err;
  std::ifstream in(metrics);
  std::string line;
  std::getline(in, line);
  EXPECT_NE(line.find("\"engine\":\"uclock\""), std::string::npos) << line;
  EXPECT_NE(line.find("\"acquires_total\":8"), std::string::npos) << line;
}

TEST_F(Cli, ErrorsExitTwo) {
  const std::string trace = write("fig2.trace", testing::kFig2Text);
  EXPECT_EQ(invoke({"analyze", "--trace", trace, "--engine", "bogus"}).code, cli::kExitError);
  EXPECT_EQ(invoke({"analyze", "--trace", path("missing.trace")}).code, cli::kExitError);
  EXPECT_EQ(invoke({"analyze", "--trace", trace, "--rate", "1.5"}).code, cli::kExitError);
  EXPECT_EQ(invoke({"frobnicate"}).code, cli::kExitError);
  const std::string bad = write("bad.trace", "T1|acq(l)\nT2|rel(l)\n");
  const Result r = invoke({"diff", "--trace", bad});
  EXPECT_EQ(r.code, cli::kExitError);
  EXPECT_NE(r.err.find("release-by-non-holder"), std::string::npos) << r.err;
  const std::string garbled = write("garbled.trace", "T1|w(x)\nT1 w x\n");
  const Result g = invoke({"analyze", "--trace", garbled});
  EXPECT_EQ(g.code, cli::kExitError);
  EXPECT_NE(g.err.find("line 2"), std::string::npos) << g.err;
}

TEST_F(Cli, HelpExitsClean) { EXPECT_EQ(invoke({"--help"}).code, 0); }

TEST_F(Cli, DiffWorkedExample) {
  const std::string trace = write("fig2.trace", testing::kFig2Text);
  for (std::vector<std::string> extra : {std::vector<std::string>{}, {"--rate", "1"}, {"--mode", "extended"}}) {
    std::vector<std::string> args{"diff", "--trace", trace};
    args.insert(args.end(), extra.begin(), extra.end());
    const Result r = invoke(args);
    EXPECT_EQ(r.code, 0) << r.out << r.err;
    EXPECT_EQ(r.out, "EQUIVALENT\n");
  }
}

TEST_F(Cli, DiffRandomTracesFullRate) {
  const auto suite = testing::random_suite(20, 300, 4242);
  for (std::size_t i = 0; i < suite.size(); ++i) {
    const std::string trace = write("t" + std::to_string(i) + ".trace", serialize_trace(suite[i]));
    const Result r = invoke({"diff", "--trace", trace, "--rate", "1"});
    EXPECT_EQ(r.out, "EQUIVALENT\n") << i;
  }
}

TEST_F(Cli, DiffEnginesAgreeDirectly) {
  for (const Trace& raw : testing::random_suite(30, 250, 4343)) {
    const Trace t = testing::sampled(raw, 0.1, 2);
    EXPECT_FALSE(cli::diff_engines(t).has_value());
    EXPECT_FALSE(cli::diff_engines(t, {DetectionMode::Extended, 2000}).has_value());
    EXPECT_FALSE(cli::diff_engines(t, {DetectionMode::SampledOnly, 10}).has_value());
  }
}

TEST_F(Cli, DivergenceRendering) {
  const cli::Divergence d{"uclock", "timestamp", 7, "[1,0]", "[0,0]"};
  EXPECT_EQ(cli::render(d), "DIVERGENCE engine=uclock kind=timestamp event=e7 expected=[1,0] actual=[0,0]");
}

TEST_F(Cli, GenWritesParsableTrace) {
  const std::string out = path("g.trace");
  const Result r = invoke({"gen", "--threads", "3", "--locks", "2", "--vars", "2", "--events", "200", "--seed", "5",
                           "--out", out});
  EXPECT_EQ(r.code, 0) << r.err;
  const Trace t = read_trace_file(out);
  EXPECT_EQ(t.size(), 200u);
  const Result again = invoke({"gen", "--threads", "3", "--locks", "2", "--vars", "2", "--events", "200", "--seed", "5"});
  EXPECT_EQ(again.out, serialize_trace(t));
}

TEST_F(Cli, BenchCardinalityAndDeterminism) {
  const std::string trace = write("fig2.trace", testing::kFig2Text);
  const Result a = invoke({"bench", "--trace", trace});
  ASSERT_EQ(a.code, 0) << a.err;
  const auto rows = lines(a.out);
  ASSERT_EQ(rows.size(), 17u);
  EXPECT_EQ(rows[0], csv_header());
  EXPECT_EQ(invoke({"bench", "--trace", trace}).out, a.out);
}

TEST_F(Cli, BenchGeneratedTraces) {
  const Result r = invoke({"bench", "--traces", "2", "--events", "300", "--rates", "0.1,1", "--seeds", "2"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(lines(r.out).size(), 1u + 2 * 2 * 2 * 4);
}

TEST_F(Cli, BenchSkipRatioFallsWithRateOnHandoff) {
  const std::string trace = write("handoff.trace", serialize_trace(make_handoff_trace(100, 2)));
  const Result r = invoke({"bench", "--trace", trace, "--rates", "0.003,0.03,0.1,1"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = lines(r.out);
  const auto header = split(rows[0]);
  const auto col = [&](const std::string& name) {
    return static_cast<std::size_t>(std::find(header.begin(), header.end(), name) - header.begin());
  };
  for (const char* engine : {"uclock", "orderedlist"}) {
    std::vector<std::pair<double, double>> points;
    for (std::size_t i = 1; i < rows.size(); ++i) {
      const auto f = split(rows[i]);
      if (f[col("engine")] == engine) points.emplace_back(std::stod(f[col("rate")]), std::stod(f[col("skip_ratio")]));
    }
    ASSERT_EQ(points.size(), 4u);
    std::sort(points.begin(), points.end());
    for (std::size_t i = 1; i < points.size(); ++i) EXPECT_LE(points[i].second, points[i - 1].second) << engine;
  }
}

}  // namespace
}  // namespace racelab
