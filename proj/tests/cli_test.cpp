#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "fdepth/cli.hpp"
#include "fdepth/io.hpp"

namespace fdepth {
namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = std::filesystem::temp_directory_path() /
           ("fdepth_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    std::filesystem::create_directories(dir_);
  }
  void TearDown() override { std::filesystem::remove_all(dir_); }

  std::string write(const std::string& name, const std::string& text) {
    const auto path = dir_ / name;
    std::ofstream(path) << text;
    return path.string();
  }

  std::filesystem::path dir_;
};

TEST_F(CliTest, DepthInInputOrderAndSorted) {
  const auto path = write("s.csv", "0.5,1\n0,0\n1,1\n2,2\n");
  const auto plain = run({"depth", "--input", path, "--method", "hrd"});
  EXPECT_EQ(plain.code, cli::kOk);
  EXPECT_EQ(plain.out, "index,depth\n0,0.3333333333333333\n1,0.6666666666666666\n2,0.3333333333333333\n");
  const auto sorted = run({"depth", "--input", path, "--method", "hrd", "--sorted"});
  EXPECT_EQ(sorted.out, "index,depth\n1,0.6666666666666666\n0,0.3333333333333333\n2,0.3333333333333333\n");
  const auto bd = run({"depth", "--input", path, "--method", "bd", "--band-order", "2"});
  EXPECT_EQ(bd.out, "index,depth\n0,0.6666666666666666\n1,1\n2,0.6666666666666666\n");
  EXPECT_TRUE(plain.err.empty());
}

TEST_F(CliTest, HModeWithFixedBandwidth) {
  const auto path = write("s.csv", "1\n0\n0\n");
  const auto r = run({"depth", "--input", path, "--method", "hmode", "--bandwidth", "1"});
  EXPECT_EQ(r.code, cli::kOk);
  EXPECT_EQ(r.out, "index,depth\n0,1\n1,1\n");
  EXPECT_EQ(run({"depth", "--input", path, "--method", "hmode"}).code, cli::kFailure);
}

TEST_F(CliTest, EstimateZeroAlphaIsMean) {
  const auto path = write("s.csv", "0.25,0.5\n1,2\n3,5\n8,-1\n");
  const auto r = run({"estimate", "--input", path, "--method", "fsd", "--alpha", "0"});
  EXPECT_EQ(r.code, cli::kOk);
  EXPECT_EQ(r.out, "0.25,0.5\n4,2\n");
  EXPECT_EQ(run({"estimate", "--input", path, "--method", "mean"}).out, "0.25,0.5\n4,2\n");
}

TEST_F(CliTest, EstimateTrims) {
  const auto path = write("s.csv", "1\n0\n1\n2\n");
  // HRD depths [1/3, 2/3, 1/3]; alpha 1/3 keeps curves 1 and 0.
  const auto r = run({"estimate", "--input", path, "--method", "hrd", "--alpha", "0.34"});
  EXPECT_EQ(r.out, "1\n0.5\n");
}

TEST_F(CliTest, SimulateIsDeterministicAndParses) {
  const auto a = run({"simulate", "--model", "0", "--seed", "7"});
  const auto b = run({"simulate", "--model", "0", "--seed", "7"});
  EXPECT_EQ(a.code, cli::kOk);
  EXPECT_EQ(a.out, b.out);
  EXPECT_NE(a.out, run({"simulate", "--model", "0", "--seed", "8"}).out);
  std::istringstream in(a.out);
  const auto s = parse_sample_csv(in);
  EXPECT_EQ(s.size(), 50u);
  EXPECT_EQ(s.grid().size(), 30u);
  EXPECT_TRUE(s.labels().has_value());

  const auto file = (dir_ / "sim.csv").string();
  EXPECT_EQ(run({"simulate", "--model", "3", "--seed", "1", "--n", "5", "--q", "1", "--output", file}).code, cli::kOk);
  EXPECT_EQ(read_sample_csv(file).outlier_count(), 5u);
}

TEST_F(CliTest, BenchmarkDefaultsShape) {
  const auto cfg = write("cfg.json", R"({"S": 2})");
  const auto r = run({"benchmark", "--config", cfg});
  EXPECT_EQ(r.code, cli::kOk);
  std::istringstream lines(r.out);
  std::string line;
  std::getline(lines, line);
  EXPECT_EQ(line, "method,model,mean_ise,se_ise,S");
  int rows = 0;
  while (std::getline(lines, line)) ++rows;
  EXPECT_EQ(rows, 36);
  EXPECT_EQ(r.out, run({"benchmark", "--config", cfg, "--threads", "3"}).out);
}

TEST_F(CliTest, BenchmarkJsonToFile) {
  const auto cfg = write("cfg.json", R"({"S": 3, "models": [5], "methods": ["fsd", "mean"]})");
  const auto out = (dir_ / "r.json").string();
  EXPECT_EQ(run({"benchmark", "--config", cfg, "--format", "json", "--output", out}).code, cli::kOk);
  std::ifstream in(out);
  const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  EXPECT_EQ(text.front(), '[');
  EXPECT_NE(text.find("\"method\": \"mean\", \"model\": 5"), std::string::npos);
}

TEST_F(CliTest, ExitStatuses) {
  const auto good = write("s.csv", "1,2\n1,2\n3,4\n");
  EXPECT_EQ(run({"depth", "--input", good, "--method", "tukey"}).code, cli::kUsage);
  EXPECT_EQ(run({"simulate", "--model", "6", "--seed", "1"}).code, cli::kUsage);
  EXPECT_EQ(run({"simulate", "--model", "1"}).code, cli::kUsage);
  EXPECT_EQ(run({}).code, cli::kUsage);
  EXPECT_EQ(run({"estimate", "--input", good, "--method", "fsd", "--alpha", "1.5"}).code, cli::kUsage);
  EXPECT_EQ(run({"depth", "--input", good, "--method", "bd", "--band-order", "4"}).code, cli::kUsage);

  const auto missing = run({"depth", "--input", (dir_ / "nope.csv").string(), "--method", "hrd"});
  EXPECT_EQ(missing.code, cli::kIo);
  EXPECT_TRUE(missing.out.empty());
  EXPECT_FALSE(missing.err.empty());

  const auto ragged = write("bad.csv", "1,2\n1,2\n3\n");
  const auto bad = run({"depth", "--input", ragged, "--method", "hrd"});
  EXPECT_EQ(bad.code, cli::kData);
  EXPECT_NE(bad.err.find("line 3"), std::string::npos);

  const auto cfg = write("cfg.json", R"({"S": "many"})");
  EXPECT_EQ(run({"benchmark", "--config", cfg}).code, cli::kUsage);
  EXPECT_EQ(run({"benchmark", "--config", (dir_ / "none.json").string()}).code, cli::kIo);
  EXPECT_EQ(run({"benchmark", "--format", "xml"}).code, cli::kUsage);
}

TEST_F(CliTest, HelpIsSuccess) { EXPECT_EQ(run({"--help"}).code, cli::kOk); }

}  // namespace
}  // namespace fdepth
