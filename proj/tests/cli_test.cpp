#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "app.hpp"
#include "pareto/io.hpp"

namespace fs = std::filesystem;

namespace pareto::cli {
namespace {

class CliRun : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("pareto_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  RunConfig config() const {
    RunConfig cfg;
    cfg.out_dir = dir_ / "out";
    return cfg;
  }

  static std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

  static int data_rows(const fs::path& csv) {
    std::ifstream in(csv);
    std::string line;
    std::getline(in, line);
    int rows = 0;
    while (std::getline(in, line)) rows += line.empty() ? 0 : 1;
    return rows;
  }

  int run_cfg(const RunConfig& cfg) {
    out_.str("");
    err_.str("");
    return run(cfg, out_, err_);
  }

  fs::path dir_;
  std::ostringstream out_;
  std::ostringstream err_;
};

TEST_F(CliRun, DefaultToyRun) {
  ASSERT_EQ(run_cfg(config()), kOk) << err_.str();
  const fs::path out = dir_ / "out";
  EXPECT_EQ(data_rows(out / "front_pathfollow_d0.1.csv"), 9);
  EXPECT_EQ(data_rows(out / "front_naive_d0.1.csv"), 9);
  EXPECT_TRUE(fs::exists(out / "front_pathfollow_d0.1.json"));
  EXPECT_TRUE(fs::exists(out / "report.json"));
  EXPECT_TRUE(fs::exists(out / "report.csv"));
  EXPECT_TRUE(fs::exists(out / "grid_d0.1.csv"));
  EXPECT_FALSE(fs::exists(out / "counters.svg"));
  const auto report = nlohmann::json::parse(slurp(out / "report.json"));
  EXPECT_EQ(report.at("rows").size(), 2u);
  EXPECT_EQ(report.at("problem_spec").at("kind"), "paper-toy");
  EXPECT_NE(out_.str().find("cost ratio naive/pathfollow at d=0.1"), std::string::npos);
}

TEST_F(CliRun, SinglePointGrid) {
  auto cfg = config();
  cfg.d = {0.5};
  ASSERT_EQ(run_cfg(cfg), kOk) << err_.str();
  EXPECT_EQ(data_rows(dir_ / "out" / "front_pathfollow_d0.5.csv"), 1);
}

TEST_F(CliRun, UsageErrors) {
  auto cfg = config();
  cfg.d = {1.5};
  EXPECT_EQ(run_cfg(cfg), kUsage);
  EXPECT_NE(err_.str().find("d must be in (0,1)"), std::string::npos);
  EXPECT_FALSE(fs::exists(dir_ / "out"));

  cfg = config();
  cfg.problem = "no-such-problem";
  EXPECT_EQ(run_cfg(cfg), kUsage);
  EXPECT_NE(err_.str().find("error:"), std::string::npos);

  cfg = config();
  cfg.method = "simplex";
  EXPECT_EQ(run_cfg(cfg), kUsage);

  cfg = config();
  cfg.formats = {"xml"};
  EXPECT_EQ(run_cfg(cfg), kUsage);

  cfg = config();
  cfg.epsilon = -1.0;
  EXPECT_EQ(run_cfg(cfg), kUsage);
}

TEST_F(CliRun, UnwritableOutputDirectory) {
  fs::create_directories(dir_);
  std::ofstream(dir_ / "blocker") << "file";
  auto cfg = config();
  cfg.out_dir = dir_ / "blocker" / "inside";
  EXPECT_EQ(run_cfg(cfg), kUsage);
  EXPECT_NE(err_.str().find("output directory"), std::string::npos);
}

TEST_F(CliRun, NonConvergenceExitCode) {
  auto cfg = config();
  cfg.gd_max_iters = 3;
  EXPECT_EQ(run_cfg(cfg), kNonConvergence);
  EXPECT_NE(out_.str().find("non-convergence"), std::string::npos);
  EXPECT_TRUE(fs::exists(dir_ / "out" / "report.json"));
}

TEST_F(CliRun, RepeatedRunsAgreeWithoutTiming) {
  auto a = config();
  a.d = {0.1, 0.05};
  auto b = a;
  b.out_dir = dir_ / "second";
  ASSERT_EQ(run_cfg(a), kOk);
  ASSERT_EQ(run_cfg(b), kOk);
  for (const char* name : {"report.json", "front_pathfollow_d0.05.json", "front_naive_d0.1.json"}) {
    const auto ja = strip_timing(nlohmann::json::parse(slurp(a.out_dir / name)));
    const auto jb = strip_timing(nlohmann::json::parse(slurp(b.out_dir / name)));
    EXPECT_EQ(ja.dump(), jb.dump()) << name;
  }
  EXPECT_EQ(slurp(a.out_dir / "front_pathfollow_d0.1.csv"), slurp(b.out_dir / "front_pathfollow_d0.1.csv"));
}

TEST_F(CliRun, ProblemSpecFileAndSeedOverride) {
  fs::create_directories(dir_);
  const fs::path spec = dir_ / "problem.json";
  std::ofstream(spec) << R"({"kind": "random-quadratic", "n": 4, "m": 3, "c": 1, "L": 10, "seed": 3})";
  auto cfg = config();
  cfg.problem = spec.string();
  cfg.d = {0.25};
  cfg.seed = 11;
  cfg.formats = {"json", "svg"};
  ASSERT_EQ(run_cfg(cfg), kOk) << err_.str();
  const auto report = nlohmann::json::parse(slurp(dir_ / "out" / "report.json"));
  EXPECT_EQ(report.at("problem_spec").at("seed"), 11);
  EXPECT_EQ(report.at("problem_spec").at("n"), 4);
  EXPECT_EQ(report.at("rows")[0].at("points"), 3);
  EXPECT_TRUE(fs::exists(dir_ / "out" / "counters.svg"));
  EXPECT_NE(err_.str().find("m = 2"), std::string::npos);
  EXPECT_FALSE(fs::exists(dir_ / "out" / "report.csv"));
}

TEST_F(CliRun, ParallelAndSvg) {
  auto cfg = config();
  cfg.method = "parallel";
  cfg.workers = 3;
  cfg.formats = {"csv", "svg"};
  ASSERT_EQ(run_cfg(cfg), kOk) << err_.str();
  EXPECT_EQ(data_rows(dir_ / "out" / "front_parallel_d0.1.csv"), 9);
  EXPECT_TRUE(fs::exists(dir_ / "out" / "front_d0.1.svg"));
}

TEST_F(CliRun, MainEntryFlagsAndEnvironment) {
  const std::string out_dir = (dir_ / "env").string();
  ::setenv(kOutDirEnv, out_dir.c_str(), 1);
  std::string a0 = "pareto", a1 = "--d", a2 = "0.25", a3 = "--method", a4 = "pathfollow";
  char* argv[] = {a0.data(), a1.data(), a2.data(), a3.data(), a4.data()};
  EXPECT_EQ(main_entry(5, argv), kOk);
  ::unsetenv(kOutDirEnv);
  EXPECT_EQ(data_rows(dir_ / "env" / "front_pathfollow_d0.25.csv"), 3);

  std::string bad = "--no-such-flag";
  char* argv_bad[] = {a0.data(), bad.data()};
  EXPECT_EQ(main_entry(2, argv_bad), kUsage);
}

TEST(SpacingTag, ShortestDecimal) {
  EXPECT_EQ(spacing_tag(0.1), "0.1");
  EXPECT_EQ(spacing_tag(0.001), "0.001");
  EXPECT_EQ(spacing_tag(0.25), "0.25");
}

}  // namespace
}  // namespace pareto::cli
