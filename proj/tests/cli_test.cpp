#include "qbal/io.hpp"

#include <gtest/gtest.h>

#include "json.hpp"

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <string>

namespace fs = std::filesystem;

namespace {

struct Outcome {
  int code = -1;
  std::string output;
};

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("qbal_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  Outcome run(const std::string& args) const {
    const std::string log = path("stdout.txt");
    const std::string cmd = std::string(QBAL_CLI) + " " + args + " > " + log + " 2>&1";
    const int status = std::system(cmd.c_str());
    Outcome o;
    o.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    o.output = qbal::read_file(log);
    return o;
  }

  fs::path dir_;
};

}  // namespace

TEST_F(Cli, HelpAndUsageErrors) {
  EXPECT_EQ(run("--help").code, 0);
  EXPECT_EQ(run("").code, 1);
  EXPECT_EQ(run("run --input x.csv").code, 1);
  EXPECT_EQ(run("bogus").code, 1);
  const auto unknown = run(std::string("run --method annealing --input ") + QBAL_FIXTURE + " --out " + path("r.json"));
  EXPECT_EQ(unknown.code, 1);
  EXPECT_NE(unknown.output.find("unknown method"), std::string::npos);
  EXPECT_EQ(run("run --method exhaustive --input " + path("missing.csv") + " --out " + path("r.json")).code, 1);
  EXPECT_FALSE(fs::exists(path("r.json")));
}

TEST_F(Cli, ComputationErrorExitsTwo) {
  ASSERT_EQ(run("gen --m 32 --seed 1 --out " + path("big.csv")).code, 0);
  EXPECT_EQ(run("run --method exhaustive --input " + path("big.csv") + " --out " + path("r.json")).code, 2);
  EXPECT_FALSE(fs::exists(path("r.json")));
  ASSERT_EQ(run("gen --m 3 --means 0,0 --out " + path("odd.csv")).code, 0);
  EXPECT_EQ(run("run --method exhaustive --equal-split --input " + path("odd.csv") + " --out " + path("r.json")).code, 1);
}

TEST_F(Cli, RunExhaustiveOnFixture) {
  const auto o = run(std::string("run --method exhaustive --input ") + QBAL_FIXTURE + " --out " + path("r.json"));
  ASSERT_EQ(o.code, 0) << o.output;
  EXPECT_NE(o.output.find("imbalance 2.4496"), std::string::npos);
  const auto j = nlohmann::json::parse(qbal::read_file(path("r.json")));
  EXPECT_EQ(j["method"], "exhaustive");
  EXPECT_NEAR(j["imbalance"].get<double>(), 2.449629248045133, 1e-12);
  EXPECT_EQ(j["omega"].size(), 12U);
}

TEST_F(Cli, EvaluatePrintsReport) {
  const auto o = run(std::string("evaluate --input ") + QBAL_FIXTURE + " --omega 1,-1,-1,1,1,-1,1,-1,1,1,-1,-1");
  ASSERT_EQ(o.code, 0) << o.output;
  EXPECT_NE(o.output.find("imbalance   i_X  2.4496"), std::string::npos);
  EXPECT_NE(o.output.find("lower bound      2.4495"), std::string::npos);
  EXPECT_EQ(run(std::string("evaluate --input ") + QBAL_FIXTURE + " --omega 1,-1").code, 1);
  EXPECT_EQ(run(std::string("evaluate --input ") + QBAL_FIXTURE + " --omega 1,-1,-1,1,1,-1,1,-1,1,1,-1,-1 --phi 2").code, 1);
}

TEST_F(Cli, PlotRejectsMalformedResult) {
  qbal::write_file_atomic(path("bad.json"), "{\"method\": \"gsw\", \"omega\": [1,");
  const auto o = run(std::string("plot --input ") + QBAL_FIXTURE + " --result " + path("bad.json") + " --out " +
                     path("fig.svg"));
  EXPECT_NE(o.code, 0);
  EXPECT_FALSE(fs::exists(path("fig.svg")));
}

TEST_F(Cli, PlotWithAndWithoutResult) {
  ASSERT_EQ(run(std::string("plot --input ") + QBAL_FIXTURE + " --out " + path("data.svg")).code, 0);
  EXPECT_NE(qbal::read_file(path("data.svg")).find("unassigned"), std::string::npos);
  ASSERT_EQ(run(std::string("run --method gsw --samples 5 --input ") + QBAL_FIXTURE + " --out " + path("g.json")).code, 0);
  ASSERT_EQ(run(std::string("plot --input ") + QBAL_FIXTURE + " --result " + path("g.json") + " --out " +
                path("g.svg"))
                .code,
            0);
  EXPECT_NE(qbal::read_file(path("g.svg")).find("gsw assignment"), std::string::npos);
}

TEST_F(Cli, GenThenIsingExport) {
  ASSERT_EQ(run("gen --m 6 --seed 4 --out " + path("d.csv")).code, 0);
  const auto o = run("ising --input " + path("d.csv") + " --out " + path("h.csv"));
  ASSERT_EQ(o.code, 0) << o.output;
  const std::string csv = qbal::read_file(path("h.csv"));
  EXPECT_EQ(csv.rfind("i,j,coefficient\n", 0), 0U);
  EXPECT_NE(csv.find("\noffset,"), std::string::npos);
  EXPECT_EQ(run("gen --m 5 --out " + path("e.csv")).code, 1);
}
