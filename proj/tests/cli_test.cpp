#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "cli.hpp"
#include "ssnmf/kernel_io.hpp"
#include "ssnmf/types.hpp"

namespace ssnmf {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::vector<json> jsonl(const fs::path& p) {
  std::vector<json> out;
  std::istringstream in(slurp(p));
  for (std::string line; std::getline(in, line);) out.push_back(json::parse(line));
  return out;
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("ssnmf_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

TEST_F(Cli, SolveFwOnPlantedInstance) {
  const auto r = run({"solve", "--algo", "fw", "--planted", "20", "3", "--seed", "42", "--epsilon",
                      "1e-2", "--out", path("fw.jsonl"), "--w-out", path("w.csv")});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  const auto lines = jsonl(path("fw.jsonl"));
  ASSERT_GE(lines.size(), 2u);
  const auto& last = lines[lines.size() - 2];
  EXPECT_LE(last.at("fw_gap").get<double>(), 1e-2);
  EXPECT_EQ(lines.back().at("terminal_reason"), "GapBelowEpsilon");
  EXPECT_NO_THROW(FactorMatrix::from_entries(read_factor(path("w.csv"))));
  EXPECT_TRUE(json::parse(r.out).at("feasible").get<bool>());
}

TEST_F(Cli, SharedInitialPointAcrossAlgorithms) {
  std::vector<double> first;
  for (const std::string algo : {"fw", "pgd", "penalty"}) {
    const auto r = run({"solve", "--algo", algo, "--planted", "15", "3", "--seed", "7", "--max-iters",
                        "3", "--out", path(algo + ".jsonl")});
    ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  }
  const auto fw = jsonl(path("fw.jsonl"));
  const auto pgd = jsonl(path("pgd.jsonl"));
  EXPECT_NEAR(fw[0].at("objective").get<double>(), pgd[0].at("objective").get<double>(), 1e-12);
  for (const auto& rec : jsonl(path("penalty.jsonl"))) EXPECT_FALSE(rec.contains("fw_gap"));
}

TEST_F(Cli, PenaltyStopPresetHasNoGapField) {
  const auto r = run({"solve", "--algo", "penalty", "--paper-stop", "--planted", "12", "2", "--out",
                      path("pen.jsonl")});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  const auto lines = jsonl(path("pen.jsonl"));
  for (std::size_t i = 0; i + 1 < lines.size(); ++i) EXPECT_FALSE(lines[i].contains("fw_gap"));
  EXPECT_LE(lines.size(), 51u);
}

TEST_F(Cli, CompareWritesSelectedTraces) {
  const auto r = run({"compare", "--algos", "fw,pgd", "--planted", "15", "3", "--max-iters", "200",
                      "--out-dir", path("cmp")});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  EXPECT_TRUE(fs::exists(path("cmp/fw.jsonl")));
  EXPECT_TRUE(fs::exists(path("cmp/pgd.jsonl")));
  EXPECT_FALSE(fs::exists(path("cmp/penalty.jsonl")));
  const auto summary = json::parse(slurp(path("cmp/summary.json")));
  EXPECT_EQ(summary.at("runs").size(), 2u);
  const std::string best = summary.at("lowest_objective");
  for (const auto& [name, run] : summary.at("runs").items()) {
    EXPECT_LE(summary.at("runs").at(best).at("final_objective").get<double>(),
              run.at("final_objective").get<double>());
    EXPECT_TRUE(run.contains("stationarity"));
  }
}

TEST_F(Cli, CsvInputUsesLabelCountForRank) {
  std::ofstream(path("d.csv")) << "x,y,c\n0,0,a\n0.1,0,a\n3,3,b\n3,3.1,b\n";
  const auto r = run({"solve", "--algo", "fw", "--input", path("d.csv"), "--header", "--labels", "2",
                      "--max-iters", "10", "--out", path("t.jsonl"), "--w-out", path("w.csv")});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  EXPECT_EQ(read_factor(path("w.csv")).cols(), 2);
}

TEST_F(Cli, MissingRankIsUsageError) {
  std::ofstream(path("d.csv")) << "0,0\n1,1\n";
  const auto r = run({"compare", "--input", path("d.csv"), "--out-dir", path("cmp")});
  EXPECT_EQ(r.code, cli::kExitUsage);
}

TEST_F(Cli, UsageErrors) {
  EXPECT_EQ(run({}).code, cli::kExitUsage);
  EXPECT_EQ(run({"solve", "--algo", "newton", "--planted", "5", "2", "--out", path("x")}).code, cli::kExitUsage);
  EXPECT_EQ(run({"solve", "--algo", "fw", "--planted", "5", "2", "--input", "a.csv", "--out", path("x")}).code,
            cli::kExitUsage);
  EXPECT_EQ(run({"solve", "--algo", "fw", "--planted", "5", "2", "--curvature", "-3", "--out", path("x")}).code,
            cli::kExitUsage);
  EXPECT_EQ(run({"curvature", "--planted", "5", "2", "--samples", "0"}).code, cli::kExitUsage);
}

TEST_F(Cli, ModuleErrorsExitOne) {
  EXPECT_EQ(run({"counterexample", "--variant", "failure", "--x0", "5,5"}).code, cli::kExitFailure);
  EXPECT_EQ(run({"solve", "--algo", "fw", "--input", path("missing.csv"), "--k", "2", "--out", path("x")}).code,
            cli::kExitFailure);
}

TEST_F(Cli, Counterexample) {
  auto r = run({"counterexample", "--variant", "failure", "--x0", "0.5,1.5", "--T", "1000", "--out",
                path("traj.jsonl")});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  EXPECT_GE(json::parse(r.out).at("final_objective").get<double>(), 2.9);
  const auto lines = jsonl(path("traj.jsonl"));
  EXPECT_EQ(lines.size(), 1002u);
  EXPECT_EQ(lines[0].at("x").size(), 2u);

  r = run({"counterexample", "--variant", "success", "--x0", "0.5,1.5", "--T", "1000"});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  EXPECT_LE(json::parse(r.out).at("final_objective").get<double>(), 0.02);
}

TEST_F(Cli, CurvatureReport) {
  const auto r = run({"curvature", "--planted", "10", "2", "--samples", "500", "--seed", "3"});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  const auto j = json::parse(r.out);
  EXPECT_LE(j.at("empirical_max").get<double>(), j.at("upper_bound").get<double>());
  EXPECT_LE(j.at("lower_bound").get<double>(), j.at("upper_bound").get<double>());
  const double c = j.at("c").get<double>();
  EXPECT_DOUBLE_EQ(j.at("upper_bound").get<double>(), 20.0 * (30.0 + c));
}

TEST_F(Cli, NoTimingTracesAreByteIdentical) {
  for (const std::string tag : {"a", "b"}) {
    const auto r = run({"solve", "--algo", "pgd", "--planted", "12", "3", "--seed", "5", "--no-timing",
                        "--out", path(tag + ".jsonl")});
    ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  }
  EXPECT_EQ(slurp(path("a.jsonl")), slurp(path("b.jsonl")));
}

}  // namespace
}  // namespace ssnmf
