#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "commands.hpp"
#include "ehs/io.hpp"

using namespace ehs::cli;
namespace fs = std::filesystem;

namespace {

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("ehs_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir_);
    write("one.json", R"({"c_max": 5, "energy": [[0, 1]], "data": [[0, 1]]})");
    write("tight.json",
          R"({"c_max": 5, "energy": [[0, 1]], "data": [[0, 2]],
              "qos": {"kind": "explicit", "params": {"requirements": [[1, 2]]}}})");
    write("overflow.json", R"({"c_max": 1, "energy": [[0, 1], [0.5, 1]], "data": [[0, 0.5], [0.75, 1]]})");
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  void write(const std::string& name, const std::string& text) const { std::ofstream(dir_ / name) << text; }
  std::string read(const std::string& name) const {
    std::ifstream in(dir_ / name);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
  }

  // Runs the real binary; stdout goes to `out_name` inside the test directory.
  int run(const std::string& args, const std::string& out_name = "stdout.txt") const {
    const std::string cmd = std::string(EHSCHED_BIN) + " " + args + " > " + path(out_name) + " 2> " + path("stderr.txt");
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  }

  fs::path dir_;
};

}  // namespace

TEST_F(Cli, SolvePrintsTheSchedule) {
  std::ostringstream out, err;
  EXPECT_EQ(cmd_solve({path("one.json")}, out, err), kExitOk);
  EXPECT_NE(out.str().find("T = 1\n"), std::string::npos) << out.str();
}

TEST_F(Cli, SolveReportsTheWitness) {
  std::ostringstream out, err;
  EXPECT_EQ(cmd_solve({path("tight.json")}, out, err), kExitInfeasible);
  EXPECT_NE(out.str().find("witness q_k = 1"), std::string::npos) << out.str();
}

TEST_F(Cli, SolveInputErrors) {
  std::ostringstream out, err;
  EXPECT_EQ(cmd_solve({path("missing.json")}, out, err), kExitError);
  write("bad.json", R"({"c_max": 1, "energy": [[0.2, 1]], "data": [[0, 1]]})");
  EXPECT_EQ(cmd_solve({path("bad.json")}, out, err), kExitError);
  EXPECT_NE(err.str().find("energy[0][0]"), std::string::npos) << err.str();
  EXPECT_EQ(cmd_solve({path("one.json"), "fastest"}, out, err), kExitError);
}

TEST_F(Cli, EbsSolver) {
  std::ostringstream out, err;
  EXPECT_EQ(cmd_solve({path("overflow.json"), "ebs"}, out, err), kExitOk);
  EXPECT_NE(out.str().find("T = 1.75"), std::string::npos) << out.str();
}

TEST_F(Cli, JsonOutputRoundTripsThroughValidate) {
  ASSERT_EQ(run("solve --json " + path("overflow.json"), "sched.json"), kExitOk);
  const auto outcome = ehs::load_outcome(path("sched.json"));
  ASSERT_TRUE(std::holds_alternative<ehs::Schedule>(outcome));
  EXPECT_EQ(run("validate " + path("overflow.json") + " " + path("sched.json")), kExitOk);
  EXPECT_NE(read("stdout.txt").find("PASS rate_change"), std::string::npos);

  ASSERT_EQ(run("solve --json " + path("tight.json"), "witness.json"), kExitInfeasible);
  EXPECT_TRUE(nlohmann::json::parse(read("witness.json")).contains("witness"));
}

TEST_F(Cli, TamperedScheduleFailsValidation) {
  ASSERT_EQ(run("solve --json " + path("overflow.json"), "sched.json"), kExitOk);
  auto j = nlohmann::json::parse(read("sched.json"));
  j["T"] = j["T"].get<double>() * 0.99;
  write("tampered.json", j.dump());
  std::ostringstream out, err;
  EXPECT_EQ(cmd_validate({path("overflow.json"), path("tampered.json")}, out, err), kExitInvalid);
  EXPECT_NE(out.str().find("FAIL structure"), std::string::npos) << out.str();

  write("schema.json", R"({"status": "scheduled", "T": "soon"})");
  EXPECT_EQ(cmd_validate({path("overflow.json"), path("schema.json")}, out, err), kExitError);
}

TEST_F(Cli, Oracle) {
  std::ostringstream out, err;
  EXPECT_EQ(cmd_oracle({path("one.json")}, out, err), kExitOk);
  EXPECT_NE(out.str().find("T_oracle = 1"), std::string::npos) << out.str();
  EXPECT_EQ(cmd_oracle({path("tight.json")}, out, err), kExitInfeasible);

  write("misaligned.json", R"({"c_max": 1, "energy": [[0, 1], [0.123, 1]], "data": [[0, 1]]})");
  EXPECT_EQ(cmd_oracle({path("misaligned.json")}, out, err), kExitError);

  OracleOptions big{path("overflow.json")};
  big.max_cells = 100;
  std::ostringstream err2;
  EXPECT_EQ(cmd_oracle(big, out, err2), kExitError);
  EXPECT_NE(err2.str().find("larger dt"), std::string::npos) << err2.str();
}

TEST_F(Cli, OracleRateGridFlag) {
  EXPECT_EQ(run("oracle --dt 0.01 --rgrid 1 " + path("one.json")), kExitOk);
  EXPECT_EQ(run("oracle --dt 0.01 --rgrid 1 --dquant 0.5 " + path("one.json")), kExitError);
}

TEST_F(Cli, SimulateIsDeterministic) {
  ASSERT_EQ(run("simulate --trials 10 --seed 7 --out " + path("a.csv")), kExitOk);
  ASSERT_EQ(run("simulate --trials 10 --seed 7 --out " + path("b.csv")), kExitOk);
  EXPECT_EQ(read("a.csv"), read("b.csv"));
  EXPECT_EQ(ehs::read_results(path("a.csv")).size(), ehs::ExperimentConfig{}.energy_levels.size());
}

TEST_F(Cli, SimulateErrors) {
  EXPECT_EQ(run("simulate --trials 0"), kExitError);
  EXPECT_EQ(run("simulate --trials 5 --out /nonexistent-dir/x.csv"), kExitError);
  write("cfg.json", R"({"trials": 5, "energy_levels": [2, 4]})");
  ASSERT_EQ(run("simulate --config " + path("cfg.json") + " --out " + path("c.csv")), kExitOk);
  EXPECT_EQ(ehs::read_results(path("c.csv")).size(), 2u);
  EXPECT_EQ(run("simulate --bogus"), kExitError);
}
