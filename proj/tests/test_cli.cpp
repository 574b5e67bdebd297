#include <gtest/gtest.h>
#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace fs = std::filesystem;

namespace {

struct CliResult {
  int code;
  std::string out;
};

CliResult run(const std::string& args) {
  const std::string cmd = std::string(QFID_CLI) + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  std::string out;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, n);
  const int status = pclose(p);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

class Cli : public ::testing::Test {
 protected:
  fs::path dir;
  void SetUp() override {
    dir = fs::temp_directory_path() / ("qfid_cli_" + std::to_string(::getpid()));
    fs::create_directories(dir);
    write("zero.json", R"({"dim":2,"re":[[1,0],[0,0]]})");
    write("plus.json", R"({"dim":2,"re":[[0.5,0.5],[0.5,0.5]]})");
    write("a.json", R"({"dim":2,"re":[[0.5,0],[0,0.5]]})");
    write("b.json", R"({"dim":2,"re":[[0.25,0],[0,0.75]]})");
    write("nonherm.json", R"({"dim":2,"re":[[0.5,1],[0,0.5]]})");
    write("neg.json", R"({"dim":2,"re":[[1.5,0],[0,-0.5]]})");
  }
  void TearDown() override { fs::remove_all(dir); }
  void write(const char* name, const char* text) { std::ofstream(dir / name) << text; }
  std::string p(const char* name) const { return (dir / name).string(); }
};

std::size_t count_lines(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

}  // namespace

TEST_F(Cli, ComputePureStates) {
  const CliResult r = run("compute " + p("zero.json") + " " + p("plus.json"));
  ASSERT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_NEAR(j.at("uhlmann").get<double>(), 0.70710678, 1e-8);
  EXPECT_NEAR(j.at("holevo").get<double>(), 0.5, 1e-10);
  EXPECT_NEAR(j.at("matsumoto").get<double>(), 0.0, 1e-10);
  EXPECT_NEAR(j.at("trace_distance").get<double>(), 0.70710678, 1e-8);
}

TEST_F(Cli, ComputeIdenticalAndCommuting) {
  auto j = nlohmann::json::parse(run("compute " + p("a.json") + " " + p("a.json")).out);
  EXPECT_NEAR(j.at("matsumoto").get<double>(), 1.0, 1e-12);
  EXPECT_NEAR(j.at("trace_distance").get<double>(), 0.0, 1e-12);
  j = nlohmann::json::parse(run("compute " + p("a.json") + " " + p("b.json")).out);
  EXPECT_NEAR(j.at("uhlmann").get<double>(), j.at("matsumoto").get<double>(), 1e-12);
  EXPECT_NEAR(j.at("holevo").get<double>(), j.at("matsumoto").get<double>(), 1e-12);
}

TEST_F(Cli, ComputeRegularizes) {
  const CliResult r = run("--regularize 0.1 compute " + p("zero.json") + " " + p("zero.json"));
  ASSERT_EQ(r.code, 0);
  EXPECT_NEAR(nlohmann::json::parse(r.out).at("matsumoto").get<double>(), 1.0, 1e-10);
}

TEST_F(Cli, ExitCodes) {
  EXPECT_EQ(run("compute " + p("nonherm.json") + " " + p("a.json")).code, 2);
  EXPECT_EQ(run("compute " + p("neg.json") + " " + p("a.json")).code, 3);
  EXPECT_EQ(run("compute " + p("missing.json") + " " + p("a.json")).code, 2);
  EXPECT_EQ(run("nonsense").code, 2);
  EXPECT_EQ(run("geodesic --r0 -1 --dphi 0.1").code, 2);
}

TEST_F(Cli, SweepCsv) {
  const CliResult r = run("--out " + p("sweep.csv") + " sweep --theta-points 5 --lambda-points 3");
  ASSERT_EQ(r.code, 0);
  std::ifstream in(dir / "sweep.csv");
  std::stringstream ss;
  ss << in.rdbuf();
  const std::string csv = ss.str();
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "theta,lambda,uhlmann,holevo,matsumoto");
  EXPECT_EQ(count_lines(csv), 1u + 15u);
}

TEST_F(Cli, GeodesicCsv) {
  const CliResult r = run("geodesic --r0 10 --dphi 0.1 --samples 50");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(count_lines(r.out), 51u);
  EXPECT_NE(r.out.find("0,10\n"), std::string::npos);
}

TEST_F(Cli, SdpVerified) {
  const CliResult r = run("sdp " + p("a.json") + " " + p("b.json") + " --kind uhlmann");
  ASSERT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_NEAR(j.at("primal_value").get<double>(), std::sqrt(0.125) + std::sqrt(0.375), 1e-8);
}

TEST_F(Cli, SuiteZeroTrialsAndDeterminism) {
  CliResult r = run("suite --trials 0");
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(nlohmann::json::parse(r.out).at("rows").empty());
  const CliResult a = run("--seed 7 suite --trials 3 --max-dim 3");
  const CliResult b = run("--seed 7 suite --trials 3 --max-dim 3");
  EXPECT_EQ(a.out, b.out);
  EXPECT_FALSE(a.out.empty());
}
