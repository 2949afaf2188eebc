#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "json.hpp"

namespace fs = std::filesystem;

namespace {

std::string bin() {
  const char* b = std::getenv("QFOCK_BIN");
  return b ? b : "qfock";
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("qfock_cli_test_" + name);
  fs::remove_all(p);
  return p;
}

int run(const std::string& args) {
  const std::string cmd = bin() + " " + args + " >/dev/null 2>&1";
  const int st = std::system(cmd.c_str());
  return WIFEXITED(st) ? WEXITSTATUS(st) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  std::stringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

std::vector<std::vector<std::string>> csv_rows(const fs::path& p) {
  std::vector<std::vector<std::string>> out;
  std::ifstream is(p);
  std::string line;
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::vector<std::string> f;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) f.push_back(cell);
    out.push_back(f);
  }
  return out;
}

}  // namespace

TEST(Cli, ExpectVacuumVariances) {
  const fs::path out = scratch("vac.csv");
  ASSERT_EQ(run("expect --r-min 0 --r-max 0 --r-steps 1 --theta-min 37 --theta-steps 1 --out " +
                out.string()),
            0);
  const auto rows = csv_rows(out);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0][6], "var_x");
  EXPECT_DOUBLE_EQ(std::stod(rows[1][6]), 0.25);
  EXPECT_DOUBLE_EQ(std::stod(rows[1][8]), 0.25);
}

TEST(Cli, ExpectVarianceRatio) {
  const fs::path out = scratch("ratio.csv");
  ASSERT_EQ(run("expect --r-min 1 --r-max 1 --r-steps 1 --theta-steps 1 --out " + out.string()), 0);
  const auto rows = csv_rows(out);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_NEAR(std::stod(rows[1][6]) / std::stod(rows[1][8]), std::exp(4.0), 1e-8);
}

TEST(Cli, ExpectEmptyRangeIsHeaderOnly) {
  const fs::path out = scratch("empty.csv");
  ASSERT_EQ(run("expect --r-steps 0 --out " + out.string()), 0);
  EXPECT_EQ(csv_rows(out).size(), 1u);
}

TEST(Cli, StateCoherentVacuum) {
  const fs::path out = scratch("coh.json");
  ASSERT_EQ(run("state coherent --dim 8 --q 0 --out " + out.string()), 0);
  const auto j = nlohmann::json::parse(slurp(out));
  EXPECT_EQ(j["dim"], 8);
  EXPECT_EQ(j["data"][0][0], 1.0);
  for (int k = 1; k < 8; ++k)
    for (int c = 0; c < 4; ++c) EXPECT_EQ(j["data"][k][c], 0.0);
  EXPECT_DOUBLE_EQ(j["norm"].get<double>(), 1.0);
}

TEST(Cli, StatePureSqueezedEvenSupport) {
  const fs::path out = scratch("psq.json");
  ASSERT_EQ(run("state pure_squeezed --p 0,0.9 --out " + out.string()), 0);
  const auto j = nlohmann::json::parse(slurp(out));
  const int d = j["dim"];
  for (int k = 1; k < d; k += 2)
    for (int c = 0; c < 4; ++c) EXPECT_LE(std::abs(j["data"][k][c].get<double>()), 1e-12);
  EXPECT_LT(j["tail_mass"].get<double>(), 1e-12);
}

TEST(Cli, StateSqueezedMixedSlices) {
  const fs::path out = scratch("sq.json");
  ASSERT_EQ(run("state squeezed --p 0,0.4 --q 0,0,0.5 --out " + out.string()), 0);
  const auto j = nlohmann::json::parse(slurp(out));
  EXPECT_NEAR(j["norm"].get<double>(), 1, 1e-12);
}

TEST(Cli, StateTailViolation) {
  EXPECT_EQ(run("state squeezed --p 1.5 --q 2 --dim 64"), 1);
}

TEST(Cli, ConfigErrors) {
  EXPECT_EQ(run("verify --dim 8 --margin 8"), 2);
  EXPECT_EQ(run("verify --axis 0,0,0"), 2);
  EXPECT_EQ(run("verify --measure flat"), 2);
  EXPECT_EQ(run("state bogus"), 2);
  EXPECT_EQ(run("nosuchcommand"), 2);
}

TEST(Cli, VerifyTooSmallDimFails) {
  const fs::path out = scratch("v8");
  EXPECT_EQ(run("verify --dim 8 --out " + out.string()), 1);
  const std::string csv = slurp(out / "verify.csv");
  EXPECT_NE(csv.find(",false"), std::string::npos);
  EXPECT_TRUE(fs::exists(out / "ledger.json"));
}
