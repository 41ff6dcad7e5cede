#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "qcs/harness.hpp"

namespace {

struct Outcome {
  int status = -1;
  std::string out;
};

Outcome run_cli(const std::string& args) {
  const std::string cmd = std::string(QCS_CLI_PATH) + " " + args + " 2>/dev/null";
  Outcome o;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return o;
  char buf[4096];
  std::size_t n = 0;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) o.out.append(buf, n);
  const int raw = pclose(pipe);
  o.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return o;
}

std::filesystem::path scratch(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("qcs_cli_test_" + name);
}

TEST(Cli, VerifyQuantizerSuitePasses) {
  const auto o = run_cli("verify --suite quantizer");
  EXPECT_EQ(o.status, 0) << o.out;
  EXPECT_NE(o.out.find("PASS"), std::string::npos);
  EXPECT_EQ(o.out.find("FAIL"), std::string::npos);
}

TEST(Cli, VerifyUnknownSuite) { EXPECT_EQ(run_cli("verify --suite bogus").status, 2); }

TEST(Cli, RecoverPrintsPerIterateErrors) {
  const auto o = run_cli("recover --family one_bit_gaussian --n 50 --k 2 --m 300 --iters 12 --seed 3");
  ASSERT_EQ(o.status, 0);
  std::istringstream in(o.out);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "iteration,error");
  int rows = 0;
  std::string last;
  while (std::getline(in, line)) {
    if (line.rfind("final,", 0) == 0) {
      last = line;
      break;
    }
    ++rows;
  }
  EXPECT_EQ(rows, 12);
  EXPECT_FALSE(last.empty());
  EXPECT_EQ(o.out, run_cli("recover --family one_bit_gaussian --n 50 --k 2 --m 300 --iters 12 --seed 3").out);
}

TEST(Cli, RecoverMultiBit) {
  const auto o = run_cli("recover --family dithered_multi_bit --n 40 --k 2 --m 200 --L 8 --iters 5");
  EXPECT_EQ(o.status, 0);
  EXPECT_EQ(run_cli("recover --family dithered_multi_bit --n 40 --k 2 --m 200 --L 3").status, 1);
}

TEST(Cli, RunWritesCsvAndSvg) {
  const auto plan = scratch("plan.json");
  const auto csv = scratch("out.csv");
  const auto svg = scratch("out.svg");
  {
    std::ofstream p(plan);
    p << R"({"family": "dithered_one_bit", "model": {"structure": "sparse", "n": 40, "k": 2},
             "m_grid": [100, 200, 300], "lambda": 1.5, "trials": 4, "iterations": 10, "master_seed": 1})";
  }
  const auto o = run_cli("run --config " + plan.string() + " --out " + csv.string() + " --svg " + svg.string() +
                         " --threads 2");
  ASSERT_EQ(o.status, 0);
  std::ifstream c(csv);
  std::string line;
  std::getline(c, line);
  EXPECT_EQ(line, qcs::kCsvHeader);
  int rows = 0;
  while (std::getline(c, line)) ++rows;
  EXPECT_EQ(rows, 3);
  EXPECT_TRUE(std::filesystem::exists(svg));
}

TEST(Cli, RunRejectsBadPlan) {
  const auto plan = scratch("bad.json");
  {
    std::ofstream p(plan);
    p << R"({"family": "one_bit_gaussian", "model": {"structure": "sparse", "n": 4, "k": 1}, "m_grid": []})";
  }
  EXPECT_NE(run_cli("run --config " + plan.string() + " --out " + scratch("bad.csv").string()).status, 0);
}

}  // namespace
