// Copyright 2026 The oica Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Drives the oica binary through the shell and checks exit codes and outputs.

#include <gtest/gtest.h>
#include <sys/wait.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace {

namespace fs = std::filesystem;

struct Outcome {
  int code;
  std::string out;
};

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    dir_ = fs::temp_directory_path() / (std::string("oica_cli_") + info->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  Outcome run(const std::string& args) const {
    const fs::path log = dir_ / "stdout.txt";
    const std::string cmd = "cd '" + dir_.string() + "' && '" OICA_CLI_PATH "' " + args + " > '" +
                            log.string() + "' 2>&1";
    const int status = std::system(cmd.c_str());
    Outcome o{WIFEXITED(status) ? WEXITSTATUS(status) : -1, slurp(log)};
    return o;
  }

  static std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

  std::vector<std::string> lines(const std::string& rel) const {
    std::ifstream in(dir_ / rel);
    std::vector<std::string> out;
    for (std::string l; std::getline(in, l);) out.push_back(l);
    return out;
  }

  fs::path dir_;
};

TEST_F(Cli, HelpAndUsage) {
  EXPECT_EQ(run("--help").code, 0);
  EXPECT_EQ(run("run --help").code, 0);
  EXPECT_EQ(run("").code, 2);
  EXPECT_EQ(run("frobnicate").code, 2);
  EXPECT_EQ(run("run --dataset x --out y --algorithm magic").code, 2);
  EXPECT_EQ(run("gen --samples 0 --gaussian 1 --out ds").code, 2);
  EXPECT_EQ(run("gen --samples 100 --out ds").code, 2);
}

TEST_F(Cli, GenRhoGridHasTwentyRows) {
  const Outcome o = run("gen --paper-grid --samples 500 --seed 1 --out ds");
  ASSERT_EQ(o.code, 0) << o.out;
  const auto meta = lines("ds/meta.txt");
  EXPECT_NE(std::find(meta.begin(), meta.end(), "rows=20"), meta.end());
  EXPECT_TRUE(fs::exists(dir_ / "ds/X.mat"));
  EXPECT_TRUE(fs::exists(dir_ / "ds/A.mat"));
}

TEST_F(Cli, GenMixedRowsAndTextFormat) {
  const Outcome o = run("gen --rho 1 --rho 8 --gaussian 2 --samples 300 --format text --out ds");
  ASSERT_EQ(o.code, 0) << o.out;
  const auto x = lines("ds/X.mat");
  ASSERT_FALSE(x.empty());
  EXPECT_EQ(x[0], "4 300");
  EXPECT_NE(o.out.find("gaussian"), std::string::npos);
}

TEST_F(Cli, RunFastAndReferenceThenCompare) {
  ASSERT_EQ(run("gen --rho 0.5 --rho 1 --rho 8 --samples 20000 --seed 4 --out ds").code, 0);
  const Outcome fast = run("run -d ds -o fast -L 5 --eps 1e-10 -K 200 --seed 2");
  ASSERT_EQ(fast.code, 0) << fast.out;
  const Outcome ref =
      run("run -d ds -o ref -L 5 --eps 1e-10 -K 200 --seed 2 --algorithm reference");
  ASSERT_EQ(ref.code, 0) << ref.out;
  EXPECT_TRUE(fs::exists(dir_ / "fast/W.mat"));
  EXPECT_TRUE(fs::exists(dir_ / "fast/timing.csv"));
  const Outcome cmp = run("compare fast ref --tol 1e-6");
  EXPECT_EQ(cmp.code, 0) << cmp.out;
  EXPECT_NE(cmp.out.find("MATCH"), std::string::npos);
  EXPECT_EQ(run("compare fast fast --tol 0").code, 0);
}

TEST_F(Cli, CompareMismatchExitsOne) {
  ASSERT_EQ(run("gen --rho 1 --rho 4 --gaussian 1 --samples 3000 --seed 4 --out ds").code, 0);
  ASSERT_EQ(run("run -d ds -o a -L 1 --seed 1 -K 1").code, 0);
  ASSERT_EQ(run("run -d ds -o b -L 1 --seed 2 -K 1").code, 0);
  EXPECT_EQ(run("compare a b --tol 1e-12").code, 1);
}

TEST_F(Cli, CompareDifferentDatasetsIsAlgorithmError) {
  ASSERT_EQ(run("gen --rho 1 --gaussian 1 --samples 2000 --seed 1 --out d1").code, 0);
  ASSERT_EQ(run("gen --rho 1 --gaussian 1 --samples 2000 --seed 2 --out d2").code, 0);
  ASSERT_EQ(run("run -d d1 -o a -L 2").code, 0);
  ASSERT_EQ(run("run -d d2 -o b -L 2").code, 0);
  EXPECT_EQ(run("compare a b").code, 4);
}

TEST_F(Cli, TamperedDatasetFailsVerification) {
  ASSERT_EQ(run("gen --rho 1 --gaussian 1 --samples 2000 --seed 1 --format text --out ds").code,
            0);
  ASSERT_EQ(run("run -d ds -o a -L 2").code, 0);
  ASSERT_EQ(run("run -d ds -o b -L 2").code, 0);
  {
    std::ofstream x(dir_ / "ds/X.mat", std::ios::trunc);
    x << "2 2\n1 0\n0 1\n";
  }
  EXPECT_EQ(run("compare a b").code, 3);
  EXPECT_EQ(run("compare a b --no-verify").code, 0);
}

TEST_F(Cli, PureGaussianStopsAtFirstIndex) {
  ASSERT_EQ(run("gen --gaussian 8 --samples 100000 --seed 1 --out ds").code, 0);
  const Outcome o = run("run -d ds -o r -L 20 --seed 1 --format text");
  ASSERT_EQ(o.code, 0) << o.out;
  EXPECT_NE(o.out.find("extracted 0 of 8, stop_index 1"), std::string::npos) << o.out;
  const auto w = lines("r/W.mat");
  ASSERT_EQ(w.size(), 1u);
  EXPECT_EQ(w[0], "0 8");
}

TEST_F(Cli, MissingInputsAreIoErrors) {
  EXPECT_EQ(run("run -d nowhere -o r").code, 3);
  EXPECT_EQ(run("compare nowhere nowhere2").code, 3);
  EXPECT_EQ(run("sweep -d nowhere -o s").code, 3);
}

TEST_F(Cli, OutputMustDifferFromDataset) {
  ASSERT_EQ(run("gen --rho 1 --gaussian 1 --samples 500 --out ds").code, 0);
  EXPECT_EQ(run("run -d ds -o ds").code, 2);
  EXPECT_EQ(run("run -d ds -o ./ds/").code, 2);
}

TEST_F(Cli, SweepWritesThreeCsvFiles) {
  ASSERT_EQ(run("gen --rho 1 --rho 8 --gaussian 1 --samples 3000 --seed 2 --out ds").code, 0);
  const Outcome o = run("sweep -d ds -o sw -L 1,3 -T 1");
  ASSERT_EQ(o.code, 0) << o.out;
  for (const char* f : {"sw/ordering_error_vs_L.csv", "sw/time_vs_L.csv",
                        "sw/ngauss_count_vs_L.csv"}) {
    const auto l = lines(f);
    ASSERT_EQ(l.size(), 3u) << f;
    EXPECT_EQ(l[0], "L,mean,stddev");
    EXPECT_EQ(l[1].substr(0, 2), "1,");
    EXPECT_EQ(l[2].substr(0, 2), "3,");
    // One repeat: no spread.
    EXPECT_EQ(l[1].substr(l[1].rfind(',')), ",0");
  }
}

TEST_F(Cli, FluctNeedsTwoRuns) {
  ASSERT_EQ(run("gen --rho 1 --gaussian 1 --samples 500 --out ds").code, 0);
  EXPECT_EQ(run("fluct -d ds -o f -T 1").code, 2);
}

TEST_F(Cli, FluctSameSeedIsZero) {
  ASSERT_EQ(run("gen --rho 1 --rho 8 --gaussian 1 --samples 3000 --seed 3 --out ds").code, 0);
  const Outcome o = run("fluct -d ds -o f -T 3 -L 4 --same-seed");
  ASSERT_EQ(o.code, 0) << o.out;
  const auto per = lines("f/fluctuation_per_rank.csv");
  ASSERT_GE(per.size(), 2u);
  EXPECT_EQ(per[0], "rank,fluctuation");
  for (std::size_t k = 1; k < per.size(); ++k) EXPECT_EQ(per[k].substr(per[k].find(',')), ",0");
  const auto groups = lines("f/fluctuation_groups.csv");
  ASSERT_GE(groups.size(), 2u);
  EXPECT_EQ(groups[1].substr(0, 4), "all,");
}

}  // namespace
