#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "json.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = meanset::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

class Files : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("meanset-cli-" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
                                        "-" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string write(const std::string& name, const std::string& text) {
    auto p = dir_ / name;
    std::ofstream(p) << text;
    return p.string();
  }

  fs::path dir_;
};

}  // namespace

TEST_F(Files, MeansetOnEdgeList) {
  auto g = write("g.txt", "0 1\n1 2\n");
  auto m = write("m.txt", "0 1/2\n2 1/2\n");
  auto r = run({"meanset", "--graph", g, "--measure", m, "--class", "2", "--method", "exact"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["vertices"], nlohmann::json::array({1}));
  EXPECT_EQ(j["min_weight"], "1/1");
  EXPECT_EQ(j["method"], "exact");
  EXPECT_TRUE(j.contains("steps"));
}

TEST_F(Files, MeansetOnFreeGroupAndLine) {
  auto m = write("w.txt", "e 1\na 1\nA 1\n");
  auto r = run({"meanset", "--free-rank", "2", "--measure", m, "--method", "bounded"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(nlohmann::json::parse(r.out)["vertices"], nlohmann::json::array({"e"}));
  auto z = write("z.txt", "0 1\n1 1\n");
  auto line = run({"meanset", "--line", "--measure", z});
  ASSERT_EQ(line.code, 0) << line.err;
  EXPECT_EQ(nlohmann::json::parse(line.out)["vertices"], nlohmann::json::array({0, 1}));
  EXPECT_EQ(nlohmann::json::parse(line.out)["min_weight"], "1/2");
}

TEST_F(Files, UsageErrors) {
  auto z = write("z.txt", "0 1\n1 1\n");
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"bogus"}).code, 2);
  EXPECT_EQ(run({"meanset", "--line"}).code, 2);
  EXPECT_EQ(run({"meanset", "--measure", z}).code, 2);
  EXPECT_EQ(run({"meanset", "--line", "--measure", z, "--class", "3"}).code, 2);
  EXPECT_EQ(run({"meanset", "--line", "--measure", z, "--method", "exact"}).code, 2);
  EXPECT_EQ(run({"meanset", "--line", "--measure", "/nonexistent"}).code, 2);
  EXPECT_EQ(run({"table-f4", "--samples", "4,2"}).code, 2);
  EXPECT_EQ(run({"table-f4", "--samples", "x"}).code, 2);
  EXPECT_EQ(run({"check", "--suite", "nope"}).code, 2);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST_F(Files, WalkReport) {
  auto z = write("z.txt", "0 1\n1 1\n");
  auto r = run({"walk", "--line", "--measure", z, "--steps", "1000", "--seed", "3"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["dimension"], 1);
  EXPECT_EQ(j["first_moment"], nlohmann::json::array({"0/1"}));
  EXPECT_EQ(j["second_moment"], "1/1");
  EXPECT_EQ(j["hypotheses"]["has_positive_vector"], "yes");
  EXPECT_EQ(j["hypotheses"]["mu_base_positive"], true);
  EXPECT_TRUE(j.contains("orthant_visits"));
  EXPECT_TRUE(j.contains("last_visit"));
  EXPECT_EQ(r.out, run({"walk", "--line", "--measure", z, "--steps", "1000", "--seed", "3"}).out);
  EXPECT_EQ(run({"walk", "--line", "--measure", z, "--base", "5"}).code, 2);
}

TEST_F(Files, TableWritesCsvAndJson) {
  auto csv = (dir_ / "t.csv").string();
  auto r = run({"table-f4", "--rank", "2", "--lengths", "3,4", "--samples", "2,4", "--trials", "20", "--seed", "1",
                "--out", csv});
  ASSERT_EQ(r.code, 0) << r.err;
  std::ifstream in(csv);
  std::string header, line;
  std::getline(in, header);
  EXPECT_EQ(header, "rank,L,n,trials,d0,d1,d2,d3plus,min_d0,min_d1,min_d2,min_d3plus");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  EXPECT_EQ(rows, 4);
  auto j = run({"table-f4", "--rank", "2", "--lengths", "3", "--samples", "2", "--trials", "20", "--format", "json"});
  ASSERT_EQ(j.code, 0);
  EXPECT_EQ(nlohmann::json::parse(j.out)["cells"].size(), 1u);
}

TEST_F(Files, DecayAndSlln) {
  auto g = write("g.txt", "0 1\n1 2\n2 3\n3 4\n");
  auto m = write("m.txt", "0 3\n1 5\n3 1\n4 1\n");
  auto r = run({"decay", "--graph", g, "--measure", m, "--samples", "4,8", "--trials", "50"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "n,trials,misses,miss_rate,n_times_rate,log_rate");
  auto sphere = run({"decay", "--free-rank", "2", "--sphere", "2", "--samples", "2,4", "--trials", "20", "--format", "json"});
  ASSERT_EQ(sphere.code, 0) << sphere.err;
  EXPECT_EQ(nlohmann::json::parse(sphere.out).size(), 2u);
  auto two = write("two.txt", "0 1\n1 1\n");
  EXPECT_EQ(run({"decay", "--line", "--measure", two, "--trials", "5"}).code, 2);
  EXPECT_EQ(run({"decay", "--line", "--measure", two, "--trials", "5", "--containment"}).code, 0);
  auto s = run({"slln", "--line", "--measure", two, "--steps", "5000", "--after", "100"});
  ASSERT_EQ(s.code, 0) << s.err;
  EXPECT_EQ(nlohmann::json::parse(s.out)["mean_set"], nlohmann::json::array({0, 1}));
}

TEST(Check, ExitCodesAndSingleCaseReplay) {
  auto ok = run({"check", "--suite", "tree,classical", "--cases", "20"});
  EXPECT_EQ(ok.code, 0) << ok.out;
  auto bad = run({"check", "--suite", "shift", "--inject-fault"});
  EXPECT_EQ(bad.code, 1);
  auto pos = bad.out.find("case seed ");
  ASSERT_NE(pos, std::string::npos);
  std::string seed = bad.out.substr(pos + 10, bad.out.find(':', pos) - pos - 10);
  EXPECT_EQ(run({"check", "--suite", "shift", "--inject-fault", "--case-seed", seed}).code, 1);
  EXPECT_EQ(run({"check", "--suite", "shift", "--case-seed", seed}).code, 0);
  auto j = run({"check", "--suite", "path3", "--cases", "10", "--format", "json"});
  EXPECT_EQ(nlohmann::json::parse(j.out)["passed"], true);
}
