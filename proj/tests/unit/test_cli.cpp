#include <gtest/gtest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "hdual/algebra.hpp"
#include "hdual/cli.hpp"

using hdual::Rational;
using hdual::cli::run;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result call(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string sys(const char* name) { return std::string(HDUAL_DATA_DIR "/systems/") + name; }

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  std::getline(in, line);  // header
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

}  // namespace

TEST(Validate, ExitCodes) {
  EXPECT_EQ(call({"validate", sys("cantor_p1.json")}).code, 0);
  EXPECT_EQ(call({"validate", sys("planar_line.json")}).code, 0);
  const auto bad = call({"validate", sys("cantor_even_bad.json"), "--format", "json"});
  EXPECT_EQ(bad.code, 1);
  const auto j = nlohmann::json::parse(bad.out);
  EXPECT_FALSE(j["valid"].get<bool>());
  EXPECT_EQ(j["failures"][0]["check"], "unitarity");
}

TEST(Validate, UsageErrors) {
  EXPECT_EQ(call({}).code, 2);
  EXPECT_EQ(call({"bogus"}).code, 2);
  EXPECT_EQ(call({"validate", "/nonexistent.json"}).code, 2);
  EXPECT_EQ(call({"cycles", sys("cantor_p1.json"), "--side", "X"}).code, 2);
  EXPECT_EQ(call({"sigma", sys("cantor_p1.json"), "--t", "1/0"}).code, 2);
  EXPECT_EQ(call({"scan", "--p-max", "10", "--repunit", "2"}).code, 2);
  EXPECT_EQ(call({"scan", "--p-max", "10", "--L-convention", "{0,3p}"}).code, 2);
  EXPECT_EQ(call({"density", "--set", "gamma2"}).code, 2);
  EXPECT_EQ(call({"muhat", sys("shifted_eighths.json"), "--closed-form-check"}).code, 2);
}

TEST(Cycles, Examples) {
  const auto r85 = call({"cycles", sys("cantor_p85.json")});
  EXPECT_EQ(r85.code, 0);
  EXPECT_EQ(r85.out, "cycle_index,length,points,digits\n0,4,7;23;27;28,85;85;85;0\n");
  EXPECT_EQ(call({"cycles", sys("cantor_p5.json")}).out, "cycle_index,length,points,digits\n");
  const auto s8 = call({"cycles", sys("shifted_eighths.json"), "--side", "B", "--mode", "words", "--max-word-len", "3"});
  EXPECT_EQ(s8.out, "cycle_index,length,points,digits\n0,1,1,7\n");
  const auto planar = call({"cycles", sys("planar_line.json"), "--side", "B", "--format", "json"});
  EXPECT_EQ(nlohmann::json::parse(planar.out)["verdict"], "InconclusiveNoCyclesFound");
  const auto assumed = call({"cycles", sys("planar_line.json"), "--side", "B", "--format", "json", "--assume-sufficient"});
  EXPECT_EQ(nlohmann::json::parse(assumed.out)["verdict"], "ONB");
  EXPECT_EQ(call({"cycles", sys("planar_line.json"), "--mode", "lattice"}).code, 2);
}

TEST(Scan, GoldenTableAndOnbList) {
  const auto r = call({"scan", "--R", "4", "--L-convention", "{0,p}", "--p-max", "100"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, slurp(HDUAL_FIXTURES "/cantor_r4_cycles.csv"));
  EXPECT_EQ(call({"scan", "--p-max", "99", "--onb-list"}).out, slurp(HDUAL_FIXTURES "/cantor_r4_onb.txt"));
  EXPECT_EQ(call({"scan", "--p-values", "1,5,25,125,625,3125", "--onb-list"}).out, "1,5,25,125,625,3125\n");
}

TEST(Scan, Repunit) {
  const auto r = call({"scan", "--repunit", "4"});
  EXPECT_EQ(r.code, 0);
  const auto rows = csv_rows(r.out);
  ASSERT_EQ(rows.size(), 1U);
  EXPECT_EQ(rows[0][0], "2396745");
  EXPECT_EQ(rows[0][2], "8");
  EXPECT_EQ(rows[0][3], "85598;609886;675422;683614;684638;684766;684782;684784");
  EXPECT_EQ(call({"scan", "--repunit", "4", "--R", "4"}).code, 2);
}

TEST(Scan, EvenPIsADomainFailure) {
  const auto r = call({"scan", "--p-values", "3,4"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("p=4"), std::string::npos);
}

TEST(Scan, ThreadsFromEnvironment) {
  const auto one = call({"scan", "--p-max", "100"});
  setenv("HDUAL_THREADS", "3", 1);
  EXPECT_EQ(hdual::cli::thread_count(), 3U);
  const auto three = call({"scan", "--p-max", "100"});
  unsetenv("HDUAL_THREADS");
  EXPECT_EQ(one.out, three.out);
}

TEST(Fourier, MuhatAndSigma) {
  const auto m = nlohmann::json::parse(call({"muhat", sys("cantor_p1.json"), "--t", "0"}).out);
  EXPECT_EQ(m["re"], 1);
  EXPECT_EQ(m["im"], 0);
  const auto s = nlohmann::json::parse(call({"sigma", sys("cantor_p1.json"), "--t", "0", "--level", "6"}).out);
  EXPECT_NEAR(s["value"].get<double>(), 1.0, 1e-8);
  const auto c = call({"muhat", sys("cantor_p1.json"), "--closed-form-check"});
  EXPECT_EQ(c.code, 0);
  EXPECT_LT(nlohmann::json::parse(c.out)["max_deviation"].get<double>(), 1e-9);
}

TEST(Density, Csv) {
  const auto r = call({"density", "--set", "gamma1", "--alpha", "1/2", "--n-max", "12"});
  EXPECT_EQ(r.code, 0);
  const auto rows = csv_rows(r.out);
  ASSERT_EQ(rows.size(), 12U);
  EXPECT_EQ(rows[2][1], "21");
  EXPECT_EQ(rows[2][2], "8");
  EXPECT_EQ(rows[11][2], "4096");
  const auto scaled = csv_rows(call({"density", "--set", "scaled:5", "--n-max", "12"}).out);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    EXPECT_EQ(scaled[i][2], rows[i][2]);
    EXPECT_EQ(Rational::parse(scaled[i][1]), Rational(5) * Rational::parse(rows[i][1]));
  }
}

TEST(Attractor, PlanarLine) {
  const auto l = csv_rows(call({"attractor", sys("planar_line.json"), "--side", "L", "--depth", "6"}).out);
  ASSERT_EQ(l.size(), 729U);
  for (const auto& row : l) {
    const Rational x = Rational::parse(row[0]), y = Rational::parse(row[1]);
    EXPECT_EQ(y, Rational(2) * x);
    EXPECT_LE(x.abs(), Rational::parse("1/2"));
  }
  const auto b = csv_rows(call({"attractor", sys("planar_line.json"), "--side", "B", "--depth", "1"}).out);
  ASSERT_EQ(b.size(), 3U);
  for (const auto& row : b)
    for (const auto& cell : row) {
      EXPECT_GE(Rational::parse(cell), Rational(0));
      EXPECT_LE(Rational::parse(cell), Rational::parse("1/2"));
    }
  EXPECT_EQ(call({"attractor", sys("cantor_p1.json"), "--depth", "0"}).out, "x\n0\n");
}

TEST(Reproduce, FreshAndCorrupted) {
  const auto ok = call({"reproduce"});
  EXPECT_EQ(ok.code, 0) << ok.out << ok.err;
  const auto list = call({"reproduce", "--list"});
  EXPECT_NE(list.out.find("cantor-table"), std::string::npos);

  const std::string bad = testing::TempDir() + "corrupt.csv";
  std::string text = slurp(HDUAL_FIXTURES "/cantor_r4_cycles.csv");
  text.replace(text.find("7;23;27;28"), 10, "7;23;27;29");
  std::ofstream(bad) << text;
  const auto r = call({"reproduce", "--fixture", bad});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("FAIL cantor-table"), std::string::npos);
  EXPECT_NE(r.err.find("- 85,0,4,7;23;27;29"), std::string::npos);
  EXPECT_NE(r.err.find("+ 85,0,4,7;23;27;28"), std::string::npos);
}

TEST(Output, Deterministic) {
  for (const std::vector<std::string>& args :
       {std::vector<std::string>{"sigma", sys("planar_line.json"), "--t", "1/5,7/10", "--level", "3"},
        std::vector<std::string>{"attractor", sys("shifted_eighths.json"), "--depth", "3"},
        std::vector<std::string>{"density", "--alpha", "1"}})
    EXPECT_EQ(call(args).out, call(args).out);
}
