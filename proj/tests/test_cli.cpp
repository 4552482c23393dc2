#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>

#include <gtest/gtest.h>
#include <json.hpp>

#include "dl4x/parser.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
  int status = -1;
  std::string out, err;
};

std::string sample(const char *name) { return std::string(DL4X_SAMPLES_DIR) + "/" + name; }

std::string slurp(const fs::path &p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Run cli(const std::string &args) {
  static int counter = 0;
  const fs::path err = fs::temp_directory_path() / ("dl4x_cli_err_" + std::to_string(::getpid()) + "_" +
                                                    std::to_string(counter++));
  const std::string cmd = std::string(DL4X_CLI_PATH) + " " + args + " 2>" + err.string();
  Run r;
  FILE *p = ::popen(cmd.c_str(), "r");
  if (!p)
    return r;
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = std::fread(buf.data(), 1, buf.size(), p)) > 0)
    r.out.append(buf.data(), n);
  int st = ::pclose(p);
  r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  r.err = slurp(err);
  fs::remove(err);
  return r;
}

fs::path write_temp(const std::string &name, const std::string &text) {
  auto p = fs::temp_directory_path() / (std::to_string(::getpid()) + "_" + name);
  std::ofstream(p) << text;
  return p;
}

} // namespace

TEST(Cli, CheckConsistent) {
  auto r = cli("check " + sample("family.dlkb"));
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(r.out, "consistent\n");
}

TEST(Cli, CheckInconsistent) {
  auto r = cli("check " + sample("clash.dlkb"));
  EXPECT_EQ(r.status, 1);
  EXPECT_EQ(r.out, "inconsistent\n");
}

TEST(Cli, QueryBothEngines) {
  auto both = cli("query " + sample("family.dlkb") + " " + sample("parents.dlq") + " --engine both");
  EXPECT_EQ(both.status, 0) << both.err;
  EXPECT_EQ(both.out, "x=ann, y=bob\n");
  auto naive = cli("query " + sample("family.dlkb") + " " + sample("parents.dlq") + " --engine naive");
  auto tab = cli("query " + sample("family.dlkb") + " " + sample("parents.dlq") + " --engine tableau");
  EXPECT_EQ(naive.out, both.out);
  EXPECT_EQ(tab.out, both.out);
  auto cheap = cli("query " + sample("prices.dlkb") + " " + sample("cheap.dlq") + " --engine both");
  EXPECT_EQ(cheap.status, 0);
  EXPECT_EQ(cheap.out, "x=book\nx=pen\n");
}

TEST(Cli, ThreadsDoNotChangeAnswers) {
  auto one = cli("query " + sample("prices.dlkb") + " " + sample("cheap.dlq") + " --engine naive");
  auto four = cli("--threads 4 query " + sample("prices.dlkb") + " " + sample("cheap.dlq") + " --engine naive");
  EXPECT_EQ(one.out, four.out);
}

TEST(Cli, StatsJson) {
  auto r = cli("stats " + sample("family.dlkb") + " --json");
  ASSERT_EQ(r.status, 0);
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["v"], 1);
  for (const char *k : {"k", "m", "r", "l", "clauses"})
    EXPECT_TRUE(j.contains(k) && j[k].is_number_unsigned()) << k;
  // the flag may also come before the subcommand
  EXPECT_EQ(cli("--json stats " + sample("family.dlkb")).out, r.out);
}

TEST(Cli, Trace) {
  auto r = cli("check " + sample("clash.dlkb") + " --trace");
  EXPECT_EQ(r.status, 1);
  std::istringstream in(r.out);
  std::string line, last;
  std::size_t rules = 0;
  const std::regex shape(R"((E|PB) [0-9]+ \(.*\))");
  while (std::getline(in, line)) {
    if (line == "inconsistent") {
      last = line;
      continue;
    }
    EXPECT_TRUE(std::regex_match(line, shape)) << line;
    ++rules;
  }
  EXPECT_GT(rules, 0u);
  EXPECT_EQ(last, "inconsistent");
}

TEST(Cli, Deterministic) {
  const std::string kb = sample("family.dlkb"), q = sample("parents.dlq");
  for (const std::string &args : {"check " + kb + " --trace", "translate " + kb + " " + q, "stats " + kb + " --json",
                                  "query " + kb + " " + q + " --engine both --trace"}) {
    auto a = cli(args), b = cli(args);
    EXPECT_EQ(a.out, b.out) << args;
    EXPECT_EQ(a.status, b.status) << args;
  }
}

TEST(Cli, TranslateDumpNormal) {
  auto r = cli("translate " + sample("family.dlkb") + " --dump-normal");
  ASSERT_EQ(r.status, 0);
  // fresh names are outside the parser's vocabulary, so only check the shape
  EXPECT_NE(r.out.find("axiom "), std::string::npos);
  EXPECT_NE(r.out.find("assert ann : Person."), std::string::npos);
  auto t = cli("translate " + sample("family.dlkb") + " " + sample("parents.dlq"));
  ASSERT_EQ(t.status, 0);
  EXPECT_NE(t.out.find("; assert ann : Person.\n(and (or (in x:ann X1:Person)))"), std::string::npos);
  EXPECT_NE(t.out.find("; query\n(and (in2 x:?x x:?y X3:hasChild) (in x:?x X1:Parent))"), std::string::npos);
}

TEST(Cli, ParseErrorExitsTwo) {
  auto bad = write_temp("bad.dlkb", "concept A.\nassert a : A.\n");
  auto r = cli("check " + bad.string());
  EXPECT_EQ(r.status, 2);
  EXPECT_TRUE(r.out.empty());
  EXPECT_NE(r.err.find(bad.string() + ":2:"), std::string::npos) << r.err;
  fs::remove(bad);
  EXPECT_EQ(cli("check /nonexistent/kb.dlkb").status, 2);
  EXPECT_EQ(cli("frobnicate").status, 2);
  EXPECT_EQ(cli("query " + sample("family.dlkb") + " " + sample("parents.dlq") + " --engine fast").status, 2);
}

TEST(Cli, BudgetExitsTwo) {
  auto r = cli("--budget-clauses 10 check " + sample("family.dlkb"));
  EXPECT_EQ(r.status, 2);
  EXPECT_NE(r.err.find("budget"), std::string::npos) << r.err;
  auto b = cli("--budget-branches 1 check " + sample("family.dlkb"));
  EXPECT_EQ(b.status, 2);
}

TEST(Cli, HiddenOracle) {
  auto help = cli("--help");
  EXPECT_EQ(help.out.find("oracle"), std::string::npos);
  auto r = cli("oracle " + sample("family.dlkb"));
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(r.out.rfind("consistent\n", 0), 0u);
  EXPECT_EQ(cli("oracle " + sample("clash.dlkb")).status, 1);
  auto q = cli("oracle " + sample("prices.dlkb") + " " + sample("cheap.dlq"));
  EXPECT_EQ(q.out, "x=book\nx=pen\n");
}

TEST(Cli, SeedDoesNotChangeOutput) {
  auto a = cli("--seed 1 query " + sample("family.dlkb") + " " + sample("parents.dlq"));
  auto b = cli("--seed 99 query " + sample("family.dlkb") + " " + sample("parents.dlq"));
  EXPECT_EQ(a.out, b.out);
}
