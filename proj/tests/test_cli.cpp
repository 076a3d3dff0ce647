// Command-line front end: golden text reports, exit codes, and agreement
// between the json and text renderings.
//
// Set TTIDEAL_UPDATE_GOLDEN=1 to rewrite the golden files.

#include "ttideal/cli.hpp"

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace {

namespace fs = std::filesystem;
using ttideal::cli::Json;

const std::string kDemos = TTIDEAL_DEMOS;
const std::string kGolden = TTIDEAL_GOLDEN;

std::string demo(const std::string &name) { return kDemos + "/" + name; }

struct Result {
  int code;
  std::string out, err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = ttideal::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

void replace_all(std::string &s, const std::string &from, const std::string &to) {
  for (std::size_t pos = 0; (pos = s.find(from, pos)) != std::string::npos; pos += to.size()) s.replace(pos, from.size(), to);
}

void expect_golden(const std::string &name, std::string text) {
  replace_all(text, kDemos, "<demos>");
  replace_all(text, fs::temp_directory_path().string(), "<tmp>");
  const std::string path = kGolden + "/" + name + ".txt";
  if (std::getenv("TTIDEAL_UPDATE_GOLDEN")) {
    std::ofstream(path) << text;
    return;
  }
  std::ifstream in(path);
  ASSERT_TRUE(in) << "missing golden file " << path;
  std::stringstream want;
  want << in.rdbuf();
  EXPECT_EQ(text, want.str()) << name;
}

Json run_json(std::vector<std::string> args) {
  args.push_back("--format");
  args.push_back("json");
  auto r = run(args);
  EXPECT_EQ(r.code, 0) << r.err;
  return Json::parse(r.out);
}

} // namespace

TEST(CliGolden, KoszulAnnihilator) {
  auto r = run({"ann", "--ring", "Z", "--koszul", "2"});
  EXPECT_EQ(r.code, 0);
  expect_golden("ann_koszul", r.out);
}

TEST(CliGolden, MembershipNo) {
  auto r = run({"member", "--ring", "Z", "--ideal", "compact{(2)}", "--complex", demo("z10.complex")});
  EXPECT_EQ(r.code, 0);
  expect_golden("member_z10", r.out);
}

TEST(CliGolden, FiberReport) {
  auto r = run({"fiber-report", "--cmax", "3"});
  EXPECT_EQ(r.code, 0);
  expect_golden("fiber_report", r.out);
}

TEST(CliGolden, ArtinianSpectrum) {
  auto r = run({"spc-report", "--ring", "Z/12"});
  EXPECT_EQ(r.code, 0);
  expect_golden("spc_report_z12", r.out);
}

TEST(CliGolden, ArtinianClassification) {
  auto r = run({"classify-artinian", "--ring", "Z/12"});
  EXPECT_EQ(r.code, 0);
  expect_golden("classify_z12", r.out);
}

TEST(CliGolden, MinimalConstant) {
  auto r = run({"minimal-c", "--complex", demo("g3.formal")});
  EXPECT_EQ(r.code, 0);
  expect_golden("minimal_c_g3", r.out);
}

TEST(CliGolden, FormalHomology) {
  auto r = run({"homology", "--complex", demo("factorial.formal"), "--window", "5"});
  EXPECT_EQ(r.code, 0);
  expect_golden("homology_factorial", r.out);
}

TEST(CliGolden, ComparisonMap) {
  auto r = run({"s-of-supp", "--ring", "Z", "--supp", "cofinmax{(5)}"});
  EXPECT_EQ(r.code, 0);
  expect_golden("s_of_supp_cofin5", r.out);
}

TEST(CliGolden, NilpotenceWritesWitness) {
  const auto witness = fs::temp_directory_path() / "ttideal_two_id_z4.witness";
  fs::remove(witness);
  auto r = run({"nilpotence", "--ring", "Z/4", "--map", demo("two_id_z4.map"), "--witness", witness.string()});
  EXPECT_EQ(r.code, 0);
  expect_golden("nilpotence_z4", r.out);
  std::ifstream in(witness);
  ASSERT_TRUE(in);
  std::stringstream body;
  body << in.rdbuf();
  expect_golden("nilpotence_z4_witness", body.str());
  fs::remove(witness);
}

TEST(CliExit, CheckFailureOnlyWithExpectation) {
  std::vector<std::string> args{"member", "--ring", "Z", "--ideal", "compact{(2)}", "--complex", demo("z10.complex")};
  auto yes = args;
  yes.insert(yes.end(), {"--expect", "yes"});
  EXPECT_EQ(run(yes).code, 1);
  auto no = args;
  no.insert(no.end(), {"--expect", "no"});
  EXPECT_EQ(run(no).code, 0);
}

TEST(CliExit, UsageAndLibraryErrors) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"ann", "--ring", "Z/1", "--koszul", "2"}).code, 2);
  EXPECT_EQ(run({"ann", "--ring", "Z", "--koszul", "2", "--format", "xml"}).code, 2);
  EXPECT_EQ(run({"member", "--ring", "Z/12", "--ideal", "zero", "--complex", demo("z10.complex")}).code, 2);
  EXPECT_EQ(run({"verify", "no-such-suite"}).code, 2);
  EXPECT_EQ(run({"supp", "--ring", "Z", "--complex", demo("missing.complex")}).code, 2);
  EXPECT_EQ(run({"ann", "--help"}).code, 0);
}

TEST(CliExit, UndeterminedAnswersAndBudgets) {
  auto unknown = run({"lattice", "--ring", "Z", "--ideal", "compact{(2)}"});
  ASSERT_EQ(unknown.code, 0) << unknown.err;
  auto rad = run({"member", "--ring", "DVR", "--ideal", "L2", "--complex", demo("g3.formal"), "--window", "4"});
  EXPECT_EQ(rad.code, 0) << rad.err;
  EXPECT_EQ(run({"tensor", "--ring", "Z/12", "--complex", demo("z12_cone6.complex"), "--complex",
                 demo("z12_cone6.complex"), "--budget", "2"})
                .code,
            3);
  EXPECT_EQ(run({"nilpotence", "--ring", "Z/6", "--map", demo("two_id_z6.map")}).code, 0);
  EXPECT_EQ(run({"nilpotence", "--ring", "Z/9", "--map", demo("three_id_z9.map"), "--budget", "1"}).code, 3);
}

TEST(CliExit, SizeBudgetFromEnvironment) {
  ::setenv("TT_SIZE_BUDGET", "oops", 1);
  EXPECT_EQ(run({"ann", "--ring", "Z", "--koszul", "2"}).code, 2);
  ::setenv("TT_SIZE_BUDGET", "1", 1);
  EXPECT_EQ(run({"tensor", "--ring", "Z", "--complex", demo("z10.complex"), "--complex", demo("z10.complex")}).code, 3);
  ::unsetenv("TT_SIZE_BUDGET");
  EXPECT_EQ(run({"tensor", "--ring", "Z", "--complex", demo("z10.complex"), "--complex", demo("z10.complex")}).code, 0);
}

TEST(CliFormats, JsonCarriesTheSameFields) {
  const std::vector<std::vector<std::string>> cmds{
      {"ann", "--ring", "Z", "--koszul", "2"},
      {"spc-report", "--ring", "Z/12"},
      {"fiber-report", "--cmax", "2"},
      {"member", "--ring", "Z", "--ideal", "compact{(2),(5)}", "--complex", demo("z10.complex")},
      {"koszul", "--ring", "Z", "--koszul", "2,3"},
  };
  for (auto &c : cmds) {
    auto doc = run_json(c);
    auto text = run(c);
    ASSERT_EQ(text.code, 0);
    EXPECT_EQ(ttideal::cli::render_text(doc), text.out) << c.front();
  }
}

TEST(CliFormats, JsonReportsExpectedValues) {
  EXPECT_EQ(run_json({"ann", "--ring", "Z", "--koszul", "2"})["ann"], "(2)");
  auto spc = run_json({"spc-report", "--ring", "Z/12"});
  for (auto key : {"primes", "tame_primes", "mx", "mn", "s_of_S_identity"}) EXPECT_TRUE(spc.contains(key)) << key;
  EXPECT_EQ(spc["primes"].size(), 2u);
  EXPECT_EQ(spc["s_of_S_identity"], true);
  auto fib = run_json({"fiber-report", "--cmax", "3"});
  EXPECT_EQ(fib["over_zero"].size(), 4u);
  auto mem = run_json({"member", "--ring", "Z", "--ideal", "compact{(2),(5)}", "--complex", demo("z10.complex")});
  EXPECT_EQ(mem["answer"], "Yes");
  auto ver = run_json({"verify", "prop2.3", "thm3.9"});
  EXPECT_EQ(ver["pass"], true);
}
