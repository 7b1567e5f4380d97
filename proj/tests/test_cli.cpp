#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "orthosign/config.hpp"
#include "orthosign/json.hpp"

using namespace orthosign;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out, err;
};

fs::path scratch() {
  static fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / ("orthosign_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string read_file(const fs::path& p) {
  std::ifstream f(p);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

Run cli(const std::string& args, const std::string& env = "") {
  fs::path out = scratch() / "stdout.txt", err = scratch() / "stderr.txt";
  std::string cmd = env + " " + std::string(ORTHOSIGN_CLI) + " " + args + " > " + out.string() + " 2> " + err.string();
  int status = std::system(cmd.c_str());
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, read_file(out), read_file(err)};
}

std::string fixture(const std::string& name) { return std::string(ORTHOSIGN_FIXTURES) + "/" + name; }

std::string write_temp(const std::string& name, const std::string& content) {
  fs::path p = scratch() / name;
  std::ofstream(p) << content;
  return p.string();
}

}  // namespace

TEST(Cli, VerifyCertificateAccepts) {
  auto r = cli("verify-cert " + fixture("cert-A.json"));
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = Json::parse(r.out);
  EXPECT_EQ(j["verdict"], "Accept");
  EXPECT_EQ(j["delta"], "3/73");
  EXPECT_EQ(j["bound"]["epsilonSq"], "5041/146335965");
  EXPECT_EQ(j["patternMatches"], true);
  EXPECT_EQ(j["projectionPreservesSigns"], true);
  auto t = cli("verify-cert " + fixture("cert-A1.json") + " --format text");
  EXPECT_EQ(t.code, 0);
  EXPECT_EQ(t.out, "Accept delta=1/268\n");
}

TEST(Cli, VerifyRejectsMismatchedPattern) {
  auto j = Json::parse(read_file(fixture("cert-A.json")));
  std::string e = j["pattern"]["entries"];
  e[0] = e[0] == '+' ? '-' : '+';
  j["pattern"]["entries"] = e;
  auto r = cli("verify-cert " + write_temp("tampered.json", j.dump()));
  EXPECT_EQ(r.code, 2);
  EXPECT_EQ(Json::parse(r.out)["patternMatches"], false);
}

TEST(Cli, SippVerdicts) {
  auto conf = cli("sipp " + fixture("conference-6x6.json"));
  EXPECT_EQ(conf.code, 2);
  auto j = Json::parse(conf.out);
  EXPECT_EQ(j["hasSipp"], false);
  EXPECT_TRUE(j["witness"].is_object());
  EXPECT_EQ(cli("sipp " + fixture("seven-Q.json")).code, 2);
  EXPECT_EQ(cli("sipp " + fixture("zero-block-n6.json")).code, 2);
  EXPECT_EQ(cli("sipp " + fixture("hessenberg-5.json")).code, 0);
  EXPECT_EQ(cli("sipp " + fixture("incidence-4.json") + " --float").code, 0);
}

TEST(Cli, CheckExitCodes) {
  EXPECT_EQ(cli("check " + fixture("minimal-m3.txt")).code, 0);
  EXPECT_EQ(cli("check " + fixture("S1.json")).code, 0);
  EXPECT_EQ(cli("check " + write_temp("forbid.txt", "++\n++\n")).code, 2);
  // zeros and seven rows: no PPO failure, no greedy cover, exact search and certificates out of scope
  auto u = cli("check " + fixture("seven-Q.json"));
  EXPECT_EQ(u.code, 3) << u.out;
  EXPECT_EQ(Json::parse(u.out)["status"], "Unknown");
}

TEST(Cli, CheckEmbedsEvidence) {
  auto r = cli("check " + fixture("stubborn-6x8.json"));
  ASSERT_NE(r.code, 2);
  auto j = Json::parse(r.out);
  if (j["status"] == "Allows") {
    EXPECT_EQ(j["evidence"]["kind"], "certificate");
    auto m = j["evidence"]["matrix"];
    m["pattern"] = j["pattern"];
    EXPECT_EQ(cli("verify-cert " + write_temp("stubborn-cert.json", m.dump())).code, 0);
  }
}

TEST(Cli, FindCertificateRoundTrip) {
  auto r = cli("find-cert " + fixture("S3.json") + " --seed 4");
  ASSERT_EQ(r.code, 0) << r.err;
  auto path = write_temp("found.json", r.out);
  EXPECT_EQ(cli("verify-cert " + path).code, 0);
  EXPECT_EQ(cli("find-cert " + fixture("S3.json") + " --seed 4").out, r.out);
  EXPECT_EQ(cli("find-cert " + fixture("small-zero.txt")).code, 3);
}

TEST(Cli, SimulateIsReproducible) {
  std::string args = "simulate --m 4 --n 40 --p 1/3 --r 2 --trials 300 --seed 17";
  auto a = cli(args), b = cli(args);
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  auto j = Json::parse(a.out);
  EXPECT_EQ(j["trials"], 300);
  EXPECT_EQ(j["seed"], 17);
  auto env = cli("simulate --m 4 --n 40 --p 1/3 --r 2 --trials 300", "ORTHOSIGN_SEED=17");
  EXPECT_EQ(env.out, a.out);
  auto csv = cli(args + " --format csv");
  EXPECT_EQ(csv.out.rfind("m,n,p,r,empirical,lo,hi,bound\n4,40,1/3,2,", 0), 0u) << csv.out;
  EXPECT_EQ(cli("simulate --m 4 --p 3/4").code, 1);
}

TEST(Cli, ClassifyAndOutDir) {
  fs::path out = scratch() / "classify_out";
  auto r = cli("classify --m 3 --max-n 4 --out " + out.string());
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = Json::parse(r.out);
  EXPECT_EQ(j["counts"]["minimal"], 1);
  EXPECT_EQ(j["incomplete"], false);
  EXPECT_TRUE(fs::exists(out / "classify.json"));
  EXPECT_NE(read_file(out / "table.txt").find("Rows | Minimal classes"), std::string::npos);
  fs::path env_out = scratch() / "env_out";
  EXPECT_EQ(cli("check " + fixture("minimal-m3.txt"), "ORTHOSIGN_OUT=" + env_out.string()).code, 0);
  EXPECT_TRUE(fs::exists(env_out / "check.json"));
}

TEST(Cli, ConstructEmitsFixtures) {
  auto r = cli("construct cert-A2");
  ASSERT_EQ(r.code, 0);
  auto j = Json::parse(r.out);
  EXPECT_EQ(j["claim"], "allows_row_orthogonality");
  EXPECT_EQ(cli("construct hessenberg-3 --format text").out, "+-0\n++-\n+++\n");
  EXPECT_EQ(cli("construct no-such-thing").code, 1);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(cli("").code, 1);
  EXPECT_EQ(cli("frobnicate").code, 1);
  EXPECT_EQ(cli("check").code, 1);
  EXPECT_EQ(cli("--help").code, 0);
  auto bad = cli("check " + write_temp("bad.txt", "+-\n+x\n"));
  EXPECT_EQ(bad.code, 1);
  EXPECT_NE(bad.err.find("line 2, column 2"), std::string::npos) << bad.err;
  EXPECT_EQ(cli("check /nonexistent/file").code, 1);
}

TEST(Cli, ConfigFile) {
  EXPECT_EQ(cli("check " + fixture("minimal-m3.txt") + " --config " + fixture("example.cfg")).code, 0);
  auto bad = cli("check " + fixture("minimal-m3.txt") + " --config " + write_temp("bad.cfg", "seed=1\nfoo=2\n"));
  EXPECT_EQ(bad.code, 1);
  EXPECT_NE(bad.err.find("line 2"), std::string::npos);
  auto text = cli("check " + fixture("minimal-m3.txt") + " --config " + write_temp("text.cfg", "outputFormat=text\n"));
  EXPECT_EQ(text.out, "Allows (certificate)\n");
}

TEST(Config, RoundTrip) {
  Config c;
  c.precision_bits = 96;
  c.seed = 12345678901234ull;
  c.search_scale = 1234.5;
  c.output_format = "csv";
  Config d;
  d.apply_text(c.to_text());
  EXPECT_EQ(d.to_text(), c.to_text());
  EXPECT_THROW(d.apply_text("searchRestarts=0\n"), std::invalid_argument);
  EXPECT_THROW(d.apply_text("seed=-3\n"), parse_error);
  EXPECT_THROW(d.apply_text("outputFormat=xml\n"), std::invalid_argument);
  EXPECT_THROW(d.apply_text("just words\n"), parse_error);
}
