#include <gtest/gtest.h>
#include <json.hpp>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

struct CliRun {
  int code = -1;
  std::string out, err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch() {
  fs::path dir = fs::temp_directory_path() / ("sqrlat_cli_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  return dir;
}

CliRun run(const std::string& args) {
  const fs::path dir = scratch();
  const fs::path out = dir / "stdout", err = dir / "stderr";
  std::string cmd = std::string(SQRLAT_CLI) + " " + args + " >" + out.string() + " 2>" + err.string();
  int status = std::system(cmd.c_str());
  CliRun r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(out);
  r.err = slurp(err);
  return r;
}

}  // namespace

TEST(Cli, FieldSummary) {
  CliRun r = run("field --quadratic 17");
  ASSERT_EQ(r.code, 0) << r.err;
  json j = json::parse(r.out);
  EXPECT_EQ(j["config"]["command"], "field");
  EXPECT_EQ(j["config"]["field"]["quadratic"], 17);
  EXPECT_EQ(j["result"]["degree"], 2);
  EXPECT_EQ(j["result"]["discriminant"], 17);
  EXPECT_EQ(j["result"]["fundamental_unit"], "4 + sqrt(17)");
  EXPECT_EQ(j["result"]["fundamental_unit_norm"], -1);
}

TEST(Cli, RelationFound) {
  CliRun r = run("relation --quadratic 8");
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(json::parse(r.out)["result"]["relation_found"], true);
}

TEST(Cli, LemmaSmallBox) {
  CliRun r = run("lemma51 --N 3 --B 2 --lambdas 2,3");
  ASSERT_EQ(r.code, 0) << r.err;
  json v = json::parse(r.out)["result"]["violations"];
  for (const auto& [item, count] : v.items()) EXPECT_EQ(count, 0) << item;
}

TEST(Cli, PointsCsvMatchesSummary) {
  const fs::path csv = scratch() / "pts.csv";
  CliRun r = run("points --quadratic 17 --m-max 10 --out " + csv.string());
  ASSERT_EQ(r.code, 0) << r.err;
  std::ifstream in(csv);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "m,x1,x2");
  std::size_t rows = 0;
  while (std::getline(in, line)) ++rows;
  EXPECT_EQ(rows, json::parse(r.out)["result"]["points"].get<std::size_t>());
}

TEST(Cli, CsvOnStandardOutputMovesReportToStandardError) {
  CliRun r = run("coeffs --n-lo 1 --n-hi 2 --r 1 --prune 2e3 --method closed");
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "n,r,re_a,im_a,re_atilde,im_atilde");
  EXPECT_EQ(json::parse(r.err)["config"]["command"], "coeffs");
}

TEST(Cli, ExitCodes) {
  CliRun bad_flag = run("field --quadratic 17 --no-such-flag");
  EXPECT_EQ(bad_flag.code, 2);
  EXPECT_EQ(json::parse(bad_flag.err)["error"]["kind"], "invalid_input");

  CliRun bad_field = run("field --quadratic 16");
  EXPECT_EQ(bad_field.code, 2);
  EXPECT_EQ(json::parse(bad_field.err)["error"]["code"], "non_fundamental_discriminant");

  CliRun io = run("points --quadratic 17 --m-max 2 --out /nonexistent/dir/p.csv");
  EXPECT_EQ(io.code, 2);

  CliRun unverified = run("interp --nmax 3 --prune 2e3 --tol 1e-30");
  EXPECT_EQ(unverified.code, 1) << unverified.err;
  EXPECT_EQ(json::parse(unverified.out)["result"]["verified"], false);
}

TEST(Cli, ReplayIsBitIdentical) {
  CliRun first = run("interp --nmax 4 --prune 2e3 --radii 0.9,1.7 --tau 0.5,1 --tol 1");
  ASSERT_EQ(first.code, 0) << first.err;
  const fs::path cfg = scratch() / "run.json";
  std::ofstream(cfg) << first.out;
  CliRun again = run("--config " + cfg.string());
  ASSERT_EQ(again.code, 0) << again.err;
  EXPECT_EQ(first.out, again.out);
}
