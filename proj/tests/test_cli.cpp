#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

namespace {

struct Run {
  int code = -1;
  std::string out;  // stdout and stderr together
};

Run cli(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + (env.empty() ? "" : " ") + "'" KATUFRAC_CLI_PATH "' " + args + " 2>&1";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

double field(const std::string& out, const std::string& key) {
  std::istringstream in(out);
  std::string k;
  std::string v;
  while (in >> k >> v) {
    if (k == key) return std::stod(v);
  }
  ADD_FAILURE() << "no " << key << " in:\n" << out;
  return 0.0;
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("katufrac_cli_" + name)).string();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

}  // namespace

TEST(CliIntegrate, Examples) {
  auto r = cli("integrate --op rl-left --fn const1 --a 0 --b 1 --alpha 0.5");
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_NEAR(field(r.out, "value"), 1.128379167, 1e-9);
  EXPECT_GE(field(r.out, "err_est"), 0.0);

  r = cli("integrate --op katugampola-left --fn const1 --a 0 --b 1 --alpha 0.5 --rho 2");
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_NEAR(field(r.out, "value"), 0.797884561, 1e-9);

  r = cli("integrate --op hadamard-left --fn const1 --a 1 --b 2 --alpha 1");
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_NEAR(field(r.out, "value"), 0.693147181, 1e-9);
}

TEST(CliIntegrate, PrintsFifteenSignificantDigits) {
  const auto r = cli("integrate --op rl-right --fn id --a 0 --b 1 --alpha 1");
  EXPECT_NE(r.out.find("value   0.5\n"), std::string::npos) << r.out;
  const auto pi = cli("integrate --op rl-left --fn const1 --a 0 --b 1 --alpha 0.5");
  EXPECT_NE(pi.out.find("1.12837916709551"), std::string::npos) << pi.out;
}

TEST(CliIntegrate, Errors) {
  EXPECT_EQ(cli("integrate --op hadamard-left --fn const1 --a 0 --b 1 --alpha 1").code, 1);
  EXPECT_EQ(cli("integrate --op bogus --fn const1 --a 0 --b 1 --alpha 1").code, 1);
  EXPECT_EQ(cli("integrate --op rl-left --fn nope --a 0 --b 1 --alpha 1").code, 1);
  EXPECT_EQ(cli("integrate --op rl-left --fn const1 --a 0 --b 1 --alpha -1").code, 1);
  EXPECT_EQ(cli("integrate --op rl-left --fn const1 --a 0 --b 1").code, 1);
  EXPECT_EQ(cli("integrate --op rl-left --fn const1 --a 0 --b 1 --alpha 1 --tol 0").code, 1);
  EXPECT_EQ(cli("").code, 1);
  EXPECT_EQ(cli("--help").code, 0);
}

TEST(CliIntegrate, EndpointsAcceptPiForms) {
  // J^1 sin over [0, pi/2] = 1
  auto r = cli("integrate --op rl-left --fn sin --a 0 --b pi/2 --alpha 1");
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_NEAR(field(r.out, "value"), 1.0, 1e-13);
  r = cli("integrate --op rl-right --fn sin --a 0 --b 1*pi --alpha 1");
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_NEAR(field(r.out, "value"), 2.0, 1e-13);
  EXPECT_EQ(cli("integrate --op rl-left --fn sin --a 0 --b pie --alpha 1").code, 1);
  EXPECT_EQ(cli("integrate --op rl-left --fn sin --a 0 --b pi/x --alpha 1").code, 1);
}

TEST(CliCheck, Examples) {
  auto r = cli("check --theorem midpoint-lip-deriv --fn sin --a 0 --b 1 --alpha 1 --rho 1 --M auto");
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_NEAR(field(r.out, "slack"), 0.021939, 5e-7);
  EXPECT_NE(r.out.find("holds    true"), std::string::npos);

  r = cli("check --theorem lemma-identity --fn pow3 --a 1 --b 2 --alpha 0.5 --rho 2");
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_LE(field(r.out, "residual"), 1e-7);

  r = cli("check --theorem midpoint-convex-deriv --fn sin --a 0 --b 1 --alpha 2 --rho 1");
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("requires alpha*rho <= 1"), std::string::npos) << r.out;
}

TEST(CliCheck, ViolationExitsTwo) {
  const auto r = cli("check --theorem trapezoid --fn pow2 --a 0 --b 1 --alpha 1 --rho 2");
  EXPECT_EQ(r.code, 2) << r.out;
  EXPECT_NE(r.out.find("holds    false"), std::string::npos);
}

TEST(CliCheck, ToleranceFromEnvironment) {
  const std::string args = "check --theorem trapezoid --fn pow2 --a 0 --b 1 --alpha 1 --rho 2";
  EXPECT_EQ(cli(args, "KATUFRAC_TOL=0.05").code, 0);
  EXPECT_EQ(cli(args, "KATUFRAC_TOL=1e-12").code, 2);
  EXPECT_EQ(cli(args, "KATUFRAC_TOL=abc").code, 1);
  EXPECT_EQ(cli(args, "KATUFRAC_TOL=-1").code, 1);
}

TEST(CliCheck, ExplicitAndMissingConstants) {
  EXPECT_EQ(cli("check --theorem midpoint-weighted-lip --fn pow2 --a 0 --b 1 --alpha 1 --rho 1 --M 2").code, 0);
  // below the certified constant of pow2 on [0, 1]
  EXPECT_EQ(cli("check --theorem midpoint-weighted-lip --fn pow2 --a 0 --b 1 --alpha 1 --rho 1 --M 1").code, 1);
  EXPECT_EQ(cli("check --theorem midpoint-weighted-lip --fn pow2 --a 0 --b 1 --alpha 1 --rho 1 --M x").code, 1);
}

TEST(CliCheck, OtherTheorems) {
  auto r = cli("check --theorem hh-chain --fn exp --a 0 --b 1 --alpha 0.5 --rho 2");
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("hh-chain:lower"), std::string::npos);
  EXPECT_NE(r.out.find("hh-chain:upper"), std::string::npos);
  EXPECT_EQ(cli("check --theorem hh-chain --fn sin --a 0 --b 1 --alpha 0.5").code, 1);
  EXPECT_EQ(cli("check --theorem lemma-identity --fn exp --a 0 --b 1 --alpha 0.5 --side left").code, 0);
  EXPECT_EQ(cli("check --theorem lemma-identity --fn exp --a 0 --b 1 --alpha 0.5 --side up").code, 1);
  EXPECT_EQ(cli("check --theorem means-weighted --a 1 --b 2 --alpha 1 --n 2").code, 0);
  EXPECT_EQ(cli("check --theorem means-symmetric --a 1 --b 2 --alpha 1 --n 3").code, 0);
  EXPECT_EQ(cli("check --theorem means-symmetric --a 1 --b 2 --alpha 1.5 --n 3").code, 1);
  EXPECT_EQ(cli("check --theorem means-weighted --a 1 --b 2 --alpha 1").code, 1);
  EXPECT_EQ(cli("check --theorem nope --fn exp --a 0 --b 1 --alpha 1").code, 1);
  EXPECT_EQ(cli("check --theorem hh-chain --a 0 --b 1 --alpha 1").code, 1);
}

TEST(CliCheck, JsonOutput) {
  const auto r = cli("check --theorem midpoint-convex-deriv --fn pow2 --a 0 --b 1 --alpha 1 --rho 1 --json");
  ASSERT_EQ(r.code, 0) << r.out;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["theorem"], "midpoint-convex-deriv");
  EXPECT_NEAR(j["lhs"].get<double>(), 1.0 / 12.0, 1e-14);
  EXPECT_TRUE(j["holds"].get<bool>());
}

TEST(CliSweep, DefaultGridHoldsAndIsByteStable) {
  const std::string a = temp_path("a.csv");
  const std::string b = temp_path("b.csv");
  const auto first = cli("sweep --out " + a);
  const auto second = cli("sweep --out " + b + " --jobs 1");
  EXPECT_EQ(first.code, 0) << first.out;
  EXPECT_EQ(second.code, 0) << second.out;
  EXPECT_NE(first.out.find("violations=0"), std::string::npos) << first.out;
  const std::string csv = slurp(a);
  EXPECT_FALSE(csv.empty());
  EXPECT_EQ(csv, slurp(b));
  const auto parallel = cli("sweep --out " + b + " --jobs 3");
  EXPECT_EQ(parallel.code, 0);
  EXPECT_EQ(csv, slurp(b));
  std::filesystem::remove(a);
  std::filesystem::remove(b);
}

TEST(CliSweep, UsageErrors) {
  EXPECT_EQ(cli("sweep --functions ''").code, 1);
  EXPECT_EQ(cli("sweep --functions nope").code, 1);
  EXPECT_EQ(cli("sweep --theorems bogus").code, 1);
  EXPECT_EQ(cli("sweep --intervals 0-1").code, 1);
  EXPECT_EQ(cli("sweep --format xml").code, 1);
  EXPECT_EQ(cli("sweep --out /nonexistent-dir/x.csv").code, 1);
}

TEST(CliSweep, HypothesisSkipsAreCounted) {
  const auto r = cli(
      "sweep --theorems midpoint-convex-deriv --functions pow2 --alphas 0.5,2 --rhos 1 --intervals 0:1 --out -");
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("skipped=1"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find(",hypothesis\n"), std::string::npos) << r.out;
}

TEST(CliSweep, ViolationExitsTwo) {
  const auto r = cli("sweep --theorems trapezoid --functions pow2 --alphas 1 --rhos 2 --intervals 0:1 --out -");
  EXPECT_EQ(r.code, 2) << r.out;
}

TEST(CliSweep, JsonReport) {
  const std::string path = temp_path("r.json");
  const auto r = cli("sweep --theorems hh-chain --functions exp --alphas 0.5 --rhos 1,2 --intervals 0:pi/2 "
                     "--format json --out " + path);
  ASSERT_EQ(r.code, 0) << r.out;
  const auto doc = nlohmann::json::parse(slurp(path));
  EXPECT_EQ(doc["metadata"]["normalizer"], "corrected-no-extra-alpha");
  ASSERT_EQ(doc["reports"].size(), 4u);
  EXPECT_NEAR(doc["reports"][0]["b"].get<double>(), 1.5707963267948966, 1e-16);
  std::filesystem::remove(path);
}
