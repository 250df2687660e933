#include "cli.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace mub::cli {
namespace {

using nlohmann::json;
namespace fs = std::filesystem;

struct Outcome {
  int code = -1;
  std::string out;
  std::string err;
  json report() const { return json::parse(out); }
};

Outcome call(std::vector<std::string> args) {
  args.insert(args.begin(), "mubcert");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  Outcome o;
  o.code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  o.out = out.str();
  o.err = err.str();
  return o;
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("mubcert_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

TEST_F(CliTest, DescribeCounts) {
  const auto o = call({"describe", "--d", "6", "--sizes", "5,3,3,3"});
  ASSERT_EQ(o.code, kRan) << o.err;
  const auto j = o.report();
  EXPECT_EQ(j.at("s"), 8);
  EXPECT_EQ(j.at("phases"), 40);
  EXPECT_EQ(j.at("config").at("subcommand"), "describe");
  EXPECT_EQ(j.at("config").at("d"), 6);
  EXPECT_TRUE(j.at("version").is_string());
}

TEST_F(CliTest, SpecSyntaxes) {
  const auto a = call({"describe", "--spec", "{5,5,4,1}_6"});
  const auto b = call({"describe", "--spec", "6:5,5,4,1"});
  ASSERT_EQ(a.code, kRan) << a.err;
  ASSERT_EQ(b.code, kRan) << b.err;
  EXPECT_EQ(a.report().at("counts"), b.report().at("counts"));
  EXPECT_EQ(a.report().at("counts").at("real_variables"), 90);
  EXPECT_EQ(a.report().at("counts").at("quartic"), 61);
}

TEST_F(CliTest, PolysysQubit) {
  const auto o = call({"polysys", "--d", "2", "--sizes", "1,1,1,1"});
  ASSERT_EQ(o.code, kRan) << o.err;
  const auto j = o.report();
  EXPECT_EQ(j.at("polys").size(), 5u);
  EXPECT_EQ(j.at("variables").size(), 4u);
  EXPECT_EQ(j.at("spec").at("d"), 2);
}

TEST_F(CliTest, SpectralPairBuiltIn) {
  auto o = call({"describe", "--problem", "spectral-pair"});
  ASSERT_EQ(o.code, kRan) << o.err;
  EXPECT_EQ(o.report().at("counts").at("equations"), 23);
  o = call({"describe", "--problem", "spectral-pair", "--reduced"});
  EXPECT_EQ(o.report().at("counts").at("equations"), 21);
  EXPECT_EQ(o.report().at("config").at("problem").at("reduced"), true);
}

TEST_F(CliTest, GroebnerCertificateRoundTrip) {
  const auto cert = path("cert.json");
  const auto o = call({"groebner", "--d", "2", "--sizes", "1,1,1,1", "--certificate", cert});
  ASSERT_EQ(o.code, kNonexistent) << o.err;
  const auto j = o.report();
  EXPECT_EQ(j.at("trivial"), true);
  EXPECT_EQ(j.at("generators").size(), 1u);
  EXPECT_EQ(j.at("certificate_verified"), true);

  const auto v = call({"verify-cert", cert});
  ASSERT_EQ(v.code, kNonexistent) << v.err;
  EXPECT_EQ(v.report().at("valid"), true);

  // Tamper with one coefficient.
  std::ifstream in(cert);
  auto cj = json::parse(in);
  in.close();
  auto& num = cj.at("cofactors")[0].at("terms")[0].at("num");
  num = num.get<std::string>() == "1" ? "2" : "1";
  const auto bad = path("bad.json");
  std::ofstream(bad) << cj.dump();
  const auto w = call({"verify-cert", bad});
  EXPECT_EQ(w.code, kInconclusive);
  EXPECT_EQ(w.report().at("valid"), false);
}

TEST_F(CliTest, GroebnerNontrivial) {
  const auto o = call({"groebner", "--d", "2", "--sizes", "1,1,1"});
  ASSERT_EQ(o.code, kInconclusive) << o.err;
  EXPECT_EQ(o.report().at("trivial"), false);
}

TEST_F(CliTest, GridVerdicts) {
  auto o = call({"grid", "--d", "2", "--sizes", "1,1,1,1", "--resolution", "12"});
  ASSERT_EQ(o.code, kNonexistent) << o.err;
  EXPECT_EQ(o.report().at("verdict"), "excluded_everywhere");
  o = call({"grid", "--d", "2", "--sizes", "1,1,1,1", "--resolution", "4", "--witnesses", "3"});
  ASSERT_EQ(o.code, kInconclusive) << o.err;
  EXPECT_EQ(o.report().at("surviving"), 9);
  EXPECT_EQ(o.report().at("witnesses").size(), 3u);
  o = call({"grid", "--d", "2", "--sizes", "1,1,1,1", "--per-var", "12,24"});
  EXPECT_EQ(o.code, kNonexistent) << o.err;
}

TEST_F(CliTest, GridBudgetRefusal) {
  const auto o = call({"grid", "--d", "6", "--sizes", "5,3,3,3", "--resolution", "2"});
  EXPECT_EQ(o.code, kUsage);
  EXPECT_NE(o.err.find("1099511627776"), std::string::npos) << o.err;
}

TEST_F(CliTest, SdpRunQubitHierarchy) {
  const auto o = call({"sdp-run", "--d", "2", "--sizes", "1,1,1,1", "--r", "2:4"});
  ASSERT_EQ(o.code, kNonexistent) << o.err;
  const auto j = o.report();
  ASSERT_EQ(j.at("levels").size(), 3u);
  EXPECT_EQ(j.at("levels")[0].at("decision_variables"), 69);
  EXPECT_EQ(j.at("levels")[2].at("matrix_size"), 70);
  EXPECT_NEAR(j.at("levels")[1].at("bound").get<double>(), 0.5359, 1e-3);
  EXPECT_EQ(j.at("decisive_order"), 3);
  EXPECT_EQ(j.at("config").at("r"), "2:4");
}

TEST_F(CliTest, SdpRunFoundAndInconclusive) {
  auto o = call({"sdp-run", "--d", "2", "--sizes", "1,1,1"});
  EXPECT_EQ(o.code, kFound) << o.err;
  o = call({"sdp-run", "--d", "2", "--sizes", "1,1,1,1", "--r", "2"});
  EXPECT_EQ(o.code, kInconclusive) << o.err;
}

TEST_F(CliTest, SdpBuildAndSolveStoredInstance) {
  for (const std::string format : {"sdpa", "json"}) {
    const auto file = path("r3." + format);
    const auto b = call({"sdp-build", "--d", "2", "--sizes", "1,1,1,1", "--r", "3", "--format", format,
                         "--output", file});
    ASSERT_EQ(b.code, kRan) << b.err;
    const auto o = call({"sdp-run", "--instance", file});
    ASSERT_EQ(o.code, kRan) << o.err;
    const auto j = o.report();
    EXPECT_EQ(j.at("solution").at("status"), "optimal");
    EXPECT_NEAR(j.at("solution").at("primal_objective").get<double>(), 4.0 - 2.0 * std::sqrt(3.0), 1e-6);
    EXPECT_EQ(j.at("verification").at("clean"), true);
  }
}

TEST_F(CliTest, SdpBuildSdpaHeader) {
  const auto b = call({"sdp-build", "--d", "2", "--sizes", "1,1,1,1", "--r", "2"});
  ASSERT_EQ(b.code, kRan) << b.err;
  std::istringstream in(b.out);
  std::string line;
  std::vector<std::string> body;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '*') continue;
    body.push_back(line);
    if (body.size() == 3) break;
  }
  ASSERT_EQ(body.size(), 3u);
  EXPECT_EQ(body[0], "69");
  EXPECT_EQ(body[1], "2");
  EXPECT_EQ(body[2], "15 -92");
  EXPECT_NE(b.out.find("* version "), std::string::npos);
  EXPECT_NE(b.out.find("* config "), std::string::npos);
}

TEST_F(CliTest, CheckMu) {
  const double s = 1.0 / std::sqrt(2.0);
  json mats = {{"matrices",
                {{{"rows", 2}, {"cols", 2}, {"re", {s, s, s, -s}}, {"im", {0, 0, 0, 0}}},
                 {{"rows", 2}, {"cols", 2}, {"re", {s, s, 0, 0}}, {"im", {0, 0, s, -s}}}}}};
  const auto file = path("m.json");
  std::ofstream(file) << mats.dump();
  auto o = call({"check-mu", file, "--with-identity"});
  ASSERT_EQ(o.code, kRan) << o.err;
  EXPECT_EQ(o.report().at("mutually_unbiased"), true);
  EXPECT_EQ(o.report().at("pair_residuals").size(), 3u);

  // The same basis twice is as far from unbiased as possible.
  mats["matrices"][1] = mats["matrices"][0];
  std::ofstream(file) << mats.dump();
  o = call({"check-mu", file});
  ASSERT_EQ(o.code, kRan) << o.err;
  EXPECT_EQ(o.report().at("mutually_unbiased"), false);
  EXPECT_NEAR(o.report().at("max_residual").get<double>(), 0.5, 1e-12);
}

TEST_F(CliTest, TextFormatAndOutputFile) {
  const auto file = path("table.txt");
  const auto o = call({"sdp-run", "--d", "2", "--sizes", "1,1,1,1", "--r", "2:3", "--format", "text",
                       "--output", file});
  ASSERT_EQ(o.code, kNonexistent) << o.err;
  EXPECT_TRUE(o.out.empty());
  std::ifstream in(file);
  std::stringstream ss;
  ss << in.rdbuf();
  EXPECT_NE(ss.str().find("verdict nonexistent at r=3"), std::string::npos) << ss.str();
}

TEST_F(CliTest, UsageErrors) {
  EXPECT_EQ(call({}).code, kUsage);
  EXPECT_EQ(call({"bogus"}).code, kUsage);
  EXPECT_EQ(call({"describe", "--frobnicate"}).code, kUsage);
  EXPECT_EQ(call({"describe"}).code, kUsage);
  EXPECT_EQ(call({"describe", "--d", "2", "--sizes", "1,x"}).code, kUsage);
  EXPECT_EQ(call({"describe", "--problem", "nonsense"}).code, kUsage);
  EXPECT_EQ(call({"grid", "--d", "2", "--sizes", "1,1,1,1"}).code, kUsage);
  EXPECT_EQ(call({"sdp-run", "--d", "2", "--sizes", "1,1,1,1", "--r", "4:2"}).code, kUsage);
  const auto small = call({"sdp-run", "--d", "2", "--sizes", "1,1,1,1", "--r", "1"});
  EXPECT_EQ(small.code, kUsage);
  EXPECT_NE(small.err.find("minimal admissible order is 2"), std::string::npos);
  EXPECT_EQ(call({"verify-cert", path("missing.json")}).code, kUsage);
  EXPECT_EQ(call({"sdp-build", "--d", "2", "--sizes", "1,1,1,1", "--format", "text"}).code, kUsage);
}

TEST_F(CliTest, VersionFlag) {
  const auto o = call({"--version"});
  EXPECT_EQ(o.code, kRan);
  EXPECT_NE(o.out.find("mubcert"), std::string::npos);
}

}  // namespace
}  // namespace mub::cli
