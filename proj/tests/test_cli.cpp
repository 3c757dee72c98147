#include <gtest/gtest.h>

#include "support/cli_harness.hpp"

using namespace folab;
using namespace folab::testing;
using Json = nlohmann::ordered_json;

namespace {

Json report_of(const CliResult& r) { return Json::parse(r.out); }

void expect_report_schema(const Json& j, const std::string& command) {
  ASSERT_TRUE(j.is_object());
  std::vector<std::string> keys;
  for (const auto& [k, _] : j.items()) keys.push_back(k);
  EXPECT_EQ(keys, (std::vector<std::string>{"command", "verdicts", "stages", "errors"}));
  EXPECT_EQ(j["command"], command);
  EXPECT_TRUE(j["verdicts"].is_object());
  ASSERT_TRUE(j["stages"].is_array());
  for (const auto& s : j["stages"]) {
    EXPECT_TRUE(s["label"].is_string());
    EXPECT_TRUE(s["ok"].is_boolean() || s["ok"].is_null());
    EXPECT_TRUE(s["detail"].is_string());
  }
  EXPECT_EQ(j["errors"], Json::array());
}

void expect_error_schema(const CliResult& r) {
  EXPECT_TRUE(r.out.empty());
  const Json e = Json::parse(r.err);
  ASSERT_TRUE(e.contains("command"));
  ASSERT_TRUE(e["errors"].is_array());
  ASSERT_FALSE(e["errors"].empty());
  EXPECT_TRUE(e["errors"][0]["kind"].is_string());
  EXPECT_TRUE(e["errors"][0]["message"].is_string());
}

}  // namespace

TEST(Cli, ExitCodeMatrix) {
  EnvGuard env("FOLIATION_LAB_MAX_DEPTH", nullptr);
  for (const auto& c : exit_code_matrix()) {
    std::string line;
    for (const auto& a : c.args) line += a + " ";
    const CliResult r = run_cli(c.args);
    EXPECT_EQ(r.code, c.code) << line << "\n" << r.out << r.err;
    if (r.code == 1) expect_error_schema(r);
    if (r.code != 1 && std::find(c.args.begin(), c.args.end(), "text") == c.args.end()) {
      const Json j = report_of(r);
      expect_report_schema(j, j["command"].get<std::string>());
    }
  }
}

TEST(Cli, DemoRadial) {
  const CliResult r = run_cli({"demo", "radial", "--format", "json"});
  ASSERT_EQ(r.code, 0);
  const Json j = report_of(r);
  expect_report_schema(j, "demo radial");
  const Json& v = j["verdicts"];
  EXPECT_EQ(v["f"], "x^4 + y^4");
  EXPECT_EQ(v["f_invariant"], true);
  EXPECT_EQ(v["logarithmic"], true);
  EXPECT_EQ(v["chart1_pullback_matches"], true);
  EXPECT_EQ(v["divisor_pole_order"], 2);
  EXPECT_EQ(v["dicriticity"], "Dicritical");
  EXPECT_EQ(v["tree"]["nodes"][0]["m"], 2);
  EXPECT_EQ(v["tree"]["nodes"][0]["exceptional_invariant"], false);
}

TEST(Cli, DemoCdf) {
  const CliResult r = run_cli({"demo", "cdf", "--alpha", "1", "--beta", "2", "--gamma", "3"});
  ASSERT_EQ(r.code, 0);
  const Json v = report_of(r)["verdicts"];
  EXPECT_EQ(v["degree"], 2);
  EXPECT_EQ(v["invariant_curve_count"], 4);
  EXPECT_EQ(v["invariant_product_degree"], 4);
  EXPECT_EQ(v["origin_first_level_dicritical"], true);
  EXPECT_TRUE(v["log_form"].is_string());
  EXPECT_EQ(v["closed"], false);

  const Json w = report_of(run_cli({"demo", "cdf", "--alpha", "1", "--beta", "1", "--gamma", "-2"}))["verdicts"];
  EXPECT_EQ(w["infinity_line_invariant"], false);
  EXPECT_EQ(w["curves"]["z0"], false);
}

TEST(Cli, DemoExtremalD1) {
  const CliResult r = run_cli({"demo", "extremal-d1"});
  ASSERT_EQ(r.code, 0);
  const Json v = report_of(r)["verdicts"];
  EXPECT_EQ(v["certified"], true);
  EXPECT_EQ(v["a"], "z0");
  EXPECT_EQ(v["eta"], "(-2)*dz0");
  EXPECT_EQ(v["eta_is_minus_2_dz0"], true);
  EXPECT_EQ(v["euler_residual"], "0");
  EXPECT_EQ(v["wedge_residual"], "0");
}

TEST(Cli, PencilInvariant) {
  const CliResult r = run_cli({"invariant", "--input", sample("pencil.json")});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(report_of(r)["verdicts"]["all"], true);
  EXPECT_EQ(report_of(run_cli({"closed", "--input", sample("pencil.json")}))["verdicts"]["closed"], true);
}

TEST(Cli, SamplesCoverThePipelines) {
  Json v = report_of(run_cli({"blowup", "--input", sample("radial.json")}))["verdicts"];
  EXPECT_EQ(v["m"], 2);
  EXPECT_EQ(v["exceptional_invariant"], false);
  EXPECT_EQ(v["divisor_pole_order"], 2);
  v = report_of(run_cli({"extremal", "--input", sample("cdf.json")}))["verdicts"];
  EXPECT_EQ(v["closed"], false);
  EXPECT_EQ(v["theorem_hypothesis"], "violated");
  v = report_of(run_cli({"extremal", "--input", sample("extremal_d1.json")}))["verdicts"];
  EXPECT_EQ(v["closed"], true);
  EXPECT_EQ(v["theorem_hypothesis"], "violated");
  EXPECT_EQ(v["failed_hypotheses"], Json::array({"dicritical:(0:1:0)"}));
  v = report_of(run_cli({"first-integral", "--input", sample("extremal_d1.json")}))["verdicts"];
  EXPECT_EQ(v["a"], "z0");
  EXPECT_EQ(v["first_integral"], "(z0*z1 + z2^2)/(z0)^2");
}

TEST(Cli, JsonOutputIsByteStable) {
  const std::vector<std::vector<std::string>> cmds{
      {"demo", "radial"},
      {"demo", "cdf", "--alpha", "1", "--beta", "2", "--gamma", "3"},
      {"demo", "extremal-d1"},
      {"extremal", "--input", sample("cdf.json")},
      {"dicritical", "--input", sample("cdf.json"), "--full-tree"},
  };
  for (const auto& c : cmds) {
    const CliResult a = run_cli(c), b = run_cli(c);
    EXPECT_EQ(a.out, b.out);
    EXPECT_EQ(Json::parse(a.out).dump(2) + "\n", a.out);
  }
}

TEST(Cli, OptionOrderDoesNotMatter) {
  const CliResult a = run_cli({"--format", "json", "demo", "radial"});
  const CliResult b = run_cli({"demo", "radial", "--format", "json"});
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
}

TEST(Cli, ParseErrorCarriesPosition) {
  const std::string bad = temp_input("pos.json", R"({"vars": ["x", "y"], "foliation": {"kind": "affine", "form": {"dx": "x + ", "dy": "y"}}})");
  const CliResult r = run_cli({"check", "--input", bad});
  ASSERT_EQ(r.code, 1);
  const Json e = Json::parse(r.err)["errors"][0];
  EXPECT_EQ(e["kind"], "SyntaxError");
  EXPECT_EQ(e["field"], "foliation.form.dx");
  EXPECT_EQ(e["line"], 1);
  EXPECT_EQ(e["column"], 5);
}

TEST(Cli, EnvironmentDepthGuard) {
  const std::string cusp = temp_input("cusp-env.json", cusp_input());
  {
    EnvGuard env("FOLIATION_LAB_MAX_DEPTH", "1");
    const CliResult r = run_cli({"dicritical", "--input", cusp});
    EXPECT_EQ(r.code, 2);
    EXPECT_EQ(report_of(r)["verdicts"]["reason"], "DepthExceeded");
    EXPECT_EQ(run_cli({"dicritical", "--input", cusp, "--max-depth", "12"}).code, 0);
  }
  {
    EnvGuard env("FOLIATION_LAB_MAX_DEPTH", "12");
    EXPECT_EQ(run_cli({"dicritical", "--input", cusp}).code, 0);
    EXPECT_EQ(run_cli({"dicritical", "--input", cusp, "--max-depth", "1"}).code, 2);
  }
  {
    EnvGuard env("FOLIATION_LAB_MAX_DEPTH", "twelve");
    EXPECT_EQ(run_cli({"dicritical", "--input", cusp}).code, 1);
  }
}

TEST(Cli, TextFormat) {
  const CliResult r = run_cli({"demo", "extremal-d1", "--format", "text"});
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("command: demo extremal-d1\n"), std::string::npos);
  EXPECT_NE(r.out.find("a: z0\n"), std::string::npos);
  EXPECT_NE(r.out.find("[ok] euler"), std::string::npos);
}

TEST(Cli, Help) {
  const CliResult r = run_cli({"--help"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("demo"), std::string::npos);
}
