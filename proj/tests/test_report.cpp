#include <gtest/gtest.h>

#include "galstat/report/report.hpp"

using namespace galstat;

namespace {

const std::filesystem::path kConfigs = GALSTAT_CONFIG_DIR;

std::string minimal(const std::string& extra = "") { return "[run]\nseed = 5\n" + extra; }

void expect_config_error(const std::string& text, int line, const std::string& field) {
  try {
    parse_config(text);
    FAIL() << "accepted:\n" << text;
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.line(), line) << e.what();
    EXPECT_EQ(e.field(), field) << e.what();
  }
}

}  // namespace

TEST(Config, DefaultsAndValues) {
  const SuiteConfig cfg = parse_config(
      "[lattice]\ndimension = 1 ; trailing\npoints_per_side = 8\n"
      "[field]\nmass = 3/2\nspin = 1/2\nalpha = 3/5*exp(i*pi*1/3)\nbeta = 4/5\n" +
      minimal("suites = nogo, reps\n"));
  EXPECT_EQ(cfg.lattice.points_per_side, 8);
  EXPECT_EQ(cfg.mass, Rational(3, 2));
  EXPECT_EQ(cfg.twice_spin, 1);
  EXPECT_EQ(cfg.alpha, ExactComplex(Rational(3, 5)) * ExactComplex::exp_i_pi(Rational(1, 3)));
  EXPECT_EQ(cfg.suites, (std::vector<std::string>{"nogo", "reps"}));
  EXPECT_EQ(cfg.seed, 5u);
  EXPECT_EQ(cfg.cocycle_pairs, 1000u);
  EXPECT_EQ(parse_config(minimal("suites = all, nogo\n")).suites, suite_names());
}

TEST(Config, DiagnosticsNameLineAndField) {
  expect_config_error("[lattice]\npoints_per_side = fifteen\n" + minimal(), 2, "lattice.points_per_side");
  expect_config_error("[lattice]\npoints_per_side = 7\n" + minimal(), 2, "lattice.points_per_side");
  expect_config_error("[lattice]\n\ncolour = red\n" + minimal(), 3, "lattice.colour");
  expect_config_error("[nowhere]\n", 1, "nowhere");
  expect_config_error(minimal("seed = 6\n"), 3, "run.seed");
  expect_config_error(minimal("suites = nogo, teleport\n"), 3, "run.suites");
  expect_config_error("[field]\nmass = 1\n", 0, "run.seed");
  expect_config_error("[field]\nalpha = 0\nbeta = 0\n" + minimal(), 0, "field.alpha");
  expect_config_error("[field]\nspin = 1/3\n" + minimal(), 2, "field.spin");
  expect_config_error("seed = 1\n", 1, "");
  try {
    load_config(kConfigs / "malformed.ini");
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_EQ(std::string(e.what()), "line 3 [lattice.points_per_side]: expected an integer, got 'fifteen'");
  }
  EXPECT_THROW(load_config(kConfigs / "absent.ini"), ConfigError);
}

TEST(Config, EchoUsesFileNames) {
  const SuiteConfig cfg = load_config(kConfigs / "default.ini");
  const auto echo = config_echo(cfg);
  EXPECT_EQ(echo["algebra"]["galilei_table"], "extended_galilei.tbl");
  EXPECT_EQ(echo["field"]["spin"], "1/2");
  EXPECT_EQ(echo["run"]["suites"].size(), suite_names().size());
}

TEST(Report, EmptySuiteListSucceeds) {
  const SuiteConfig cfg = parse_config(minimal());
  const Report r = make_report(cfg, run(cfg));
  EXPECT_EQ(r.total(), 0u);
  EXPECT_EQ(r.exit_code(), 0);
  EXPECT_NE(emit_report(r, Format::text).find("0/0"), std::string::npos);
}

TEST(Report, MasslessNogoRun) {
  const SuiteConfig cfg = parse_config("[field]\nmass = 0\n" + minimal("suites = nogo\n"));
  const Report r = make_report(cfg, run(cfg));
  ASSERT_EQ(r.suites.size(), 1u);
  ASSERT_EQ(r.suites[0].verdicts.size(), 1u);
  EXPECT_EQ(r.suites[0].verdicts[0].details["result"], "COMPATIBLE");
  EXPECT_EQ(r.exit_code(), 0);
  EXPECT_THROW(run(parse_config("[field]\nmass = 0\n" + minimal("suites = counterexample\n"))), ConfigError);
}

TEST(Report, JsonRoundTripAndDeterminism) {
  const SuiteConfig cfg = parse_config("[lattice]\npoints_per_side = 4\n" + minimal("suites = nogo, reps\n"));
  const Report r = make_report(cfg, run(cfg));
  EXPECT_EQ(parse_report(report_json(r)), r);
  SuiteConfig par = cfg;
  par.parallel = true;
  EXPECT_EQ(report_json(make_report(cfg, run(par)), false).dump(), report_json(r, false).dump());
  const auto j = report_json(r, false);
  EXPECT_EQ(j["version"], kReportVersion);
  EXPECT_EQ(j["summary"]["total"], r.total());
  for (const auto& v : j["verdicts"]) EXPECT_FALSE(v.contains("seconds"));
  EXPECT_TRUE(report_json(r, true)["verdicts"][0].contains("seconds"));
}

TEST(Report, TextLayout) {
  Report r;
  r.suites.push_back({"demo", {Verdict::pass("ok"), Verdict::fail("broken", {{"at", 3}}, 0.5)}});
  const std::string text = emit_report(r, Format::text, false);
  EXPECT_NE(text.find("PASS"), std::string::npos);
  EXPECT_NE(text.find("FAIL"), std::string::npos);
  EXPECT_NE(text.find("1/2 verdicts passed"), std::string::npos);
  EXPECT_EQ(r.exit_code(), 1);
}

TEST(Report, MutantTablesFail) {
  const SuiteConfig cfg = load_config(kConfigs / "mutant.ini");
  const Report r = make_report(cfg, run(cfg));
  EXPECT_EQ(r.exit_code(), 1);
}
