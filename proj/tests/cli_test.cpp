#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "scenario.hpp"

using namespace fockbell;
using namespace fockbell::cli;

namespace {
ScenarioConfig parse(std::vector<std::string> args) { return parse_config(args); }

std::string temp_file(const std::string& name, const std::string& body) {
  const auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream(path) << body;
  return path.string();
}
}  // namespace

TEST(Parse, PositionalOrFlagScenario) {
  EXPECT_EQ(parse({"bchsh"}).scenario, "bchsh");
  EXPECT_EQ(parse({"--scenario", "ghz"}).scenario, "ghz");
  EXPECT_EQ(parse({"ghz", "--scenario", "ghz"}).scenario, "ghz");
  EXPECT_THROW(parse({"ghz", "--scenario", "hardy"}), UsageError);
}

TEST(Parse, MissingOrUnknownScenario) {
  EXPECT_THROW(parse({}), UsageError);
  EXPECT_THROW(parse({"--n", "4"}), UsageError);
  EXPECT_THROW(parse({"teleport"}), UsageError);
}

TEST(Parse, UnknownFlagAndBadValues) {
  EXPECT_THROW(parse({"dist", "--bogus", "1"}), UsageError);
  EXPECT_THROW(parse({"dist", "--tol", "0"}), UsageError);
  EXPECT_THROW(parse({"dist", "--format", "xml"}), UsageError);
  EXPECT_THROW(parse({"dist", "--scan-zeta", "0:1"}), UsageError);
  EXPECT_THROW(parse({"dist", "--scan-zeta", "0:1:0"}), UsageError);
  EXPECT_THROW(parse({"dist", "--expect-violation", "maybe"}), UsageError);
  EXPECT_THROW(parse({"ghz", "--n-alpha", "1", "--n-beta", "2", "--n-gamma", "1"}), UsageError);
}

TEST(Parse, ScanConflictsWithPointValue) {
  EXPECT_THROW(parse({"dist", "--zeta", "0.1", "--scan-zeta", "0:1:4"}), UsageError);
  EXPECT_THROW(parse({"dist", "--angles", "0.1,0.2", "--scan-theta", "0:1:4"}), UsageError);
  EXPECT_NO_THROW(parse({"dist", "--zeta", "0.1", "--scan-theta", "0:1:4"}));
}

TEST(Parse, HelpIsNotAnError) {
  EXPECT_THROW(parse({"--help"}), HelpRequested);
}

TEST(Parse, FlagsOverrideConfigFile) {
  const auto path = temp_file("fockbell_cli_test.toml", "scenario = \"bchsh\"\nn = 4\ntol = 1e-6\n");
  const auto from_file = parse({"--config", path});
  EXPECT_EQ(from_file.scenario, "bchsh");
  EXPECT_EQ(from_file.n, (std::vector<long long>{4}));
  EXPECT_EQ(from_file.tol, 1e-6);
  const auto overridden = parse({"--config", path, "--n", "6"});
  EXPECT_EQ(overridden.n, (std::vector<long long>{6}));
  EXPECT_EQ(overridden.tol, 1e-6);
}

TEST(Parse, AnglesShorthand) {
  const auto c = parse({"ghz", "--angles", "0.1,0.2,0.3"});
  EXPECT_EQ(*c.zeta, 0.1);
  EXPECT_EQ(*c.theta, 0.2);
  EXPECT_EQ(*c.chi, 0.3);
  EXPECT_THROW(parse({"ghz", "--angles", "0.1"}), UsageError);
}

TEST(Run, BchshReportsPaperOptimum) {
  const auto r = run(parse({"bchsh", "--n", "2"}));
  const auto& o = r.record.at("outputs").at(0);
  EXPECT_NEAR(o.at("q_max").get<double>(), 2.414, 1e-3);
  EXPECT_NEAR(o.at("xi_star").get<double>(), std::numbers::pi / 8, 1e-8);
  EXPECT_EQ(r.exit_code, kSuccess);
}

TEST(Run, GhzNineAtZeroAngles) {
  const auto r = run(parse({"ghz", "--n", "9", "--angles", "0,0,0"}));
  EXPECT_NEAR(r.record.at("outputs").at(0).at("exact").get<double>(), 1.0, 1e-10);
  EXPECT_TRUE(r.record.at("certificate").at("contradiction").get<bool>());
}

TEST(Run, VacuumDistribution) {
  const auto r = run(parse({"dist", "--n-alpha", "0", "--n-beta", "0"}));
  EXPECT_EQ(r.csv, "m1,m2,m3,m4,probability\n0,0,0,0,1\n");
}

TEST(Run, ScanCardinality) {
  const auto r = run(parse({"dist", "--n-alpha", "1", "--n-beta", "1", "--scan-zeta", "0:3:8"}));
  EXPECT_EQ(r.record.at("outputs").size(), 8u);
  EXPECT_EQ(std::count(r.csv.begin(), r.csv.end(), '\n'), 1 + 8 * 10);
}

TEST(Run, EchoesResolvedDefaults) {
  const auto r = run(parse({"compare", "--n-alpha", "1", "--n-beta", "1"}));
  const auto& in = r.record.at("inputs");
  for (const char* key : {"zeta", "theta", "tol", "seed", "max_outcomes", "quad_nodes", "populations"})
    EXPECT_TRUE(in.contains(key)) << key;
  EXPECT_EQ(in.at("quad_nodes").get<int>(), 12);
  EXPECT_EQ(r.record.at("engine_version").get<std::string>(), kVersion);
  EXPECT_TRUE(r.record.contains("duration_seconds"));
}

TEST(Run, DeterministicCsv) {
  const auto c = parse({"dist", "--n-alpha", "2", "--n-beta", "1", "--samples", "50", "--seed", "9",
                        "--zeta", "0.4"});
  EXPECT_EQ(run(c).csv, run(c).csv);
  const auto h = parse({"hardy", "--n", "6"});
  EXPECT_EQ(run(h).csv, run(h).csv);
}

TEST(Run, OutcomeCapRefusesWithEstimate) {
  const auto c = parse({"dist", "--n-alpha", "40", "--n-beta", "40", "--max-outcomes", "1000"});
  try {
    run(c);
    FAIL() << "expected refusal";
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("91881"), std::string::npos) << e.what();
  }
}

TEST(Run, ExpectationMismatchExitCode) {
  EXPECT_EQ(run(parse({"ghz", "--n", "6", "--expect-violation", "true"})).exit_code,
            kExpectationMismatch);
  EXPECT_EQ(run(parse({"ghz", "--n", "3", "--expect-violation", "true"})).exit_code, kSuccess);
  EXPECT_EQ(run(parse({"hardy", "--n", "4", "--expect-violation", "false"})).exit_code, kSuccess);
  EXPECT_EQ(run(parse({"bchsh", "--n", "2", "--expect-violation", "false"})).exit_code,
            kExpectationMismatch);
}

TEST(Run, InvalidPopulationsAreValidationErrors) {
  EXPECT_THROW(run(parse({"ghz", "--n", "4"})), ValidationError);
  EXPECT_THROW(run(parse({"hardy", "--n", "5"})), ValidationError);
  EXPECT_THROW(run(parse({"compare", "--n-alpha", "1", "--n-beta", "1", "--quad-nodes", "1"})),
               ValidationError);
}

TEST(Run, NetworkFileInput) {
  const auto path = temp_file("fockbell_cli_net.json", to_json(two_source_network(0.2, 0.5)).dump());
  const auto a = run(parse({"dist", "--network", path, "--n-alpha", "1", "--n-beta", "1"}));
  const auto b = run(parse({"dist", "--angles", "0.2,0.5", "--n-alpha", "1", "--n-beta", "1"}));
  const auto& da = a.record.at("outputs").at(0).at("distribution").at("outcomes");
  const auto& db = b.record.at("outputs").at(0).at("distribution").at("outcomes");
  ASSERT_EQ(da.size(), db.size());
  for (std::size_t k = 0; k < da.size(); ++k) {
    EXPECT_EQ(da[k].at("m"), db[k].at("m"));
    EXPECT_NEAR(da[k].at("p").get<double>(), db[k].at("p").get<double>(), 1e-14);
  }
}

TEST(Run, BchshCurveAndPartial) {
  const auto curve = run(parse({"bchsh", "--n", "2,4", "--scan-xi", "0:0.5:5"}));
  EXPECT_EQ(std::count(curve.csv.begin(), curve.csv.end(), '\n'), 1 + 10);
  const auto partial = run(parse({"bchsh", "--n", "2", "--m-measured", "2"}));
  EXPECT_NEAR(partial.record.at("outputs").at(0).at("q_max").get<double>(), 1 + std::sqrt(2.0), 1e-6);
}
