#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "ftqec/harness.hpp"

using namespace ftqec;

TEST(Harness, ParsesConfig) {
  const auto c = parse_config(R"({
    "code": "bit_flip", "distance": 5, "protocol": "steane_half", "initial_state": "zero_L",
    "rounds": [0, 2], "shots": 500, "seed": 9, "workers": 2,
    "noise": {"profile": "paper-default", "p_2q": 0.03, "idle_enabled": false},
    "discard_policy": "count_as_failure"
  })");
  EXPECT_EQ(c.code, CodeKind::bit_flip);
  EXPECT_EQ(c.distance, 5);
  EXPECT_EQ(c.rounds, (std::vector<int>{0, 2}));
  EXPECT_EQ(c.shots, 500u);
  EXPECT_EQ(c.workers, 2);
  EXPECT_DOUBLE_EQ(c.noise.p_2q, 0.03);
  EXPECT_FALSE(c.noise.idle_enabled);
  EXPECT_DOUBLE_EQ(c.noise.p_1q, NoiseModel::paper_default().p_1q);
  EXPECT_EQ(c.discard_policy, DiscardPolicy::count_as_failure);
  EXPECT_EQ(parse_config(config_to_json(c)), c);
}

TEST(Harness, DefaultsAndNoiseProfiles) {
  const auto c = parse_config("{}");
  EXPECT_EQ(c, ExperimentConfig{});
  EXPECT_EQ(parse_config(R"({"noise": {"profile": "noiseless"}})").noise, NoiseModel::noiseless());
  EXPECT_EQ(parse_config(R"({"noise": {"profile": "two-qubit-only"}})").noise, NoiseModel::two_qubit_only(0.025));
}

TEST(Harness, RejectsBadConfigs) {
  EXPECT_THROW(parse_config(R"({"shot": 5})"), std::invalid_argument);
  EXPECT_THROW(parse_config(R"({"noise": {"p_3q": 0.1}})"), std::invalid_argument);
  EXPECT_THROW(parse_config(R"({"code": "toric"})"), std::invalid_argument);
  EXPECT_THROW(parse_config(R"({"code": "bit_flip", "protocol": "steane_full"})"), std::invalid_argument);
  EXPECT_THROW(parse_config(R"({"code": "color", "distance": 5})"), std::invalid_argument);
  EXPECT_THROW(parse_config(R"({"shots": 0})"), std::invalid_argument);
  EXPECT_THROW(parse_config(R"({"rounds": [-1]})"), std::invalid_argument);
  EXPECT_THROW(parse_config(R"({"noise": {"p_1q": 2}})"), std::invalid_argument);
  EXPECT_THROW(parse_config("not json"), std::exception);
  EXPECT_THROW(load_config("/nonexistent/config.json"), std::runtime_error);
}

TEST(Harness, NoiselessRunsAreExact) {
  for (const auto& name : preset_names()) {
    PresetOverrides o;
    o.shots = 200;
    o.noise = NoiseModel::noiseless();
    o.workers = 1;
    for (const auto& c : preset_configs(name, o)) {
      const auto r = run_experiment(c);
      for (const auto& rr : r.rounds) {
        EXPECT_EQ(rr.estimate.p_hat, 1.0) << name;
        EXPECT_EQ(rr.estimate.n_discarded, 0u) << name;
      }
    }
  }
}

TEST(Harness, Fig4PresetHasSixteenRows) {
  PresetOverrides o;
  o.shots = 50;
  o.workers = 1;
  const auto configs = preset_configs("fig4", o);
  ASSERT_EQ(configs.size(), 4u);
  std::vector<ExperimentResult> results;
  for (const auto& c : configs) results.push_back(run_experiment(c));
  const std::string csv = results_to_csv(results);
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, kCsvHeader);
  int rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    EXPECT_EQ(std::count(line.begin(), line.end(), ','), 9);
  }
  EXPECT_EQ(rows, 16);
  EXPECT_THROW(preset_configs("fig9"), std::invalid_argument);
}

TEST(Harness, JsonRoundTripAndDeterminism) {
  ExperimentConfig c;
  c.shots = 400;
  c.rounds = {0, 1, 2};
  c.seed = 11;
  c.workers = 1;
  const auto a = run_experiment(c);
  c.workers = 3;
  const auto b = run_experiment(c);
  const std::string ja = results_to_json({a});
  EXPECT_EQ(ja, results_to_json({b}));
  const auto back = results_from_json(ja);
  ASSERT_EQ(back.size(), 1u);
  EXPECT_EQ(back[0].rounds, a.rounds);
  EXPECT_EQ(results_to_json(back), ja);
  c.seed = 12;
  EXPECT_NE(results_to_json({run_experiment(c)}), ja);
  EXPECT_NE(round_seed(c, 1), round_seed(c, 2));
}

TEST(Harness, DiscardPolicyCountsDiscardsAsFailures) {
  ExperimentConfig c;
  c.shots = 2000;
  c.rounds = {2};
  c.workers = 1;
  const auto excluded = run_experiment(c).at_round(2).estimate;
  c.discard_policy = DiscardPolicy::count_as_failure;
  const auto counted = run_experiment(c).at_round(2).estimate;
  ASSERT_GT(excluded.n_discarded, 0u);
  EXPECT_EQ(counted.n_kept, c.shots);
  EXPECT_EQ(counted.successes(), excluded.successes());
  EXPECT_LT(counted.p_hat, excluded.p_hat);
}

TEST(Harness, RetriedPreparations) {
  ExperimentConfig c = parse_config(R"({"rounds": [1], "shots": 2000, "workers": 1, "max_prep_attempts": 50})");
  EXPECT_EQ(c.max_prep_attempts, 50);
  const auto r = run_experiment(c).at_round(1);
  EXPECT_EQ(r.estimate.n_discarded, 0u);
  EXPECT_TRUE(r.discards.empty());
  EXPECT_THROW(parse_config(R"({"max_prep_attempts": 0})"), std::invalid_argument);
}

TEST(Harness, PostselectSplitsShotsAcrossBranches) {
  ExperimentConfig c;
  c.protocol = Protocol::flag_postselect;
  c.shots = 8000;
  c.rounds = {0, 2};
  c.workers = 1;
  const auto r = run_experiment(c);
  const auto& two = r.at_round(2);
  EXPECT_EQ(two.estimate.n_kept + two.estimate.n_discarded, 8000u);
  EXPECT_GT(two.discards.at("postselect_branch"), 0u);
  // Kept shots follow the same statistics as the adaptive protocol.
  c.protocol = Protocol::flag_adaptive;
  const auto adaptive = run_experiment(c).at_round(2).estimate;
  const double sigma = (two.estimate.wilson_high - two.estimate.wilson_low) / 2 +
                       (adaptive.wilson_high - adaptive.wilson_low) / 2;
  EXPECT_NEAR(two.estimate.p_hat, adaptive.p_hat, 4 * sigma);
}

TEST(Harness, EmitsFiles) {
  ExperimentConfig c;
  c.shots = 20;
  c.rounds = {0};
  c.workers = 1;
  c.record_wall_time = true;
  const auto r = run_experiment(c);
  ASSERT_TRUE(r.wall_time_s.has_value());
  const std::string path = ::testing::TempDir() + "ftqec_emit.csv";
  emit_results({r}, OutputFormat::csv, path);
  std::ifstream in(path);
  std::string header;
  std::getline(in, header);
  EXPECT_EQ(header, kCsvHeader);
  std::remove(path.c_str());
  EXPECT_THROW(emit_results({r}, OutputFormat::json, "/nonexistent/dir/out.json"), std::runtime_error);
  EXPECT_THROW(parse_format("xml"), std::invalid_argument);
}

TEST(Harness, FaultToleranceSuiteAndTables) {
  bool ok = false;
  const auto lines = run_fault_tolerance_suite(ok);
  EXPECT_TRUE(ok);
  EXPECT_GE(lines.size(), 6u);
  const std::string t = render_color_tables();
  EXPECT_NE(t.find("-+- | X3\n"), std::string::npos);
  EXPECT_NE(t.find("+-+ | X3 X7\n"), std::string::npos);
  EXPECT_NE(t.find("++- | X4 X6\n"), std::string::npos);
}
