// Copyright 2026 The parrep Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <json.hpp>
#include <string>

#include "parrep/error.hpp"
#include "parrep/experiments.hpp"
#include "parrep/spectral.hpp"
#include "parrep/validate.hpp"

namespace parrep {
namespace {

ExperimentConfig small(Experiment e,
                       std::initializer_list<std::pair<const char*, const char*>> kv) {
  Config user;
  for (const auto& [k, v] : kv) user.set(k, v);
  return resolve_config(e, user);
}

void expect_same(const ExperimentResult& a, const ExperimentResult& b) {
  ASSERT_EQ(a.artifacts.size(), b.artifacts.size());
  for (std::size_t i = 0; i < a.artifacts.size(); ++i) {
    EXPECT_EQ(a.artifacts[i].name, b.artifacts[i].name);
    EXPECT_EQ(a.artifacts[i].content, b.artifacts[i].content) << a.artifacts[i].name;
  }
}

TEST(StudyTest, WorkerCountDoesNotChangeResults) {
  const Potential p = Potential::harmonic();
  const auto a = simulate_exits(p, WellSpec{}, DiracLaw{0.1}, 1e-3, 64, -1, {5, 0, 1});
  const auto b = simulate_exits(p, WellSpec{}, DiracLaw{0.1}, 1e-3, 64, -1, {5, 0, 4});
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].steps, b[i].steps);
    EXPECT_EQ(a[i].exit_point, b[i].exit_point);
  }
  const auto shifted = simulate_exits(p, WellSpec{}, DiracLaw{0.1}, 1e-3, 32, -1, {5, 32, 1});
  for (std::size_t i = 0; i < shifted.size(); ++i) EXPECT_EQ(shifted[i].steps, a[32 + i].steps);
}

TEST(StudyTest, DephaseSampleStaysInside) {
  const auto reps = dephase_sample(Potential::harmonic(), WellSpec{}, DiracLaw{0.1}, 0.05,
                                   1e-3, 200, 1000, {1, 0, 2});
  for (const auto& r : reps) {
    EXPECT_GT(r.position, -1.0);
    EXPECT_LT(r.position, 1.0);
  }
}

TEST(StudyTest, Fig3CellCounts) {
  const Fig3Cell c = fig3_cell(Potential::harmonic(), WellSpec{}, DiracLaw{0.1}, 10, 0.05,
                               1e-3, 100, 1000, false, {1, 0, 1});
  EXPECT_EQ(c.realizations, 100u);
  EXPECT_DOUBLE_EQ(c.p_hat, c.exits_hi / 100.0);
  EXPECT_LE(c.ci.lo, c.p_hat);
  EXPECT_GE(c.ci.hi, c.p_hat);
}

// Exact-QSD launch with one replica: both exit sides are equally likely.
TEST(StudyTest, SingleReplicaQsdLaunchIsUnbiased) {
  const Spectrum s = eigensolve(Potential::harmonic(), WellSpec{}, 2000, 2);
  const auto steps = parallel_steps_from(Potential::harmonic(), WellSpec{}, qsd(s), 1, 1e-3,
                                         2000, {2, 0, 1});
  std::size_t hi = 0;
  for (const auto& r : steps) hi += r.side == BoundarySide::kHi;
  const auto ci = binomial_ci(hi, steps.size());
  EXPECT_LE(ci.lo, 0.5);
  EXPECT_GE(ci.hi, 0.5);
}

TEST(ExperimentTest, SpectrumArtifacts) {
  const auto cfg = small(Experiment::kSpectrum, {{"spectral.grid", "4000"}});
  const ExperimentResult r = run_experiment(cfg, 1);
  for (const char* name : {"spectrum.csv", "qsd.csv", "exit_law.csv", "spectrum.json"}) {
    ASSERT_NE(r.find(name), nullptr) << name;
    EXPECT_NE(r.find(name)->content.find(cfg.hash()), std::string::npos) << name;
  }
  const auto j = nlohmann::json::parse(r.find("spectrum.json")->content);
  EXPECT_NEAR(j["lambda1"].get<double>(), 0.97197165, 1e-7);
  EXPECT_EQ(j["config"]["spectral.grid"], "4000");
}

TEST(ExperimentTest, EveryExperimentIsReproducible) {
  const ExperimentConfig cfgs[] = {
      small(Experiment::kSerial, {{"realizations", "20"}, {"dt", "0.001"}}),
      small(Experiment::kSerial, {{"realizations", "3"}, {"wells", "lattice"},
                                  {"potential", "cosine"}, {"dt", "0.001"},
                                  {"stop.abs", "3"}}),
      small(Experiment::kParRep, {{"realizations", "10"}, {"replicas", "5"}, {"dt", "0.001"}}),
      small(Experiment::kParRep, {{"realizations", "3"}, {"replicas", "5"},
                                  {"wells", "lattice"}, {"potential", "cosine"},
                                  {"dt", "0.001"}, {"stop.abs", "3"}}),
      small(Experiment::kFig3, {{"realizations", "20"}, {"fig3.replicas", "5"},
                                {"fig3.t_phase", "0.05,0.1"}, {"dt", "0.001"}}),
      small(Experiment::kFig4, {{"realizations", "10"}, {"replicas", "5"},
                                {"stop.abs", "3"}}),
      small(Experiment::kQsdExitLaw, {{"realizations", "20"}, {"spectral.grid", "4000"},
                                      {"dt", "0.001"}}),
  };
  for (const auto& cfg : cfgs) {
    const ExperimentResult a = run_experiment(cfg, 1);
    const ExperimentResult b = run_experiment(cfg, 3);
    EXPECT_FALSE(a.artifacts.empty());
    expect_same(a, b);
  }
}

TEST(ExperimentTest, Fig3RowsMatchGrid) {
  const auto cfg = small(Experiment::kFig3, {{"realizations", "20"},
                                             {"fig3.replicas", "5,10"},
                                             {"fig3.t_phase", "0.05,0.1,0.2"},
                                             {"dt", "0.001"}});
  const auto r = run_experiment(cfg, 2);
  const auto j = nlohmann::json::parse(r.find("fig3.json")->content);
  EXPECT_EQ(j["cells"].size(), 6u);
  const std::string csv = r.find("fig3.csv")->content;
  EXPECT_NE(csv.find("\nN,t_phase,M,p_hat_exit_hi,ci_lo,ci_hi\n"), std::string::npos);
}

TEST(ExperimentTest, LatticeRequiredForFig4) {
  const auto cfg = small(Experiment::kFig4, {{"wells", "single"}});
  EXPECT_THROW(run_experiment(cfg, 1), ConfigError);
}

TEST(ValidateTest, FastCriteriaPass) {
  for (int id : {1, 2, 3, 11}) {
    const CriterionReport r = run_criterion(id, {});
    EXPECT_TRUE(r.passed) << id;
    EXPECT_FALSE(r.clauses.empty());
  }
  EXPECT_THROW(run_criterion(12, {}), InvalidArgument);
}

TEST(ValidateTest, FaultInjectionIsFlagged) {
  ValidateOptions opt;
  opt.fault_lambda2_scale = 1.5;
  for (int id : {1, 2, 3}) EXPECT_FALSE(run_criterion(id, opt).passed) << id;
  const auto cfg = small(Experiment::kValidate,
                         {{"validate.criteria", "1"}, {"fault.lambda2_scale", "1.5"}});
  const ExperimentResult r = run_experiment(cfg, 1);
  EXPECT_FALSE(r.passed);
  const auto j = nlohmann::json::parse(r.find("validate.json")->content);
  EXPECT_FALSE(j["passed"].get<bool>());
  EXPECT_NEAR(j["criteria"][0]["metrics"]["lambda1_target"].get<double>(), 0.971972, 1e-9);
}

}  // namespace
}  // namespace parrep
