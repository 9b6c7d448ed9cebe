// Copyright 2026 The hirelab authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "hirelab/analysis.hpp"
#include "hirelab/behavior.hpp"

using namespace hirelab;

namespace {

SessionDataset simulate(const BehaviorRule& rule, std::uint64_t seed = 2024) {
  ExperimentConfig config;
  config.grid = paper_session_grid();
  config.population.components = {{Rational(1), rule}};
  return run_experiment(config, seed);
}

}  // namespace

TEST_CASE("classify covers every case exactly once") {
  CHECK(classify({0, 1}, {1, 1}) == OutcomeClass::kWorkerOptimalEq);
  CHECK(classify({1, 1}, {1, 1}) == OutcomeClass::kBoth);
  CHECK(classify({0, 0}, {0, -1}) == OutcomeClass::kNeither);
  CHECK(classify({0, 0}, {0, 0}) == OutcomeClass::kTruthfulEq);
  CHECK(classify({0, 1}, {0, 1}) == OutcomeClass::kTruthfulEq);
  CHECK(classify({1, 1}, {0, 1}) == OutcomeClass::kNeither);
  CHECK(classify({0, 0}, {1, 1}) == OutcomeClass::kWorkerOptimalEq);
  // Exhaustive: exactly one class per (types, messages) pair.
  for (const int t0 : {0, 1}) {
    for (const int t1 : {0, 1}) {
      for (const int m0 : {-1, 0, 1}) {
        for (const int m1 : {-1, 0, 1}) {
          const OutcomeClass c = classify({t0, t1}, {m0, m1});
          const bool truthful_pair = m0 == t0 && m1 == t1;
          const bool all_e = m0 == 1 && m1 == 1;
          if (all_e && t0 == 1 && t1 == 1) {
            CHECK(c == OutcomeClass::kBoth);
          } else if (all_e) {
            CHECK(c == OutcomeClass::kWorkerOptimalEq);
          } else if (truthful_pair) {
            CHECK(c == OutcomeClass::kTruthfulEq);
          } else {
            CHECK(c == OutcomeClass::kNeither);
          }
        }
      }
    }
  }
}

TEST_CASE("group observations drop practice periods") {
  const SessionDataset data = simulate(BehaviorRule::truthteller());
  const auto obs = group_observations(data);
  CHECK(obs.size() == 530);  // 10 paid-eligible periods x 53 groups
  for (const GroupObservation& o : obs) {
    CHECK(o.period > 3);
  }
}

TEST_CASE("summary rates on degenerate populations") {
  const SessionDataset coordinated = simulate(BehaviorRule::coordinator());
  const SummaryTable t1 = summary_rates(coordinated);
  for (const std::string& mech : t1.mechanisms) {
    for (int pair = kPairBB; pair <= kPairAll; ++pair) {
      const SummaryCell& c = t1.cells.at({mech, pair});
      if (c.n_groups == 0) {
        CHECK_FALSE(c.ee_message_rate.has_value());
        continue;
      }
      CHECK(*c.ee_message_rate == doctest::Approx(1.0));
    }
    // All claims are E, so beginners never play truthfully.
    const SummaryCell& bb = t1.cells.at({mech, kPairBB});
    if (bb.n_beginner_obs > 0) {
      CHECK(*bb.beginner_deceptive_rate == doctest::Approx(1.0));
      CHECK(*bb.beginner_truthful_rate == doctest::Approx(0.0));
    }
    // Two beginners claiming E are both misidentified.
    CHECK(*bb.staffer_mean_payoff == doctest::Approx(1.0));
  }

  const SessionDataset truthful = simulate(BehaviorRule::truthteller());
  const SummaryTable t2 = summary_rates(truthful);
  for (const auto& [key, c] : t2.cells) {
    if (c.n_groups == 0) continue;
    CHECK(*c.both_truthful_rate == doctest::Approx(1.0));
    CHECK(*c.staffer_mean_payoff == doctest::Approx(5.0));
  }
}

TEST_CASE("expert claim histogram") {
  const SessionDataset coordinated = simulate(BehaviorRule::coordinator());
  const ExpertClaimHistogram hist = expert_claim_histogram(coordinated);
  CHECK(hist.per_subject.size() == 106);  // two thirds of 159
  long long total = 0;
  for (const auto& [key, claims] : hist.per_subject) {
    CHECK(claims == 10);
  }
  for (const auto& [mech, bins] : hist.bins) {
    for (int b = 0; b <= 10; ++b) total += bins[b];
  }
  CHECK(total == 106);

  // Truthtellers claim E only when they draw the expert type.
  const SessionDataset truthful = simulate(BehaviorRule::truthteller());
  const ExpertClaimHistogram h2 = expert_claim_histogram(truthful);
  double sum = 0.0;
  for (const auto& [key, claims] : h2.per_subject) sum += claims;
  const double mean = sum / h2.per_subject.size();
  CHECK(mean > 4.0);
  CHECK(mean < 6.0);

  // Empty dataset: empty histogram, no error.
  CHECK(expert_claim_histogram(SessionDataset{}).per_subject.empty());

  // Mutilated dataset: a worker with fewer than 10 non-practice records.
  SessionDataset broken = truthful;
  broken.records.pop_back();
  CHECK_THROWS_AS(expert_claim_histogram(broken), std::invalid_argument);
}

TEST_CASE("all-truthteller data zeroes the mechanism coefficients") {
  const SessionDataset data = simulate(BehaviorRule::truthteller());
  // Type-pair dummies are dropped: with everyone truthful the two-experts
  // cell is entirely censored, so its dummy would be identically zero.
  RegressionSpec spec = RegressionSpec::table_model(2);
  spec.type_pair_dummies = false;
  const FitResult fit = fit_lpm(data, spec);
  // Incidence is 1 outside the censored cell, so every slope is exactly 0
  // up to solver tolerance.
  for (size_t j = 1; j < fit.names.size(); ++j) {
    CHECK(std::abs(fit.ols.coef[j]) < 1e-10);
  }
  CHECK(fit.ols.coef[0] == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("fit_lpm model shapes") {
  const SessionDataset data = simulate(calibration_population()
                                           .components[2]
                                           .second);  // lie-averse c=3
  const auto fits = fit_all_models(data);
  REQUIRE(fits.size() == 6);
  CHECK(fits[0].names.size() == 6);  // constant + 3 mechs + 2 type pairs
  CHECK(fits[2].names.size() == 4);  // beginner model, no type dummies
  for (const FitResult& fit : fits) {
    CHECK(fit.ols.n_clusters == 14);
    for (const double se : fit.ols.se) CHECK(se >= 0.0);
  }
  // Group-level models with censored rows dropped have fewer observations
  // than the profit models.
  CHECK(fits[0].ols.n_obs < fits[4].ols.n_obs);
  CHECK(fits[4].ols.n_obs == 530);
  CHECK(fits[5].ols.n_obs == 530);
}

TEST_CASE("censored rows can be kept") {
  const SessionDataset data = simulate(BehaviorRule::coordinator());
  RegressionSpec spec = RegressionSpec::table_model(1);
  spec.exclude_censored = false;
  const FitResult fit = fit_lpm(data, spec);
  CHECK(fit.ols.n_obs == 530);
  // Coordinators always produce (E,E), so incidence is constant at 1.
  CHECK(fit.ols.coef[0] == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("regression table output") {
  const SessionDataset data = simulate(
      BehaviorRule::noisy(BehaviorRule::lie_averse(Rational(3)),
                          Rational(1, 20)));
  const auto fits = fit_all_models(data);
  const std::string csv = regression_table_csv(fits);
  CHECK(csv.substr(0, csv.find('\n')) ==
        "model,dependent,term,coefficient,std_error,p_value,n_obs,"
        "n_clusters,r_squared,log_likelihood");
  const std::string text = regression_table_text(fits);
  CHECK(text.find("(1)") != std::string::npos);
  CHECK(text.find("2x2-E mechanism") != std::string::npos);
  CHECK(text.find("*** p<0.01, ** p<0.05, * p<0.1") != std::string::npos);
}

TEST_CASE("rank tests on simulated sessions") {
  const SessionDataset data = simulate(
      BehaviorRule::noisy(BehaviorRule::lie_averse(Rational(3)),
                          Rational(1, 20)));
  const auto entries = rank_tests(data);
  CHECK(entries.size() == 9);  // 3 scopes x 3 comparisons
  for (const RankTestEntry& e : entries) {
    CHECK(e.result.exact);  // 14 sessions, exact permutation regime
    CHECK(e.result.p_value >= 0.0);
    CHECK(e.result.p_value <= 1.0);
  }
  const std::string csv = rank_tests_to_csv(entries);
  CHECK(csv.find("implicit-vs-explicit") != std::string::npos);

  // Identical session averages: everyone truthful everywhere, p = 1.
  const SessionDataset flat = simulate(BehaviorRule::truthteller());
  for (const RankTestEntry& e : rank_tests(flat)) {
    CHECK(e.result.p_value == doctest::Approx(1.0));
  }
}

TEST_CASE("rank tests reject tiny designs") {
  ExperimentConfig config;
  config.grid = {{"2x2-I", 12}, {"2x2-E", 12}};
  config.population.components = {{Rational(1), BehaviorRule::truthteller()}};
  const SessionDataset data = run_experiment(config, 3);
  CHECK_THROWS_AS(rank_tests(data), std::invalid_argument);
}

TEST_CASE("calibration population signs match the reference pattern") {
  // Explicit mechanisms depress worker-optimal play and raise truthful
  // play; the extended implicit design moves little.
  const SessionDataset data =
      run_experiment(
          [] {
            ExperimentConfig config;
            config.grid = paper_session_grid();
            config.population = calibration_population();
            return config;
          }(),
          424242);
  const FitResult wo = fit_lpm(data, RegressionSpec::table_model(1));
  const FitResult tr = fit_lpm(data, RegressionSpec::table_model(2));
  CHECK(wo.ols.coef[1] < 0.0);                       // 2x2-E
  CHECK(wo.ols.coef[3] < 0.0);                       // 3x3-E
  CHECK(tr.ols.coef[1] > 0.0);
  CHECK(tr.ols.coef[3] > 0.0);
  CHECK(std::abs(wo.ols.coef[2]) < std::abs(wo.ols.coef[1]));  // 3x3-I small
}
