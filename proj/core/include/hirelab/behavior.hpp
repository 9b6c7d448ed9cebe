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

#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "hirelab/dataset.hpp"
#include "hirelab/mechanism.hpp"
#include "hirelab/rng.hpp"

namespace hirelab {

// How a simulated worker picks a message.
//   Truthteller  always the truthful action.
//   Coordinator  always the expert claim (the workers' coordinated play;
//                truthful for experts, deceptive for beginners).
//   LieAverse    maximizes expected pecuniary payoff minus lie_cost per
//                lie under a belief over the opponent's message. Ties go
//                to the expert claim first (the coordination focal
//                point), then the truthful action; so lie_cost = 0 means
//                coordinating and any positive lie_cost breaks the
//                beginner's knife-edge toward truth in explicit frames.
//   Noisy        plays base with probability 1 - noise, otherwise a
//                uniform other message.
struct BehaviorRule {
  enum class Kind { kTruthteller, kCoordinator, kLieAverse, kNoisy };

  Kind kind = Kind::kTruthteller;
  Rational lie_cost{0};                       // LieAverse
  Rational noise{0};                          // Noisy
  std::shared_ptr<const BehaviorRule> base;   // Noisy

  static BehaviorRule truthteller();
  static BehaviorRule coordinator();
  static BehaviorRule lie_averse(Rational cost);
  static BehaviorRule noisy(BehaviorRule base, Rational epsilon);

  std::string describe() const;
};

// pecuniary - lie_cost * [is_lie] for LieAverse rules, pecuniary otherwise.
Rational behavioral_utility(const BehaviorRule& rule, const Rational& pecuniary,
                            bool is_lie);

// Probability weights over the opponent's messages, exact rationals.
using Belief = std::vector<Rational>;

// Point mass on the opponent's expert claim.
Belief expert_claim_belief(const Mechanism& mech, int opponent);

// The message the rule sends. agent/opponent are the two worker seats of
// a two-agent mechanism. The belief must sum to 1.
int choose_message(const BehaviorRule& rule, const Environment& env,
                   const Mechanism& mech, int agent, int own_type,
                   const Belief& belief, Rng& rng);

enum class BeliefMode {
  kStatic,     // expert-claim point mass every period
  kEmpirical,  // frequencies of all worker messages seen so far in the
               // session; static until the first observation
};

struct SessionConfig {
  std::string mechanism = "2x2-I";
  int n_subjects = 12;         // must be divisible by 3
  int n_periods = 13;
  int n_practice = 3;
  BeliefMode belief_mode = BeliefMode::kStatic;
  std::uint64_t seed = 0;
  int session_id = 0;

  void validate() const;
};

// Simulates one session: roles fixed at the start (2/3 workers, 1/3
// staffers), types redrawn and groups rematched every period, one of the
// paid periods drawn for payment. population[i] is subject i's rule and
// must have n_subjects entries. Deterministic given (config, population).
SessionDataset run_session(const SessionConfig& config,
                           const std::vector<BehaviorRule>& population);

// Weighted mixture from which subject rules are drawn i.i.d.
struct PopulationSampler {
  std::vector<std::pair<Rational, BehaviorRule>> components;

  BehaviorRule sample(Rng& rng) const;
  void validate() const;
};

struct SessionSpec {
  std::string mechanism;
  int n_subjects = 12;
};

// The experiment's session layout: three 12-subject sessions for each
// direct mechanism, 3x12+1x9 for 3x3-I and 2x12+2x9 for 3x3-E
// (14 sessions, 159 subjects).
std::vector<SessionSpec> paper_session_grid();

struct ExperimentConfig {
  std::vector<SessionSpec> grid;
  int n_periods = 13;
  int n_practice = 3;
  BeliefMode belief_mode = BeliefMode::kStatic;
  PopulationSampler population;

  void validate() const;
};

// Runs every session in the grid with child seeds derived from
// master_seed and pools the records (ordered by session id, then period).
// Sessions are independent; threads > 1 runs them concurrently without
// changing the output.
SessionDataset run_experiment(const ExperimentConfig& config,
                              std::uint64_t master_seed, int threads = 1);

// JSON config: {"sessions":[{"mechanism":..,"subjects":..}]|"preset":"paper",
//  "periods":13,"practice":3,"belief":"static"|"empirical",
//  "population":[{"weight":"3/20","rule":{...}}],"noise":"1/20"}.
ExperimentConfig experiment_config_from_json(const std::string& text);
std::string experiment_config_to_json(const ExperimentConfig& config);

// The documented mixture used for the calibration runs: 10% truthtellers,
// 15% coordinators, 60% lie-averse with cost 3, 15% lie-averse with cost
// 0, all with 5% uniform noise.
PopulationSampler calibration_population();

}  // namespace hirelab
