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
#include <string>
#include <utility>
#include <vector>

#include "hirelab/mechanism.hpp"
#include "hirelab/rng.hpp"

namespace hirelab {

// Pure strategy: per own type, the message sent.
using Strategy = std::vector<int>;
// One strategy per agent.
using StrategyProfile = std::vector<Strategy>;

// Truthful play: every type sends its own claim (under the canonical
// message meanings).
StrategyProfile truthful_profile(const Environment& env, const Mechanism& mech);
// Every type sends the message with the given meaning.
StrategyProfile constant_meaning_profile(const Environment& env,
                                         const Mechanism& mech, int meaning);

// No-regret at every realized type profile, checked by exhaustive
// unilateral deviation with exact rational comparisons.
bool is_ex_post_equilibrium(const Environment& env, const Mechanism& mech,
                            const StrategyProfile& profile);

// msg is weakly better than every alternative against every opposing
// message profile, given own_type.
bool is_weakly_dominant_message(const Environment& env, const Mechanism& mech,
                                int agent, int own_type, int msg);
// Some alternative is weakly better everywhere and strictly better
// somewhere.
bool is_weakly_dominated_message(const Environment& env, const Mechanism& mech,
                                 int agent, int own_type, int msg);

// Truthful reporting is weakly dominant for every agent and type in the
// direct revelation mechanism of f.
bool is_strategy_proof(const Environment& env, const SocialChoiceFunction& f);

// theta -> phi(sigma(theta)).
SocialChoiceFunction induced_scf(const Environment& env, const Mechanism& mech,
                                 const StrategyProfile& profile);

struct EquilibriumReport {
  StrategyProfile profile;
  bool ex_post = false;
  bool dominant_strategy = false;
  // (agent, type) components whose message is weakly dominated.
  std::vector<std::pair<int, int>> weakly_dominated_components;
  SocialChoiceFunction induced;
};

struct EnumerationOptions {
  long long cap = 10'000'000;  // max number of pure strategy profiles
  int threads = 1;
};

// Exhaustively tests every pure strategy profile, in deterministic
// lexicographic order (agent 0's strategy index most significant). The
// result is identical and identically ordered for any thread count.
// Throws std::length_error naming the product when it exceeds the cap.
std::vector<EquilibriumReport> enumerate_ex_post_equilibria(
    const Environment& env, const Mechanism& mech,
    const EnumerationOptions& options = {});

// Per agent, theta -> outer(inner(theta)). inner must map types to valid
// inputs of outer; throws std::invalid_argument on mismatch.
StrategyProfile compose(const StrategyProfile& outer,
                        const StrategyProfile& inner);

// True iff each positive-probability type's message maximizes expected
// payoff against the opponents' strategies under the prior's conditional.
// prior: exact rational weights over type profiles (row-major), summing
// to 1. Zero-probability own types pass vacuously.
bool interim_best_response_check(const Environment& env, const Mechanism& mech,
                                 const StrategyProfile& profile,
                                 const std::vector<Rational>& prior);

// --- Composition theorem verification -----------------------------------

struct CompositionCheck {
  StrategyProfile delta;            // ex-post equilibrium of (Theta, f)
  bool composed_is_equilibrium = false;
  bool scf_matches = false;         // induced scf of sigma∘delta equals f∘delta

  bool ok() const { return composed_is_equilibrium && scf_matches; }
};

struct CompositionReport {
  bool precondition_ok = false;
  std::string precondition_error;
  std::vector<CompositionCheck> checks;

  bool all_pass() const;
};

// For every ex-post equilibrium delta of the direct mechanism of f,
// verifies that sigma∘delta is an ex-post equilibrium of mech whose
// induced SCF is f∘delta. Requires sigma to be an ex-post equilibrium of
// mech with phi∘sigma = f; otherwise the report flags the precondition
// instead of a theorem violation.
CompositionReport verify_proposition1(const Environment& env,
                                      const SocialChoiceFunction& f,
                                      const Mechanism& mech,
                                      const StrategyProfile& sigma);

// --- Randomized verification suite ---------------------------------------

// Two agents, 1..3 types each, 2..4 outcomes, integer payoffs in [0,9];
// dimensions resampled until |X|^|Theta| stays under the SCF-enumeration
// cap.
Environment random_small_environment(Rng& rng);

// All SCFs for which truthful reporting is weakly dominant, by exhaustive
// filtering of the |X|^|Theta| candidates. Throws std::length_error when
// the candidate count exceeds the cap.
std::vector<SocialChoiceFunction> enumerate_strategy_proof_scfs(
    const Environment& env, long long cap = 65'536);

// The direct mechanism of f with 1..2 duplicated messages per agent, so
// that truthful play still implements f.
Mechanism duplicate_message_mechanism(const Environment& env,
                                      const SocialChoiceFunction& f, Rng& rng);

struct CompositionSuiteResult {
  int trials = 0;
  int theorem_violations = 0;
  std::vector<std::string> notes;
};

// Trial 0 is the hiring instance (principal target, 3x3-E, truthful
// sigma); subsequent trials are seeded random small environments.
CompositionSuiteResult run_proposition1_suite(int trials, std::uint64_t seed);

// --- Report emission ------------------------------------------------------

std::string equilibria_to_csv(const Environment& env, const Mechanism& mech,
                              const std::vector<EquilibriumReport>& reports);
std::string equilibria_to_text(const Environment& env, const Mechanism& mech,
                               const std::vector<EquilibriumReport>& reports);

}  // namespace hirelab
