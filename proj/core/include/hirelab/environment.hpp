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

#include <array>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hirelab/rational.hpp"

namespace hirelab {

// Worker expertise in the two-worker hiring game.
enum class WorkerType { kBeginner = 0, kExpert = 1 };

enum class Salary { kHigh, kLow };
enum class Task { kDelicate, kMixed, kPerfunctory };

// A salary-task pair, e.g. (H,D) = high salary, entire delicate task.
struct Contract {
  Salary salary;
  Task task;

  bool operator==(const Contract&) const = default;
};

std::string to_string(const Contract& c);  // "(H,D)" style

// Payoff of a contract to a worker of the given expertise. Only the four
// contracts that appear in the hiring game have values; (H,P) and (L,D)
// never occur and raise std::domain_error.
Rational contract_payoff(const Contract& c, WorkerType type);

// Per-agent type assignment, indices into Environment::types.
using TypeProfile = std::vector<int>;

// A finite private-value environment: agents, per-agent finite type
// spaces, a finite outcome set, and payoffs that depend only on the
// agent's own type. Immutable after construction.
struct Environment {
  std::vector<std::string> agents;
  std::vector<std::vector<std::string>> types;  // per agent
  std::vector<std::string> outcomes;
  // payoffs[agent][outcome][own type]
  std::vector<std::vector<std::vector<Rational>>> payoffs;

  int agent_count() const { return static_cast<int>(agents.size()); }
  int type_count(int agent) const;
  int outcome_count() const { return static_cast<int>(outcomes.size()); }

  // Tabulated payoff; throws std::domain_error on unknown agent, outcome
  // or type.
  const Rational& payoff(int agent, int outcome, int own_type) const;

  long long profile_count() const;
  // Mixed-radix decode/encode of type profiles; agent 0 is the most
  // significant digit, so profile 0 is all-first-type.
  TypeProfile profile_at(long long index) const;
  long long profile_index(std::span<const int> profile) const;

  // Throws std::invalid_argument if the payoff table shape does not match
  // agents/outcomes/types.
  void validate() const;
};

// Total map from type profiles to outcomes, stored densely in the
// environment's profile order.
struct SocialChoiceFunction {
  std::vector<int> table;

  int at(const Environment& env, std::span<const int> types) const;
};

// --- The two-worker hiring instance ------------------------------------

// Outcome indices of paper_environment(), in table order.
inline constexpr int kAllocBothLowMixed = 0;      // (L,M),(L,M)
inline constexpr int kAllocLowPerfHighDel = 1;    // (L,P),(H,D)
inline constexpr int kAllocHighDelLowPerf = 2;    // (H,D),(L,P)
inline constexpr int kAllocBothHighMixed = 3;     // (H,M),(H,M)

inline constexpr int kBeginner = 0;
inline constexpr int kExpert = 1;

// Two workers, types {B,E}, the four allocations above, contract payoffs.
Environment paper_environment();

// The allocation behind a paper_environment() outcome index.
std::array<Contract, 2> paper_allocation(int outcome);

// The designer's target: high salary and delicate work to experts, tasks
// split among equal reports.
SocialChoiceFunction principal_scf();

// Constant all-(H,M) function, the outcome of coordinated expert claims.
SocialChoiceFunction worker_optimal_scf();

// An environment/SCF pair that is *not* strategy-proof: reported beginners
// get (H,D) and reported experts (L,P), so a beginner strictly gains by
// misreporting. Used as the dominance-checker counterexample.
std::pair<Environment, SocialChoiceFunction> flipped_contract_scf();

// Designer payoff: 5 if both identified types match the true ones, 3 if
// exactly one matches, 1 if neither.
Rational staffer_payoff(const TypeProfile& true_types,
                        const TypeProfile& identified_types);

// --- Serialization ------------------------------------------------------

std::string environment_to_json(const Environment& env);
Environment environment_from_json(const std::string& text);

std::string scf_to_json(const Environment& env, const SocialChoiceFunction& f);
SocialChoiceFunction scf_from_json(const Environment& env,
                                   const std::string& text);

}  // namespace hirelab
