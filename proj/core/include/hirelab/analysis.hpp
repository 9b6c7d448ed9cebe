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
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hirelab/dataset.hpp"
#include "hirelab/environment.hpp"
#include "hirelab/stats.hpp"

namespace hirelab {

// Which equilibrium action pair a group-period matches. (E,E) messages
// from two true experts fit both equilibria and are treated as censored.
enum class OutcomeClass { kTruthfulEq, kWorkerOptimalEq, kBoth, kNeither };

std::string to_string(OutcomeClass c);

// types in {B,E}, messages in canonical meanings {0,1,-1}. Exhaustive and
// mutually exclusive.
OutcomeClass classify(const std::array<int, 2>& types,
                      const std::array<int, 2>& messages);

// One non-practice group-period, the regression unit of observation.
struct GroupObservation {
  int session = 0;
  int period = 0;
  int group = 0;
  std::string mechanism;
  std::array<int, 2> subjects{};
  std::array<int, 2> types{};
  std::array<int, 2> messages{};  // canonical meanings
  std::array<Rational, 2> worker_payoffs{};
  Rational staffer_payoff{0};
  OutcomeClass outcome = OutcomeClass::kNeither;
};

std::vector<GroupObservation> group_observations(const SessionDataset& data);

// Type-pair cells: 0 = two beginners, 1 = one of each, 2 = two experts,
// 3 = pooled.
inline constexpr int kPairBB = 0;
inline constexpr int kPairMixed = 1;
inline constexpr int kPairEE = 2;
inline constexpr int kPairAll = 3;

std::string type_pair_name(int pair);

// Rates within one mechanism x type-pair cell. Rates whose denominator is
// empty stay unset rather than reading as zero.
struct SummaryCell {
  long long n_groups = 0;
  long long n_beginner_obs = 0;
  std::optional<double> ee_message_rate;
  std::optional<double> both_truthful_rate;
  std::optional<double> beginner_truthful_rate;
  std::optional<double> beginner_deceptive_rate;
  std::optional<double> beginner_unanswered_rate;
  std::optional<double> staffer_mean_payoff;
};

struct SummaryTable {
  std::vector<std::string> mechanisms;  // row order of first appearance
  // Keyed by (mechanism, pair index incl. kPairAll).
  std::map<std::pair<std::string, int>, SummaryCell> cells;
};

// Non-practice records only.
SummaryTable summary_rates(const SessionDataset& data);
std::string summary_to_csv(const SummaryTable& table);

// Per worker subject, the number of expert claims over the non-practice
// periods, plus binned counts per mechanism (bin = claim count 0..10).
struct ExpertClaimHistogram {
  std::map<std::pair<int, int>, int> per_subject;  // (session, subject)
  std::map<std::string, std::array<int, 11>> bins;
};

// Throws std::invalid_argument if any worker subject does not have
// exactly 10 non-practice records.
ExpertClaimHistogram expert_claim_histogram(const SessionDataset& data);
std::string histogram_to_csv(const ExpertClaimHistogram& hist);

// The six regression models of the results table. Mechanism dummies with
// 2x2-I as the baseline; models over group-periods optionally add
// type-pair dummies; the action models restrict to beginner worker
// observations and carry no type-pair dummies.
struct RegressionSpec {
  enum class Dependent {
    kWorkerOptimalEq,   // (1) group level
    kTruthfulEq,        // (2) group level
    kDeceptiveAction,   // (3) beginner workers
    kTruthfulAction,    // (4) beginner workers
    kStafferProfit,     // (5) group level
    kWorkersProfit,     // (6) group level, combined worker payoff
  };

  Dependent dependent = Dependent::kWorkerOptimalEq;
  bool type_pair_dummies = true;
  // Drop censored (Both) observations from the equilibrium models.
  bool exclude_censored = true;

  // Preset for results-table column 1..6.
  static RegressionSpec table_model(int column);
  std::string dependent_name() const;
  bool beginner_level() const;
};

struct FitResult {
  RegressionSpec spec;
  std::vector<std::string> names;  // regressor names, constant first
  OlsResult ols;
};

// Clusters at the session level. Throws std::invalid_argument on a
// rank-deficient design (naming the collinear column), fewer than two
// sessions, or no usable observations.
FitResult fit_lpm(const SessionDataset& data, const RegressionSpec& spec);

// All six table models in column order.
std::vector<FitResult> fit_all_models(const SessionDataset& data);

std::string regression_table_csv(const std::vector<FitResult>& fits);
// Aligned text, coefficient rows with significance stars at 0.01 / 0.05 /
// 0.1 and standard errors in parentheses beneath.
std::string regression_table_text(const std::vector<FitResult>& fits);

// Rank tests on session-level truthful-action rates. scope restricts to
// beginner or expert worker observations; comparison is the session
// grouping: all four mechanisms (Kruskal-Wallis), direct vs extended, and
// implicit vs explicit (Mann-Whitney).
struct RankTestEntry {
  std::string scope;       // "beginner", "expert", "all"
  std::string comparison;  // "all-mechanisms", "direct-vs-extended",
                           // "implicit-vs-explicit"
  RankTestResult result;
};

// Throws std::invalid_argument when a compared group has fewer than two
// sessions.
std::vector<RankTestEntry> rank_tests(const SessionDataset& data);
std::string rank_tests_to_csv(const std::vector<RankTestEntry>& entries);

}  // namespace hirelab
