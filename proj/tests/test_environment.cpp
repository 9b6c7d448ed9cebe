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

#include "hirelab/environment.hpp"
#include "hirelab/rational.hpp"
#include "hirelab/rng.hpp"

using namespace hirelab;

TEST_CASE("rational round trip") {
  CHECK(to_string(Rational(3)) == "3");
  CHECK(to_string(Rational(3, 4)) == "3/4");
  CHECK(to_string(Rational(-1, 2)) == "-1/2");
  CHECK(parse_rational("3") == Rational(3));
  CHECK(parse_rational("3/4") == Rational(3, 4));
  CHECK(parse_rational("-7/2") == Rational(-7, 2));
  CHECK_THROWS_AS(parse_rational("x"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
  CHECK(to_double(Rational(1, 2)) == doctest::Approx(0.5));
}

TEST_CASE("contract payoffs match the hiring game") {
  // Experts strictly rank (H,M) > (H,D) > (L,M) > (L,P).
  CHECK(contract_payoff({Salary::kHigh, Task::kMixed}, WorkerType::kExpert) ==
        Rational(4));
  CHECK(contract_payoff({Salary::kHigh, Task::kDelicate},
                        WorkerType::kExpert) == Rational(2));
  CHECK(contract_payoff({Salary::kLow, Task::kMixed}, WorkerType::kExpert) ==
        Rational(1));
  CHECK(contract_payoff({Salary::kLow, Task::kPerfunctory},
                        WorkerType::kExpert) == Rational(0));
  // Beginners are indifferent at the top: (L,P) and (H,M) both pay 4.
  CHECK(contract_payoff({Salary::kLow, Task::kPerfunctory},
                        WorkerType::kBeginner) == Rational(4));
  CHECK(contract_payoff({Salary::kHigh, Task::kMixed},
                        WorkerType::kBeginner) == Rational(4));
  CHECK(contract_payoff({Salary::kLow, Task::kMixed},
                        WorkerType::kBeginner) == Rational(2));
  CHECK(contract_payoff({Salary::kHigh, Task::kDelicate},
                        WorkerType::kBeginner) == Rational(2));
  CHECK_THROWS_AS(contract_payoff({Salary::kHigh, Task::kPerfunctory},
                                  WorkerType::kExpert),
                  std::domain_error);
  CHECK_THROWS_AS(contract_payoff({Salary::kLow, Task::kDelicate},
                                  WorkerType::kBeginner),
                  std::domain_error);
}

TEST_CASE("paper environment shape and payoffs") {
  const Environment env = paper_environment();
  env.validate();
  CHECK(env.agent_count() == 2);
  CHECK(env.type_count(0) == 2);
  CHECK(env.outcome_count() == 4);
  CHECK(env.profile_count() == 4);

  // Cross-check every table entry against the contract payoffs.
  for (int agent = 0; agent < 2; ++agent) {
    for (int outcome = 0; outcome < 4; ++outcome) {
      const Contract c = paper_allocation(outcome)[agent];
      for (int type = 0; type < 2; ++type) {
        CHECK(env.payoff(agent, outcome, type) ==
              contract_payoff(c, static_cast<WorkerType>(type)));
      }
    }
  }
  CHECK_THROWS_AS(env.payoff(2, 0, 0), std::domain_error);
  CHECK_THROWS_AS(env.payoff(0, 4, 0), std::domain_error);
  CHECK_THROWS_AS(env.payoff(0, 0, 2), std::domain_error);
}

TEST_CASE("profile indexing is mixed radix, agent 0 most significant") {
  const Environment env = paper_environment();
  CHECK(env.profile_at(0) == TypeProfile{0, 0});
  CHECK(env.profile_at(1) == TypeProfile{0, 1});
  CHECK(env.profile_at(2) == TypeProfile{1, 0});
  CHECK(env.profile_at(3) == TypeProfile{1, 1});
  for (long long i = 0; i < env.profile_count(); ++i) {
    CHECK(env.profile_index(env.profile_at(i)) == i);
  }
}

TEST_CASE("principal target allocates by report") {
  const Environment env = paper_environment();
  const SocialChoiceFunction f = principal_scf();
  CHECK(f.at(env, TypeProfile{0, 0}) == kAllocBothLowMixed);
  CHECK(f.at(env, TypeProfile{0, 1}) == kAllocLowPerfHighDel);
  CHECK(f.at(env, TypeProfile{1, 0}) == kAllocHighDelLowPerf);
  CHECK(f.at(env, TypeProfile{1, 1}) == kAllocBothHighMixed);
  const SocialChoiceFunction g = worker_optimal_scf();
  for (long long i = 0; i < 4; ++i) {
    CHECK(g.table[i] == kAllocBothHighMixed);
  }
}

TEST_CASE("staffer payoff counts correct identifications") {
  CHECK(staffer_payoff({0, 1}, {0, 1}) == Rational(5));
  CHECK(staffer_payoff({0, 1}, {0, 0}) == Rational(3));
  CHECK(staffer_payoff({0, 1}, {1, 0}) == Rational(1));
  CHECK(staffer_payoff({1, 1}, {1, 1}) == Rational(5));
  CHECK_THROWS_AS(staffer_payoff({0}, {0, 1}), std::domain_error);
}

TEST_CASE("environment and scf JSON round trips") {
  const Environment env = paper_environment();
  const Environment back = environment_from_json(environment_to_json(env));
  back.validate();
  CHECK(back.agents == env.agents);
  CHECK(back.types == env.types);
  CHECK(back.outcomes == env.outcomes);
  CHECK(back.payoffs == env.payoffs);

  const SocialChoiceFunction f = principal_scf();
  const SocialChoiceFunction f2 = scf_from_json(env, scf_to_json(env, f));
  CHECK(f2.table == f.table);
}

TEST_CASE("rng bounded sampling and derived seeds") {
  Rng rng(12345);
  for (int i = 0; i < 1000; ++i) {
    CHECK(rng.below(7) < 7);
  }
  // bernoulli(0) never fires, bernoulli(1) always does.
  CHECK_FALSE(rng.bernoulli(Rational(0)));
  CHECK(rng.bernoulli(Rational(1)));

  // Same seed, same stream.
  Rng a(99), b(99);
  for (int i = 0; i < 100; ++i) {
    CHECK(a.next() == b.next());
  }
  CHECK(derive_seed(1, 0) != derive_seed(1, 1));
  CHECK(derive_seed(1, 0) == derive_seed(1, 0));
  CHECK(derive_seed(1, 0) != derive_seed(2, 0));
}
