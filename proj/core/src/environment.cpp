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

#include "hirelab/environment.hpp"

#include <algorithm>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace hirelab {

using nlohmann::json;

std::string to_string(const Contract& c) {
  std::string s = "(";
  s += (c.salary == Salary::kHigh) ? 'H' : 'L';
  s += ',';
  switch (c.task) {
    case Task::kDelicate: s += 'D'; break;
    case Task::kMixed: s += 'M'; break;
    case Task::kPerfunctory: s += 'P'; break;
  }
  s += ')';
  return s;
}

Rational contract_payoff(const Contract& c, WorkerType type) {
  const bool high = c.salary == Salary::kHigh;
  if (type == WorkerType::kExpert) {
    if (high && c.task == Task::kMixed) return Rational(4);
    if (high && c.task == Task::kDelicate) return Rational(2);
    if (!high && c.task == Task::kMixed) return Rational(1);
    if (!high && c.task == Task::kPerfunctory) return Rational(0);
  } else {
    if (!high && c.task == Task::kPerfunctory) return Rational(4);
    if (high && c.task == Task::kMixed) return Rational(4);
    if (!high && c.task == Task::kMixed) return Rational(2);
    if (high && c.task == Task::kDelicate) return Rational(2);
  }
  throw std::domain_error("contract " + to_string(c) +
                          " has no payoff in the hiring game");
}

int Environment::type_count(int agent) const {
  if (agent < 0 || agent >= agent_count()) {
    throw std::domain_error("unknown agent index " + std::to_string(agent));
  }
  return static_cast<int>(types[agent].size());
}

const Rational& Environment::payoff(int agent, int outcome,
                                    int own_type) const {
  if (agent < 0 || agent >= agent_count()) {
    throw std::domain_error("unknown agent index " + std::to_string(agent));
  }
  if (outcome < 0 || outcome >= outcome_count()) {
    throw std::domain_error("unknown outcome index " + std::to_string(outcome));
  }
  if (own_type < 0 || own_type >= type_count(agent)) {
    throw std::domain_error("unknown type index " + std::to_string(own_type));
  }
  return payoffs[agent][outcome][own_type];
}

long long Environment::profile_count() const {
  long long n = 1;
  for (int i = 0; i < agent_count(); ++i) n *= type_count(i);
  return n;
}

TypeProfile Environment::profile_at(long long index) const {
  if (index < 0 || index >= profile_count()) {
    throw std::domain_error("type profile index out of range");
  }
  TypeProfile p(agent_count());
  for (int i = agent_count() - 1; i >= 0; --i) {
    p[i] = static_cast<int>(index % type_count(i));
    index /= type_count(i);
  }
  return p;
}

long long Environment::profile_index(std::span<const int> profile) const {
  if (static_cast<int>(profile.size()) != agent_count()) {
    throw std::domain_error("type profile arity mismatch");
  }
  long long idx = 0;
  for (int i = 0; i < agent_count(); ++i) {
    if (profile[i] < 0 || profile[i] >= type_count(i)) {
      throw std::domain_error("type index out of range for agent " +
                              std::to_string(i));
    }
    idx = idx * type_count(i) + profile[i];
  }
  return idx;
}

void Environment::validate() const {
  if (agents.empty()) throw std::invalid_argument("environment has no agents");
  if (types.size() != agents.size()) {
    throw std::invalid_argument("types/agents size mismatch");
  }
  if (outcomes.empty()) {
    throw std::invalid_argument("environment has no outcomes");
  }
  if (payoffs.size() != agents.size()) {
    throw std::invalid_argument("payoffs/agents size mismatch");
  }
  for (std::size_t a = 0; a < agents.size(); ++a) {
    if (types[a].empty()) {
      throw std::invalid_argument("agent " + agents[a] + " has no types");
    }
    if (payoffs[a].size() != outcomes.size()) {
      throw std::invalid_argument("payoff table missing outcomes for agent " +
                                  agents[a]);
    }
    for (const auto& row : payoffs[a]) {
      if (row.size() != types[a].size()) {
        throw std::invalid_argument("payoff table missing types for agent " +
                                    agents[a]);
      }
    }
  }
}

int SocialChoiceFunction::at(const Environment& env,
                             std::span<const int> types) const {
  if (static_cast<long long>(table.size()) != env.profile_count()) {
    throw std::domain_error("scf table size does not match environment");
  }
  return table[env.profile_index(types)];
}

namespace {

const std::array<std::array<Contract, 2>, 4> kPaperAllocations = {{
    {{{Salary::kLow, Task::kMixed}, {Salary::kLow, Task::kMixed}}},
    {{{Salary::kLow, Task::kPerfunctory}, {Salary::kHigh, Task::kDelicate}}},
    {{{Salary::kHigh, Task::kDelicate}, {Salary::kLow, Task::kPerfunctory}}},
    {{{Salary::kHigh, Task::kMixed}, {Salary::kHigh, Task::kMixed}}},
}};

std::string allocation_name(const std::array<Contract, 2>& alloc) {
  return to_string(alloc[0]) + "," + to_string(alloc[1]);
}

}  // namespace

std::array<Contract, 2> paper_allocation(int outcome) {
  if (outcome < 0 || outcome >= static_cast<int>(kPaperAllocations.size())) {
    throw std::domain_error("unknown paper outcome " + std::to_string(outcome));
  }
  return kPaperAllocations[outcome];
}

Environment paper_environment() {
  Environment env;
  env.agents = {"worker1", "worker2"};
  env.types = {{"B", "E"}, {"B", "E"}};
  for (const auto& alloc : kPaperAllocations) {
    env.outcomes.push_back(allocation_name(alloc));
  }
  env.payoffs.resize(2);
  for (int a = 0; a < 2; ++a) {
    env.payoffs[a].resize(env.outcomes.size());
    for (std::size_t x = 0; x < kPaperAllocations.size(); ++x) {
      const Contract own = kPaperAllocations[x][a];
      env.payoffs[a][x] = {contract_payoff(own, WorkerType::kBeginner),
                           contract_payoff(own, WorkerType::kExpert)};
    }
  }
  env.validate();
  return env;
}

SocialChoiceFunction principal_scf() {
  // (B,B), (B,E), (E,B), (E,E) in profile order.
  return SocialChoiceFunction{{kAllocBothLowMixed, kAllocLowPerfHighDel,
                               kAllocHighDelLowPerf, kAllocBothHighMixed}};
}

SocialChoiceFunction worker_optimal_scf() {
  return SocialChoiceFunction{{kAllocBothHighMixed, kAllocBothHighMixed,
                               kAllocBothHighMixed, kAllocBothHighMixed}};
}

std::pair<Environment, SocialChoiceFunction> flipped_contract_scf() {
  const std::array<std::array<Contract, 2>, 4> allocations = {{
      {{{Salary::kHigh, Task::kDelicate}, {Salary::kHigh, Task::kDelicate}}},
      {{{Salary::kHigh, Task::kDelicate}, {Salary::kLow, Task::kPerfunctory}}},
      {{{Salary::kLow, Task::kPerfunctory}, {Salary::kHigh, Task::kDelicate}}},
      {{{Salary::kLow, Task::kPerfunctory}, {Salary::kLow, Task::kPerfunctory}}},
  }};
  Environment env;
  env.agents = {"worker1", "worker2"};
  env.types = {{"B", "E"}, {"B", "E"}};
  for (const auto& alloc : allocations) {
    env.outcomes.push_back(allocation_name(alloc));
  }
  env.payoffs.resize(2);
  for (int a = 0; a < 2; ++a) {
    env.payoffs[a].resize(env.outcomes.size());
    for (std::size_t x = 0; x < allocations.size(); ++x) {
      const Contract own = allocations[x][a];
      env.payoffs[a][x] = {contract_payoff(own, WorkerType::kBeginner),
                           contract_payoff(own, WorkerType::kExpert)};
    }
  }
  env.validate();
  // Reported beginners get (H,D), reported experts (L,P).
  SocialChoiceFunction f{{0, 1, 2, 3}};
  return {env, f};
}

Rational staffer_payoff(const TypeProfile& true_types,
                        const TypeProfile& identified_types) {
  if (true_types.size() != 2 || identified_types.size() != 2) {
    throw std::domain_error("staffer_payoff expects two-worker profiles");
  }
  int matches = 0;
  for (int i = 0; i < 2; ++i) {
    if (true_types[i] != kBeginner && true_types[i] != kExpert) {
      throw std::domain_error("true type out of {B,E}");
    }
    if (identified_types[i] != kBeginner && identified_types[i] != kExpert) {
      throw std::domain_error("identified type out of {B,E}");
    }
    if (true_types[i] == identified_types[i]) ++matches;
  }
  return Rational(1 + 2 * matches);
}

std::string environment_to_json(const Environment& env) {
  json j;
  j["agents"] = env.agents;
  j["types"] = env.types;
  j["outcomes"] = env.outcomes;
  json table = json::array();
  for (const auto& per_agent : env.payoffs) {
    json rows = json::array();
    for (const auto& per_outcome : per_agent) {
      json row = json::array();
      for (const auto& v : per_outcome) row.push_back(to_string(v));
      rows.push_back(std::move(row));
    }
    table.push_back(std::move(rows));
  }
  j["payoffs"] = std::move(table);
  return j.dump(2);
}

Environment environment_from_json(const std::string& text) {
  const json j = json::parse(text);
  Environment env;
  env.agents = j.at("agents").get<std::vector<std::string>>();
  env.types = j.at("types").get<std::vector<std::vector<std::string>>>();
  env.outcomes = j.at("outcomes").get<std::vector<std::string>>();
  for (const auto& per_agent : j.at("payoffs")) {
    std::vector<std::vector<Rational>> rows;
    for (const auto& per_outcome : per_agent) {
      std::vector<Rational> row;
      for (const auto& v : per_outcome) {
        row.push_back(parse_rational(v.get<std::string>()));
      }
      rows.push_back(std::move(row));
    }
    env.payoffs.push_back(std::move(rows));
  }
  env.validate();
  return env;
}

std::string scf_to_json(const Environment& env,
                        const SocialChoiceFunction& f) {
  json j;
  json rows = json::array();
  for (long long p = 0; p < env.profile_count(); ++p) {
    const TypeProfile prof = env.profile_at(p);
    json row;
    json names = json::array();
    for (int a = 0; a < env.agent_count(); ++a) {
      names.push_back(env.types[a][prof[a]]);
    }
    row["types"] = std::move(names);
    row["outcome"] = env.outcomes.at(f.table.at(p));
    rows.push_back(std::move(row));
  }
  j["scf"] = std::move(rows);
  return j.dump(2);
}

SocialChoiceFunction scf_from_json(const Environment& env,
                                   const std::string& text) {
  const json j = json::parse(text);
  SocialChoiceFunction f;
  f.table.assign(env.profile_count(), -1);
  for (const auto& row : j.at("scf")) {
    const auto names = row.at("types").get<std::vector<std::string>>();
    TypeProfile prof(env.agent_count());
    for (int a = 0; a < env.agent_count(); ++a) {
      const auto& space = env.types[a];
      const auto it = std::find(space.begin(), space.end(), names.at(a));
      if (it == space.end()) {
        throw std::invalid_argument("unknown type name '" + names.at(a) + "'");
      }
      prof[a] = static_cast<int>(it - space.begin());
    }
    const auto& out_name = row.at("outcome").get<std::string>();
    const auto it =
        std::find(env.outcomes.begin(), env.outcomes.end(), out_name);
    if (it == env.outcomes.end()) {
      throw std::invalid_argument("unknown outcome '" + out_name + "'");
    }
    f.table[env.profile_index(prof)] =
        static_cast<int>(it - env.outcomes.begin());
  }
  for (const int x : f.table) {
    if (x < 0) throw std::invalid_argument("scf is not total over the types");
  }
  return f;
}

}  // namespace hirelab
