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

#include "hirelab/behavior.hpp"

#include <algorithm>
#include <atomic>
#include <numeric>
#include <stdexcept>
#include <thread>

#include <boost/integer/common_factor_rt.hpp>
#include <nlohmann/json.hpp>

namespace hirelab {

using nlohmann::json;

BehaviorRule BehaviorRule::truthteller() {
  return BehaviorRule{Kind::kTruthteller, Rational(0), Rational(0), nullptr};
}

BehaviorRule BehaviorRule::coordinator() {
  return BehaviorRule{Kind::kCoordinator, Rational(0), Rational(0), nullptr};
}

BehaviorRule BehaviorRule::lie_averse(Rational cost) {
  if (cost < Rational(0)) {
    throw std::invalid_argument("lie cost must be nonnegative");
  }
  return BehaviorRule{Kind::kLieAverse, std::move(cost), Rational(0), nullptr};
}

BehaviorRule BehaviorRule::noisy(BehaviorRule base, Rational epsilon) {
  if (epsilon < Rational(0) || epsilon > Rational(1)) {
    throw std::invalid_argument("noise must be in [0,1]");
  }
  BehaviorRule rule;
  rule.kind = Kind::kNoisy;
  rule.noise = std::move(epsilon);
  rule.base = std::make_shared<BehaviorRule>(std::move(base));
  return rule;
}

std::string BehaviorRule::describe() const {
  switch (kind) {
    case Kind::kTruthteller: return "truthteller";
    case Kind::kCoordinator: return "coordinator";
    case Kind::kLieAverse: return "lie-averse(c=" + to_string(lie_cost) + ")";
    case Kind::kNoisy:
      return "noisy(" + to_string(noise) + ", " + base->describe() + ")";
  }
  throw std::logic_error("bad rule kind");
}

Rational behavioral_utility(const BehaviorRule& rule, const Rational& pecuniary,
                            bool is_lie) {
  if (rule.kind == BehaviorRule::Kind::kLieAverse && is_lie) {
    return pecuniary - rule.lie_cost;
  }
  return pecuniary;
}

Belief expert_claim_belief(const Mechanism& mech, int opponent) {
  Belief b(mech.message_count(opponent), Rational(0));
  b[expert_claim_message(mech, opponent)] = Rational(1);
  return b;
}

namespace {

int lie_averse_choice(const BehaviorRule& rule, const Environment& env,
                      const Mechanism& mech, int agent, int own_type,
                      const Belief& belief) {
  const int opponent = 1 - agent;
  if (static_cast<int>(belief.size()) != mech.message_count(opponent)) {
    throw std::invalid_argument("belief size does not match opponent messages");
  }
  Rational total(0);
  for (const auto& w : belief) {
    if (w < Rational(0)) throw std::invalid_argument("negative belief weight");
    total += w;
  }
  if (total != Rational(1)) {
    throw std::invalid_argument("belief does not sum to 1");
  }

  // Candidate order encodes the tie-breaking: the coordination focal
  // point first, then truth, then everything else.
  std::vector<int> order;
  order.push_back(expert_claim_message(mech, agent));
  const int truth = truthful_message(mech, agent, own_type);
  if (std::find(order.begin(), order.end(), truth) == order.end()) {
    order.push_back(truth);
  }
  for (int m = 0; m < mech.message_count(agent); ++m) {
    if (std::find(order.begin(), order.end(), m) == order.end()) {
      order.push_back(m);
    }
  }

  int best = -1;
  Rational best_utility(0);
  for (const int m : order) {
    Rational expected(0);
    for (int k = 0; k < mech.message_count(opponent); ++k) {
      if (belief[k] == Rational(0)) continue;
      MessageProfile msgs(2);
      msgs[agent] = m;
      msgs[opponent] = k;
      expected += belief[k] * env.payoff(agent, outcome(mech, msgs), own_type);
    }
    const Rational utility = behavioral_utility(
        rule, expected, message_is_lie(mech, agent, own_type, m));
    if (best < 0 || utility > best_utility) {
      best = m;
      best_utility = utility;
    }
  }
  return best;
}

}  // namespace

int choose_message(const BehaviorRule& rule, const Environment& env,
                   const Mechanism& mech, int agent, int own_type,
                   const Belief& belief, Rng& rng) {
  if (mech.agent_count() != 2) {
    throw std::domain_error("choose_message expects a two-worker mechanism");
  }
  switch (rule.kind) {
    case BehaviorRule::Kind::kTruthteller:
      return truthful_message(mech, agent, own_type);
    case BehaviorRule::Kind::kCoordinator:
      return expert_claim_message(mech, agent);
    case BehaviorRule::Kind::kLieAverse:
      return lie_averse_choice(rule, env, mech, agent, own_type, belief);
    case BehaviorRule::Kind::kNoisy: {
      const int chosen =
          choose_message(*rule.base, env, mech, agent, own_type, belief, rng);
      if (rng.bernoulli(rule.noise) && mech.message_count(agent) > 1) {
        const int shift =
            1 + static_cast<int>(rng.below(mech.message_count(agent) - 1));
        return (chosen + shift) % mech.message_count(agent);
      }
      return chosen;
    }
  }
  throw std::logic_error("bad rule kind");
}

void SessionConfig::validate() const {
  const auto names = builtin_mechanism_names();
  if (std::find(names.begin(), names.end(), mechanism) == names.end()) {
    throw std::invalid_argument("unknown mechanism '" + mechanism + "'");
  }
  if (n_subjects < 3 || n_subjects % 3 != 0) {
    throw std::invalid_argument("n_subjects must be a positive multiple of 3");
  }
  if (n_practice < 0 || n_periods <= n_practice) {
    throw std::invalid_argument("need n_periods > n_practice >= 0");
  }
}

SessionDataset run_session(const SessionConfig& config,
                           const std::vector<BehaviorRule>& population) {
  config.validate();
  if (static_cast<int>(population.size()) != config.n_subjects) {
    throw std::invalid_argument(
        "population size " + std::to_string(population.size()) +
        " does not match n_subjects " + std::to_string(config.n_subjects));
  }
  const Environment env = paper_environment();
  const Mechanism mech = builtin_mechanism(config.mechanism);
  Rng rng(config.seed);

  const int n_workers = 2 * config.n_subjects / 3;
  const int n_groups = n_workers / 2;

  // Roles are fixed for the whole session.
  std::vector<int> subjects(config.n_subjects);
  std::iota(subjects.begin(), subjects.end(), 1);
  rng.shuffle(subjects);
  std::vector<int> workers(subjects.begin(), subjects.begin() + n_workers);
  std::vector<int> staffers(subjects.begin() + n_workers, subjects.end());

  const int paid_period =
      config.n_practice + 1 +
      static_cast<int>(rng.below(config.n_periods - config.n_practice));

  // Empirical-belief counts over message ids, pooled across seats (the
  // built-in message spaces are seat-symmetric).
  std::vector<long long> message_counts(mech.message_count(0), 0);
  long long observed = 0;

  const auto belief_for = [&](int opponent) {
    if (config.belief_mode == BeliefMode::kStatic || observed == 0) {
      return expert_claim_belief(mech, opponent);
    }
    Belief b;
    b.reserve(message_counts.size());
    for (const long long c : message_counts) {
      b.emplace_back(c, observed);
    }
    return b;
  };

  SessionDataset dataset;
  dataset.seed = config.seed;
  for (int period = 1; period <= config.n_periods; ++period) {
    rng.shuffle(workers);
    rng.shuffle(staffers);
    std::vector<MessageProfile> period_messages(n_groups);
    for (int g = 0; g < n_groups; ++g) {
      PeriodRecord rec;
      rec.session = config.session_id;
      rec.period = period;
      rec.group = g + 1;
      rec.mechanism = config.mechanism;
      rec.practice = period <= config.n_practice;
      rec.paid = period == paid_period;
      rec.staffer_subject = staffers[g];

      TypeProfile types(2);
      MessageProfile msgs(2);
      for (int seat = 0; seat < 2; ++seat) {
        const int subject = workers[2 * g + seat];
        types[seat] = static_cast<int>(rng.below(2));
        msgs[seat] = choose_message(population[subject - 1], env, mech, seat,
                                    types[seat], belief_for(1 - seat), rng);
        rec.workers[seat].subject = subject;
        rec.workers[seat].true_type = types[seat];
      }
      const int alloc = outcome(mech, msgs);
      for (int seat = 0; seat < 2; ++seat) {
        rec.workers[seat].message = mech.messages[seat][msgs[seat]].meaning;
        rec.workers[seat].payoff = env.payoff(seat, alloc, types[seat]);
        rec.workers[seat].lie =
            message_is_lie(mech, seat, types[seat], msgs[seat]);
      }
      rec.staffer_payoff = staffer_payoff(types, inferred_types(mech, msgs));
      period_messages[g] = msgs;
      dataset.records.push_back(std::move(rec));
    }
    // Feedback arrives at the end of the period.
    for (const MessageProfile& msgs : period_messages) {
      for (const int m : msgs) {
        ++message_counts[m];
        ++observed;
      }
    }
  }
  return dataset;
}

BehaviorRule PopulationSampler::sample(Rng& rng) const {
  validate();
  long long denom = 1;
  for (const auto& [w, rule] : components) {
    denom = boost::integer::lcm(denom, w.denominator());
  }
  long long total = 0;
  for (const auto& [w, rule] : components) {
    total += w.numerator() * (denom / w.denominator());
  }
  long long draw = static_cast<long long>(rng.below(total));
  for (const auto& [w, rule] : components) {
    draw -= w.numerator() * (denom / w.denominator());
    if (draw < 0) return rule;
  }
  throw std::logic_error("sampler fell off the end");
}

void PopulationSampler::validate() const {
  if (components.empty()) {
    throw std::invalid_argument("population sampler has no components");
  }
  for (const auto& [w, rule] : components) {
    if (w <= Rational(0)) {
      throw std::invalid_argument("population weights must be positive");
    }
  }
}

std::vector<SessionSpec> paper_session_grid() {
  std::vector<SessionSpec> grid;
  for (int i = 0; i < 3; ++i) grid.push_back({"2x2-I", 12});
  for (int i = 0; i < 3; ++i) grid.push_back({"2x2-E", 12});
  for (int i = 0; i < 3; ++i) grid.push_back({"3x3-I", 12});
  grid.push_back({"3x3-I", 9});
  for (int i = 0; i < 2; ++i) grid.push_back({"3x3-E", 12});
  for (int i = 0; i < 2; ++i) grid.push_back({"3x3-E", 9});
  return grid;
}

void ExperimentConfig::validate() const {
  for (const SessionSpec& spec : grid) {
    SessionConfig s;
    s.mechanism = spec.mechanism;
    s.n_subjects = spec.n_subjects;
    s.n_periods = n_periods;
    s.n_practice = n_practice;
    s.validate();
  }
  if (!grid.empty()) population.validate();
}

SessionDataset run_experiment(const ExperimentConfig& config,
                              std::uint64_t master_seed, int threads) {
  config.validate();
  const int n = static_cast<int>(config.grid.size());
  std::vector<SessionDataset> parts(n);

  const auto run_one = [&](int i) {
    SessionConfig sc;
    sc.mechanism = config.grid[i].mechanism;
    sc.n_subjects = config.grid[i].n_subjects;
    sc.n_periods = config.n_periods;
    sc.n_practice = config.n_practice;
    sc.belief_mode = config.belief_mode;
    sc.session_id = i + 1;
    sc.seed = derive_seed(master_seed, 2 * static_cast<std::uint64_t>(i));
    Rng pop_rng(derive_seed(master_seed, 2 * static_cast<std::uint64_t>(i) + 1));
    std::vector<BehaviorRule> population;
    population.reserve(sc.n_subjects);
    for (int s = 0; s < sc.n_subjects; ++s) {
      population.push_back(config.population.sample(pop_rng));
    }
    parts[i] = run_session(sc, population);
  };

  if (threads <= 1 || n <= 1) {
    for (int i = 0; i < n; ++i) run_one(i);
  } else {
    std::vector<std::thread> pool;
    std::atomic<int> next{0};
    const int n_threads = std::min(threads, n);
    for (int w = 0; w < n_threads; ++w) {
      pool.emplace_back([&] {
        for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) {
          run_one(i);
        }
      });
    }
    for (auto& th : pool) th.join();
  }

  SessionDataset pooled;
  pooled.seed = master_seed;
  pooled.config_echo = experiment_config_to_json(config);
  for (const SessionDataset& part : parts) pooled.append(part);
  return pooled;
}

namespace {

json rule_to_json(const BehaviorRule& rule) {
  json j;
  switch (rule.kind) {
    case BehaviorRule::Kind::kTruthteller: j["kind"] = "truthteller"; break;
    case BehaviorRule::Kind::kCoordinator: j["kind"] = "coordinator"; break;
    case BehaviorRule::Kind::kLieAverse:
      j["kind"] = "lie-averse";
      j["cost"] = to_string(rule.lie_cost);
      break;
    case BehaviorRule::Kind::kNoisy:
      j["kind"] = "noisy";
      j["eps"] = to_string(rule.noise);
      j["base"] = rule_to_json(*rule.base);
      break;
  }
  return j;
}

BehaviorRule rule_from_json(const json& j) {
  const auto kind = j.at("kind").get<std::string>();
  if (kind == "truthteller") return BehaviorRule::truthteller();
  if (kind == "coordinator") return BehaviorRule::coordinator();
  if (kind == "lie-averse") {
    return BehaviorRule::lie_averse(
        parse_rational(j.at("cost").get<std::string>()));
  }
  if (kind == "noisy") {
    return BehaviorRule::noisy(rule_from_json(j.at("base")),
                               parse_rational(j.at("eps").get<std::string>()));
  }
  throw std::invalid_argument("unknown rule kind '" + kind + "'");
}

}  // namespace

ExperimentConfig experiment_config_from_json(const std::string& text) {
  const json j = json::parse(text);
  ExperimentConfig config;
  if (j.value("preset", "") == "paper") {
    config.grid = paper_session_grid();
  } else if (j.contains("sessions")) {
    for (const auto& s : j.at("sessions")) {
      config.grid.push_back({s.at("mechanism").get<std::string>(),
                             s.at("subjects").get<int>()});
    }
  } else {
    throw std::invalid_argument("config needs \"sessions\" or preset=paper");
  }
  config.n_periods = j.value("periods", 13);
  config.n_practice = j.value("practice", 3);
  const auto belief = j.value("belief", "static");
  if (belief == "static") {
    config.belief_mode = BeliefMode::kStatic;
  } else if (belief == "empirical") {
    config.belief_mode = BeliefMode::kEmpirical;
  } else {
    throw std::invalid_argument("unknown belief mode '" + belief + "'");
  }
  Rational noise(0);
  if (j.contains("noise")) {
    noise = parse_rational(j.at("noise").get<std::string>());
  }
  for (const auto& comp : j.at("population")) {
    BehaviorRule rule = rule_from_json(comp.at("rule"));
    if (noise > Rational(0)) rule = BehaviorRule::noisy(std::move(rule), noise);
    config.population.components.emplace_back(
        parse_rational(comp.at("weight").get<std::string>()), std::move(rule));
  }
  config.validate();
  return config;
}

std::string experiment_config_to_json(const ExperimentConfig& config) {
  json j;
  json sessions = json::array();
  for (const SessionSpec& s : config.grid) {
    sessions.push_back({{"mechanism", s.mechanism}, {"subjects", s.n_subjects}});
  }
  j["sessions"] = std::move(sessions);
  j["periods"] = config.n_periods;
  j["practice"] = config.n_practice;
  j["belief"] =
      config.belief_mode == BeliefMode::kStatic ? "static" : "empirical";
  json pop = json::array();
  for (const auto& [w, rule] : config.population.components) {
    pop.push_back({{"weight", to_string(w)}, {"rule", rule_to_json(rule)}});
  }
  j["population"] = std::move(pop);
  return j.dump(2);
}

PopulationSampler calibration_population() {
  const Rational eps(1, 20);
  PopulationSampler sampler;
  sampler.components = {
      {Rational(2, 20),
       BehaviorRule::noisy(BehaviorRule::truthteller(), eps)},
      {Rational(3, 20),
       BehaviorRule::noisy(BehaviorRule::coordinator(), eps)},
      {Rational(12, 20),
       BehaviorRule::noisy(BehaviorRule::lie_averse(Rational(3)), eps)},
      {Rational(3, 20),
       BehaviorRule::noisy(BehaviorRule::lie_averse(Rational(0)), eps)},
  };
  return sampler;
}

}  // namespace hirelab
