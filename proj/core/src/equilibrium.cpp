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

#include "hirelab/equilibrium.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <thread>

namespace hirelab {

namespace {

void check_profile(const Environment& env, const Mechanism& mech,
                   const StrategyProfile& profile) {
  if (static_cast<int>(profile.size()) != env.agent_count() ||
      env.agent_count() != mech.agent_count()) {
    throw std::domain_error("strategy profile arity mismatch");
  }
  for (int i = 0; i < env.agent_count(); ++i) {
    if (static_cast<int>(profile[i].size()) != env.type_count(i)) {
      throw std::domain_error("strategy not total over agent " +
                              std::to_string(i) + "'s types");
    }
    for (const int m : profile[i]) {
      if (m < 0 || m >= mech.message_count(i)) {
        throw std::domain_error("strategy uses invalid message id " +
                                std::to_string(m));
      }
    }
  }
}

MessageProfile played_messages(const StrategyProfile& profile,
                               const TypeProfile& types) {
  MessageProfile msgs(profile.size());
  for (std::size_t i = 0; i < profile.size(); ++i) {
    msgs[i] = profile[i][types[i]];
  }
  return msgs;
}

}  // namespace

StrategyProfile truthful_profile(const Environment& env,
                                 const Mechanism& mech) {
  StrategyProfile p(env.agent_count());
  for (int a = 0; a < env.agent_count(); ++a) {
    for (int t = 0; t < env.type_count(a); ++t) {
      p[a].push_back(truthful_message(mech, a, t));
    }
  }
  return p;
}

StrategyProfile constant_meaning_profile(const Environment& env,
                                         const Mechanism& mech, int meaning) {
  StrategyProfile p(env.agent_count());
  for (int a = 0; a < env.agent_count(); ++a) {
    int msg = -1;
    for (int m = 0; m < mech.message_count(a); ++m) {
      if (mech.messages[a][m].meaning == meaning) {
        msg = m;
        break;
      }
    }
    if (msg < 0) {
      throw std::domain_error("no message with meaning " +
                              std::to_string(meaning));
    }
    p[a].assign(env.type_count(a), msg);
  }
  return p;
}

bool is_ex_post_equilibrium(const Environment& env, const Mechanism& mech,
                            const StrategyProfile& profile) {
  check_profile(env, mech, profile);
  for (long long ti = 0; ti < env.profile_count(); ++ti) {
    const TypeProfile types = env.profile_at(ti);
    MessageProfile msgs = played_messages(profile, types);
    const int base_outcome = outcome(mech, msgs);
    for (int i = 0; i < env.agent_count(); ++i) {
      const Rational& base = env.payoff(i, base_outcome, types[i]);
      const int played = msgs[i];
      for (int m = 0; m < mech.message_count(i); ++m) {
        if (m == played) continue;
        msgs[i] = m;
        if (env.payoff(i, outcome(mech, msgs), types[i]) > base) return false;
      }
      msgs[i] = played;
    }
  }
  return true;
}

bool is_weakly_dominant_message(const Environment& env, const Mechanism& mech,
                                int agent, int own_type, int msg) {
  if (msg < 0 || msg >= mech.message_count(agent)) {
    throw std::domain_error("invalid message id " + std::to_string(msg));
  }
  // Enumerate opposing message profiles through full profiles that pin
  // this agent's message.
  for (long long pi = 0; pi < mech.profile_count(); ++pi) {
    MessageProfile msgs = mech.profile_at(pi);
    if (msgs[agent] != msg) continue;
    const Rational& base = env.payoff(agent, outcome(mech, msgs), own_type);
    for (int alt = 0; alt < mech.message_count(agent); ++alt) {
      msgs[agent] = alt;
      if (env.payoff(agent, outcome(mech, msgs), own_type) > base) {
        return false;
      }
    }
  }
  return true;
}

bool is_weakly_dominated_message(const Environment& env, const Mechanism& mech,
                                 int agent, int own_type, int msg) {
  for (int alt = 0; alt < mech.message_count(agent); ++alt) {
    if (alt == msg) continue;
    bool weakly_better = true;
    bool somewhere_strict = false;
    for (long long pi = 0; pi < mech.profile_count(); ++pi) {
      MessageProfile msgs = mech.profile_at(pi);
      if (msgs[agent] != msg) continue;
      const Rational& base = env.payoff(agent, outcome(mech, msgs), own_type);
      msgs[agent] = alt;
      const Rational& other = env.payoff(agent, outcome(mech, msgs), own_type);
      if (other < base) {
        weakly_better = false;
        break;
      }
      if (other > base) somewhere_strict = true;
    }
    if (weakly_better && somewhere_strict) return true;
  }
  return false;
}

bool is_strategy_proof(const Environment& env, const SocialChoiceFunction& f) {
  if (static_cast<long long>(f.table.size()) != env.profile_count()) {
    throw std::domain_error("scf is not total over the type space");
  }
  for (long long ti = 0; ti < env.profile_count(); ++ti) {
    TypeProfile types = env.profile_at(ti);
    for (int i = 0; i < env.agent_count(); ++i) {
      const int truth = types[i];
      const Rational& base =
          env.payoff(i, f.table[env.profile_index(types)], truth);
      for (int r = 0; r < env.type_count(i); ++r) {
        types[i] = r;
        if (env.payoff(i, f.table[env.profile_index(types)], truth) > base) {
          return false;
        }
      }
      types[i] = truth;
    }
  }
  return true;
}

SocialChoiceFunction induced_scf(const Environment& env, const Mechanism& mech,
                                 const StrategyProfile& profile) {
  check_profile(env, mech, profile);
  SocialChoiceFunction g;
  g.table.reserve(env.profile_count());
  for (long long ti = 0; ti < env.profile_count(); ++ti) {
    const TypeProfile types = env.profile_at(ti);
    g.table.push_back(outcome(mech, played_messages(profile, types)));
  }
  return g;
}

namespace {

long long strategy_count(const Environment& env, const Mechanism& mech,
                         int agent) {
  long long n = 1;
  for (int t = 0; t < env.type_count(agent); ++t) {
    n *= mech.message_count(agent);
  }
  return n;
}

Strategy strategy_at(const Environment& env, const Mechanism& mech, int agent,
                     long long index) {
  Strategy s(env.type_count(agent));
  for (int t = env.type_count(agent) - 1; t >= 0; --t) {
    s[t] = static_cast<int>(index % mech.message_count(agent));
    index /= mech.message_count(agent);
  }
  return s;
}

EquilibriumReport make_report(const Environment& env, const Mechanism& mech,
                              StrategyProfile profile) {
  EquilibriumReport rep;
  rep.ex_post = true;
  rep.dominant_strategy = true;
  for (int a = 0; a < env.agent_count(); ++a) {
    for (int t = 0; t < env.type_count(a); ++t) {
      if (!is_weakly_dominant_message(env, mech, a, t, profile[a][t])) {
        rep.dominant_strategy = false;
      }
      if (is_weakly_dominated_message(env, mech, a, t, profile[a][t])) {
        rep.weakly_dominated_components.emplace_back(a, t);
      }
    }
  }
  rep.induced = induced_scf(env, mech, profile);
  rep.profile = std::move(profile);
  return rep;
}

}  // namespace

std::vector<EquilibriumReport> enumerate_ex_post_equilibria(
    const Environment& env, const Mechanism& mech,
    const EnumerationOptions& options) {
  if (env.agent_count() != mech.agent_count()) {
    throw std::domain_error("environment/mechanism agent count mismatch");
  }
  long long total = 1;
  for (int a = 0; a < env.agent_count(); ++a) {
    const long long per_agent = strategy_count(env, mech, a);
    if (per_agent > options.cap / total) {
      throw std::length_error(
          "strategy profile space exceeds cap: at least " +
          std::to_string(per_agent * static_cast<double>(total)) + " > " +
          std::to_string(options.cap));
    }
    total *= per_agent;
  }

  const auto decode = [&](long long index) {
    StrategyProfile profile(env.agent_count());
    for (int a = env.agent_count() - 1; a >= 0; --a) {
      const long long per_agent = strategy_count(env, mech, a);
      profile[a] = strategy_at(env, mech, a, index % per_agent);
      index /= per_agent;
    }
    return profile;
  };

  const auto scan = [&](long long begin, long long end,
                        std::vector<EquilibriumReport>& out) {
    for (long long idx = begin; idx < end; ++idx) {
      StrategyProfile profile = decode(idx);
      if (is_ex_post_equilibrium(env, mech, profile)) {
        out.push_back(make_report(env, mech, std::move(profile)));
      }
    }
  };

  const int threads = std::max(1, options.threads);
  std::vector<EquilibriumReport> result;
  if (threads == 1 || total < 2 * threads) {
    scan(0, total, result);
    return result;
  }
  // Collect per-chunk, then concatenate in chunk order so the output is
  // identical to the single-threaded scan.
  std::vector<std::vector<EquilibriumReport>> chunks(threads);
  std::vector<std::thread> pool;
  const long long step = (total + threads - 1) / threads;
  for (int w = 0; w < threads; ++w) {
    const long long begin = w * step;
    const long long end = std::min(total, begin + step);
    pool.emplace_back([&, w, begin, end] { scan(begin, end, chunks[w]); });
  }
  for (auto& th : pool) th.join();
  for (auto& chunk : chunks) {
    result.insert(result.end(), std::make_move_iterator(chunk.begin()),
                  std::make_move_iterator(chunk.end()));
  }
  return result;
}

StrategyProfile compose(const StrategyProfile& outer,
                        const StrategyProfile& inner) {
  if (outer.size() != inner.size()) {
    throw std::invalid_argument("composition arity mismatch");
  }
  StrategyProfile out(outer.size());
  for (std::size_t i = 0; i < outer.size(); ++i) {
    out[i].reserve(inner[i].size());
    for (const int report : inner[i]) {
      if (report < 0 || report >= static_cast<int>(outer[i].size())) {
        throw std::invalid_argument(
            "inner strategy's report is outside the outer strategy's domain");
      }
      out[i].push_back(outer[i][report]);
    }
  }
  return out;
}

bool interim_best_response_check(const Environment& env, const Mechanism& mech,
                                 const StrategyProfile& profile,
                                 const std::vector<Rational>& prior) {
  check_profile(env, mech, profile);
  if (static_cast<long long>(prior.size()) != env.profile_count()) {
    throw std::domain_error("prior size does not match the type space");
  }
  Rational sum(0);
  for (const auto& p : prior) {
    if (p < Rational(0)) throw std::domain_error("negative prior weight");
    sum += p;
  }
  if (sum != Rational(1)) {
    throw std::invalid_argument("prior does not sum to 1 (got " + to_string(sum) +
                            ")");
  }
  // Weak inequality on unconditional sums; dividing by the own-type
  // marginal would not change the sign, and zero-probability types pass
  // vacuously because every term vanishes.
  for (int i = 0; i < env.agent_count(); ++i) {
    for (int t = 0; t < env.type_count(i); ++t) {
      for (int alt = 0; alt < mech.message_count(i); ++alt) {
        Rational gain(0);
        for (long long ti = 0; ti < env.profile_count(); ++ti) {
          const TypeProfile types = env.profile_at(ti);
          if (types[i] != t) continue;
          if (prior[ti] == Rational(0)) continue;
          MessageProfile msgs = played_messages(profile, types);
          const Rational& chosen = env.payoff(i, outcome(mech, msgs), t);
          msgs[i] = alt;
          const Rational& deviated = env.payoff(i, outcome(mech, msgs), t);
          gain += prior[ti] * (deviated - chosen);
        }
        if (gain > Rational(0)) return false;
      }
    }
  }
  return true;
}

bool CompositionReport::all_pass() const {
  if (!precondition_ok) return false;
  return std::all_of(checks.begin(), checks.end(),
                     [](const CompositionCheck& c) { return c.ok(); });
}

CompositionReport verify_proposition1(const Environment& env,
                                      const SocialChoiceFunction& f,
                                      const Mechanism& mech,
                                      const StrategyProfile& sigma) {
  CompositionReport report;
  if (!is_ex_post_equilibrium(env, mech, sigma)) {
    report.precondition_error = "sigma is not an ex-post equilibrium of mech";
    return report;
  }
  if (induced_scf(env, mech, sigma).table != f.table) {
    report.precondition_error = "sigma does not implement f (phi∘sigma != f)";
    return report;
  }
  report.precondition_ok = true;

  const Mechanism direct = build_direct(env, f, true);
  for (const EquilibriumReport& eq :
       enumerate_ex_post_equilibria(env, direct)) {
    CompositionCheck check;
    check.delta = eq.profile;
    const StrategyProfile composed = compose(sigma, eq.profile);
    check.composed_is_equilibrium =
        is_ex_post_equilibrium(env, mech, composed);
    // f∘delta, evaluated agent-wise on the reported profile.
    SocialChoiceFunction g;
    for (long long ti = 0; ti < env.profile_count(); ++ti) {
      const TypeProfile types = env.profile_at(ti);
      TypeProfile reported(env.agent_count());
      for (int a = 0; a < env.agent_count(); ++a) {
        reported[a] = eq.profile[a][types[a]];
      }
      g.table.push_back(f.table[env.profile_index(reported)]);
    }
    check.scf_matches =
        induced_scf(env, mech, composed).table == g.table;
    report.checks.push_back(std::move(check));
  }
  return report;
}

Environment random_small_environment(Rng& rng) {
  for (;;) {
    const int t1 = 1 + static_cast<int>(rng.below(3));
    const int t2 = 1 + static_cast<int>(rng.below(3));
    const int nx = 2 + static_cast<int>(rng.below(3));
    double candidates = 1;
    for (int p = 0; p < t1 * t2; ++p) candidates *= nx;
    if (candidates > 65'536) continue;

    Environment env;
    env.agents = {"a1", "a2"};
    env.types.resize(2);
    for (int t = 0; t < t1; ++t) env.types[0].push_back("t" + std::to_string(t));
    for (int t = 0; t < t2; ++t) env.types[1].push_back("t" + std::to_string(t));
    for (int x = 0; x < nx; ++x) env.outcomes.push_back("x" + std::to_string(x));
    env.payoffs.resize(2);
    for (int a = 0; a < 2; ++a) {
      env.payoffs[a].resize(nx);
      for (int x = 0; x < nx; ++x) {
        for (int t = 0; t < env.type_count(a); ++t) {
          env.payoffs[a][x].push_back(
              Rational(static_cast<long long>(rng.below(10))));
        }
      }
    }
    env.validate();
    return env;
  }
}

std::vector<SocialChoiceFunction> enumerate_strategy_proof_scfs(
    const Environment& env, long long cap) {
  const long long profiles = env.profile_count();
  const long long nx = env.outcome_count();
  long long candidates = 1;
  for (long long p = 0; p < profiles; ++p) {
    if (candidates > cap / nx) {
      throw std::length_error("scf candidate count exceeds cap " +
                              std::to_string(cap));
    }
    candidates *= nx;
  }
  std::vector<SocialChoiceFunction> result;
  SocialChoiceFunction f;
  f.table.assign(profiles, 0);
  for (long long c = 0; c < candidates; ++c) {
    long long rem = c;
    for (long long p = profiles - 1; p >= 0; --p) {
      f.table[p] = static_cast<int>(rem % nx);
      rem /= nx;
    }
    if (is_strategy_proof(env, f)) result.push_back(f);
  }
  return result;
}

Mechanism duplicate_message_mechanism(const Environment& env,
                                      const SocialChoiceFunction& f,
                                      Rng& rng) {
  Mechanism mech = build_direct(env, f, true);
  mech.name = "direct-with-duplicates";
  mech.inference_table.clear();
  for (int a = 0; a < env.agent_count(); ++a) {
    const int extras = 1 + static_cast<int>(rng.below(2));
    for (int k = 0; k < extras; ++k) {
      const int t = static_cast<int>(rng.below(env.type_count(a)));
      Message dup = mech.messages[a][t];
      dup.id += "'" + std::to_string(k);
      mech.messages[a].push_back(std::move(dup));
    }
  }
  // Rebuild the table over the enlarged space: a duplicate acts exactly
  // like the type it copies.
  mech.outcome_table.assign(mech.profile_count(), -1);
  for (long long pi = 0; pi < mech.profile_count(); ++pi) {
    const MessageProfile msgs = mech.profile_at(pi);
    TypeProfile as_types(env.agent_count());
    for (int a = 0; a < env.agent_count(); ++a) {
      as_types[a] = mech.messages[a][msgs[a]].meaning;
    }
    mech.outcome_table[pi] = f.table[env.profile_index(as_types)];
  }
  mech.validate();
  return mech;
}

CompositionSuiteResult run_proposition1_suite(int trials, std::uint64_t seed) {
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  CompositionSuiteResult result;
  for (int trial = 0; trial < trials; ++trial) {
    Environment env;
    SocialChoiceFunction f;
    Mechanism mech;
    if (trial == 0) {
      env = paper_environment();
      f = principal_scf();
      mech = builtin_mechanism("3x3-E");
    } else {
      Rng rng(derive_seed(seed, static_cast<std::uint64_t>(trial)));
      env = random_small_environment(rng);
      const auto scfs = enumerate_strategy_proof_scfs(env);
      f = scfs[rng.below(scfs.size())];
      mech = duplicate_message_mechanism(env, f, rng);
    }
    const StrategyProfile sigma = truthful_profile(env, mech);
    const CompositionReport report = verify_proposition1(env, f, mech, sigma);
    ++result.trials;
    if (!report.precondition_ok) {
      ++result.theorem_violations;
      result.notes.push_back("trial " + std::to_string(trial) +
                             ": precondition failed: " +
                             report.precondition_error);
      continue;
    }
    for (std::size_t d = 0; d < report.checks.size(); ++d) {
      if (!report.checks[d].ok()) {
        ++result.theorem_violations;
        result.notes.push_back("trial " + std::to_string(trial) + ", delta #" +
                               std::to_string(d) + ": composition failed");
      }
    }
  }
  return result;
}

namespace {

std::string profile_string(const Environment& env, const Mechanism& mech,
                           const StrategyProfile& profile) {
  std::string out;
  for (int a = 0; a < env.agent_count(); ++a) {
    if (a) out += " | ";
    out += env.agents[a] + ":";
    for (int t = 0; t < env.type_count(a); ++t) {
      if (t) out += ";";
      out += " " + env.types[a][t] + "->" +
             mech.messages[a][profile[a][t]].id;
    }
  }
  return out;
}

std::string scf_string(const Environment& env, const Mechanism& mech,
                       const SocialChoiceFunction& g) {
  std::string out;
  for (long long ti = 0; ti < env.profile_count(); ++ti) {
    const TypeProfile types = env.profile_at(ti);
    if (ti) out += "; ";
    for (int a = 0; a < env.agent_count(); ++a) {
      out += env.types[a][types[a]];
    }
    out += "->" + mech.outcome_names[g.table[ti]];
  }
  return out;
}

}  // namespace

std::string equilibria_to_csv(const Environment& env, const Mechanism& mech,
                              const std::vector<EquilibriumReport>& reports) {
  std::string out =
      "id,profile,ex_post,dominant_strategy,weakly_dominated,induced_scf\n";
  for (std::size_t i = 0; i < reports.size(); ++i) {
    const auto& rep = reports[i];
    std::string dominated;
    for (const auto& [a, t] : rep.weakly_dominated_components) {
      if (!dominated.empty()) dominated += ";";
      dominated += env.agents[a] + ":" + env.types[a][t];
    }
    out += std::to_string(i) + ",\"" +
           profile_string(env, mech, rep.profile) + "\"," +
           (rep.ex_post ? "1" : "0") + "," +
           (rep.dominant_strategy ? "1" : "0") + ",\"" + dominated + "\",\"" +
           scf_string(env, mech, rep.induced) + "\"\n";
  }
  return out;
}

std::string equilibria_to_text(const Environment& env, const Mechanism& mech,
                               const std::vector<EquilibriumReport>& reports) {
  std::string out = mech.name + ": " + std::to_string(reports.size()) +
                    " ex-post equilibria\n";
  for (std::size_t i = 0; i < reports.size(); ++i) {
    const auto& rep = reports[i];
    out += "#" + std::to_string(i) + "  " +
           profile_string(env, mech, rep.profile);
    out += rep.dominant_strategy ? "  [dominant-strategy]" : "";
    if (!rep.weakly_dominated_components.empty()) {
      out += "  [weakly dominated components: ";
      bool first = true;
      for (const auto& [a, t] : rep.weakly_dominated_components) {
        if (!first) out += ", ";
        first = false;
        out += env.agents[a] + ":" + env.types[a][t];
      }
      out += "]";
    }
    out += "\n    induces " + scf_string(env, mech, rep.induced) + "\n";
  }
  return out;
}

}  // namespace hirelab
