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

#include "hirelab/mechanism.hpp"

#include <algorithm>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace hirelab {

using nlohmann::json;

int Mechanism::message_count(int agent) const {
  if (agent < 0 || agent >= agent_count()) {
    throw std::domain_error("unknown agent index " + std::to_string(agent));
  }
  return static_cast<int>(messages[agent].size());
}

long long Mechanism::profile_count() const {
  long long n = 1;
  for (int i = 0; i < agent_count(); ++i) n *= message_count(i);
  return n;
}

MessageProfile Mechanism::profile_at(long long index) const {
  if (index < 0 || index >= profile_count()) {
    throw std::domain_error("message profile index out of range");
  }
  MessageProfile p(agent_count());
  for (int i = agent_count() - 1; i >= 0; --i) {
    p[i] = static_cast<int>(index % message_count(i));
    index /= message_count(i);
  }
  return p;
}

long long Mechanism::profile_index(std::span<const int> msgs) const {
  if (static_cast<int>(msgs.size()) != agent_count()) {
    throw std::domain_error("message profile arity mismatch");
  }
  long long idx = 0;
  for (int i = 0; i < agent_count(); ++i) {
    if (msgs[i] < 0 || msgs[i] >= message_count(i)) {
      throw std::domain_error("invalid message id " + std::to_string(msgs[i]) +
                              " for agent " + std::to_string(i));
    }
    idx = idx * message_count(i) + msgs[i];
  }
  return idx;
}

void Mechanism::validate() const {
  if (messages.empty()) throw std::invalid_argument("mechanism has no agents");
  if (static_cast<long long>(outcome_table.size()) != profile_count()) {
    throw std::invalid_argument(
        "outcome table is not total over the message profiles");
  }
  for (const int x : outcome_table) {
    if (x < 0 || x >= static_cast<int>(outcome_names.size())) {
      throw std::invalid_argument("outcome index out of range in table");
    }
  }
  if (!inference_table.empty() &&
      static_cast<long long>(inference_table.size()) != profile_count()) {
    throw std::invalid_argument("inference table size mismatch");
  }
}

int outcome(const Mechanism& mech, std::span<const int> msgs) {
  return mech.outcome_table[mech.profile_index(msgs)];
}

bool message_is_lie(const Mechanism& mech, int agent, int own_type, int msg) {
  if (msg < 0 || msg >= mech.message_count(agent)) {
    throw std::domain_error("invalid message id " + std::to_string(msg));
  }
  const MessageLabel& label = mech.messages[agent][msg].label;
  return label.kind == LabelKind::kClaimType && label.claimed_type != own_type;
}

TypeProfile inferred_types(const Mechanism& mech, std::span<const int> msgs) {
  if (!mech.has_inference()) {
    throw std::logic_error("mechanism '" + mech.name +
                           "' carries no type-inference rule");
  }
  return mech.inference_table[mech.profile_index(msgs)];
}

Mechanism build_direct(const Environment& env, const SocialChoiceFunction& f,
                       bool explicit_labels) {
  if (static_cast<long long>(f.table.size()) != env.profile_count()) {
    throw std::invalid_argument("scf is not total over the type space");
  }
  Mechanism mech;
  mech.name = explicit_labels ? "direct-explicit" : "direct-implicit";
  mech.outcome_names = env.outcomes;
  mech.messages.resize(env.agent_count());
  for (int a = 0; a < env.agent_count(); ++a) {
    for (int t = 0; t < env.type_count(a); ++t) {
      Message m;
      m.meaning = t;
      if (explicit_labels) {
        m.id = env.types[a][t];
        m.label = {LabelKind::kClaimType, t, "I am a " + env.types[a][t]};
      } else {
        m.id = std::string(1, static_cast<char>('A' + t));
        m.label = {LabelKind::kNeutral, -1, "Option " + m.id};
      }
      mech.messages[a].push_back(std::move(m));
    }
  }
  mech.outcome_table = f.table;
  // Reports are taken at face value.
  mech.inference_table.reserve(f.table.size());
  for (long long p = 0; p < env.profile_count(); ++p) {
    mech.inference_table.push_back(env.profile_at(p));
  }
  mech.validate();
  return mech;
}

namespace {

Mechanism build_paper_mechanism(bool extended, bool explicit_labels) {
  const Environment env = paper_environment();
  Mechanism mech = build_direct(env, principal_scf(), explicit_labels);
  mech.name = std::string(extended ? "3x3" : "2x2") +
              (explicit_labels ? "-E" : "-I");
  if (!extended) return mech;

  // Add the leave-the-question-unanswered message to both workers.
  for (int a = 0; a < 2; ++a) {
    Message u;
    u.meaning = kMeaningUnanswered;
    if (explicit_labels) {
      u.id = "U";
      u.label = {LabelKind::kUnanswered, -1, "I decline to state"};
    } else {
      u.id = "C";
      u.label = {LabelKind::kNeutral, -1, "Option C"};
    }
    mech.messages[a].push_back(std::move(u));
  }

  // A single unanswered report reads as the opposite of the other claim;
  // two unanswered reports read as two beginners.
  const auto infer = [](int m1, int m2) -> TypeProfile {
    if (m1 == 2 && m2 == 2) return {kBeginner, kBeginner};
    if (m1 == 2) return {1 - m2, m2};
    if (m2 == 2) return {m1, 1 - m1};
    return {m1, m2};
  };
  const SocialChoiceFunction f = principal_scf();
  mech.outcome_table.assign(9, -1);
  mech.inference_table.assign(9, {});
  for (int m1 = 0; m1 < 3; ++m1) {
    for (int m2 = 0; m2 < 3; ++m2) {
      const TypeProfile read = infer(m1, m2);
      mech.outcome_table[m1 * 3 + m2] = f.at(env, read);
      mech.inference_table[m1 * 3 + m2] = read;
    }
  }
  mech.validate();
  return mech;
}

}  // namespace

Mechanism builtin_mechanism(const std::string& name) {
  if (name == "2x2-I") return build_paper_mechanism(false, false);
  if (name == "2x2-E") return build_paper_mechanism(false, true);
  if (name == "3x3-I") return build_paper_mechanism(true, false);
  if (name == "3x3-E") return build_paper_mechanism(true, true);
  throw std::invalid_argument("unknown mechanism '" + name + "'");
}

std::vector<std::string> builtin_mechanism_names() {
  return {"2x2-I", "2x2-E", "3x3-I", "3x3-E"};
}

int truthful_message(const Mechanism& mech, int agent, int own_type) {
  for (int m = 0; m < mech.message_count(agent); ++m) {
    if (mech.messages[agent][m].meaning == own_type) return m;
  }
  throw std::domain_error("no message with meaning of type " +
                          std::to_string(own_type));
}

int expert_claim_message(const Mechanism& mech, int agent) {
  return truthful_message(mech, agent, kExpert);
}

std::string render_table(const Mechanism& mech) {
  if (mech.agent_count() != 2) {
    throw std::domain_error("table rendering requires two agents");
  }
  const auto& rows = mech.messages[0];
  const auto& cols = mech.messages[1];
  std::size_t row_w = 0;
  for (const auto& m : rows) row_w = std::max(row_w, m.id.size());
  std::vector<std::size_t> col_w(cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c) {
    col_w[c] = cols[c].id.size();
    for (std::size_t r = 0; r < rows.size(); ++r) {
      const int x = mech.outcome_table[r * cols.size() + c];
      col_w[c] = std::max(col_w[c], mech.outcome_names[x].size());
    }
  }
  const auto pad = [](const std::string& s, std::size_t w) {
    return std::string(w - s.size(), ' ') + s;
  };
  std::string out = mech.name + "  [worker 1 rows x worker 2 columns]\n";
  out += std::string(row_w, ' ');
  for (std::size_t c = 0; c < cols.size(); ++c) {
    out += "  " + pad(cols[c].id, col_w[c]);
  }
  out += "\n";
  for (std::size_t r = 0; r < rows.size(); ++r) {
    out += pad(rows[r].id, row_w);
    for (std::size_t c = 0; c < cols.size(); ++c) {
      const int x = mech.outcome_table[r * cols.size() + c];
      out += "  " + pad(mech.outcome_names[x], col_w[c]);
    }
    out += "\n";
  }
  return out;
}

namespace {

std::string kind_name(LabelKind k) {
  switch (k) {
    case LabelKind::kClaimType: return "claim";
    case LabelKind::kNeutral: return "neutral";
    case LabelKind::kUnanswered: return "unanswered";
  }
  throw std::logic_error("bad label kind");
}

LabelKind kind_from_name(const std::string& s) {
  if (s == "claim") return LabelKind::kClaimType;
  if (s == "neutral") return LabelKind::kNeutral;
  if (s == "unanswered") return LabelKind::kUnanswered;
  throw std::invalid_argument("unknown label kind '" + s + "'");
}

}  // namespace

std::string mechanism_to_json(const Mechanism& mech) {
  json j;
  j["name"] = mech.name;
  json agents = json::array();
  for (const auto& space : mech.messages) {
    json msgs = json::array();
    for (const auto& m : space) {
      json jm;
      jm["id"] = m.id;
      jm["kind"] = kind_name(m.label.kind);
      if (m.label.kind == LabelKind::kClaimType) {
        jm["claimed_type"] = m.label.claimed_type;
      }
      jm["text"] = m.label.text;
      jm["meaning"] = m.meaning;
      msgs.push_back(std::move(jm));
    }
    agents.push_back(std::move(msgs));
  }
  j["messages"] = std::move(agents);
  j["outcomes"] = mech.outcome_names;
  j["table"] = mech.outcome_table;  // row-major, agent 0 most significant
  if (mech.has_inference()) {
    json inf = json::array();
    for (const auto& prof : mech.inference_table) inf.push_back(prof);
    j["inference"] = std::move(inf);
  }
  return j.dump(2);
}

Mechanism mechanism_from_json(const std::string& text) {
  const json j = json::parse(text);
  Mechanism mech;
  mech.name = j.at("name").get<std::string>();
  for (const auto& space : j.at("messages")) {
    std::vector<Message> msgs;
    for (const auto& jm : space) {
      Message m;
      m.id = jm.at("id").get<std::string>();
      m.label.kind = kind_from_name(jm.at("kind").get<std::string>());
      if (m.label.kind == LabelKind::kClaimType) {
        m.label.claimed_type = jm.at("claimed_type").get<int>();
      }
      m.label.text = jm.value("text", "");
      m.meaning = jm.at("meaning").get<int>();
      msgs.push_back(std::move(m));
    }
    mech.messages.push_back(std::move(msgs));
  }
  mech.outcome_names = j.at("outcomes").get<std::vector<std::string>>();
  mech.outcome_table = j.at("table").get<std::vector<int>>();
  if (j.contains("inference")) {
    for (const auto& prof : j.at("inference")) {
      mech.inference_table.push_back(prof.get<TypeProfile>());
    }
  }
  mech.validate();
  return mech;
}

}  // namespace hirelab
