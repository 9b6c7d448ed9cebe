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

#include <span>
#include <string>
#include <vector>

#include "hirelab/environment.hpp"

namespace hirelab {

// How a message reads to the agent sending it. Only ClaimType messages can
// be lies; Neutral ("Option B") and Unanswered ("I decline to state")
// assert nothing.
enum class LabelKind { kClaimType, kNeutral, kUnanswered };

struct MessageLabel {
  LabelKind kind = LabelKind::kNeutral;
  int claimed_type = -1;  // type index, ClaimType only
  std::string text;       // display text, e.g. "I am an expert"
};

// Canonical meaning of a message with no type claim attached.
inline constexpr int kMeaningUnanswered = -1;

struct Message {
  std::string id;      // canonical token, e.g. "B", "E", "U"
  MessageLabel label;
  // Strategic role under the canonical bijection between label variants:
  // a type index, or kMeaningUnanswered.
  int meaning = kMeaningUnanswered;
};

using MessageProfile = std::vector<int>;

// A finite mechanism (M, phi): per-agent labeled message spaces plus a
// dense outcome table in row-major message order (agent 0 most
// significant). Outcome values index an Environment's outcome set.
// Immutable after construction.
struct Mechanism {
  std::string name;
  std::vector<std::vector<Message>> messages;
  std::vector<std::string> outcome_names;  // for standalone rendering
  std::vector<int> outcome_table;
  // Type inference used for designer payoffs; empty when the mechanism
  // does not define one.
  std::vector<TypeProfile> inference_table;

  int agent_count() const { return static_cast<int>(messages.size()); }
  int message_count(int agent) const;
  long long profile_count() const;
  MessageProfile profile_at(long long index) const;
  long long profile_index(std::span<const int> msgs) const;

  bool has_inference() const { return !inference_table.empty(); }

  void validate() const;
};

// Table lookup; throws std::domain_error on invalid message ids.
int outcome(const Mechanism& mech, std::span<const int> msgs);

// True iff the message claims a type different from the sender's.
bool message_is_lie(const Mechanism& mech, int agent, int own_type, int msg);

// Type profile the designer reads off the messages. Claims are taken at
// face value (via the canonical meaning); a single unanswered message is
// assigned the opposite of the other worker's claim; two unanswered
// messages read as two beginners. Throws std::logic_error when the
// mechanism carries no inference rule.
TypeProfile inferred_types(const Mechanism& mech, std::span<const int> msgs);

// Direct revelation mechanism of f: messages are the types, outcomes are
// f, labels are type claims when explicit_labels and neutral tags
// otherwise.
Mechanism build_direct(const Environment& env, const SocialChoiceFunction& f,
                       bool explicit_labels);

// The four experimental mechanisms on paper_environment():
// "2x2-I", "2x2-E", "3x3-I", "3x3-E".
Mechanism builtin_mechanism(const std::string& name);
std::vector<std::string> builtin_mechanism_names();

// First message whose meaning is the agent's own type; throws
// std::domain_error if there is none.
int truthful_message(const Mechanism& mech, int agent, int own_type);
// First message whose meaning is Expert (the coordinated claim).
int expert_claim_message(const Mechanism& mech, int agent);

// Aligned text matrix, worker-1 rows and worker-2 columns.
std::string render_table(const Mechanism& mech);

std::string mechanism_to_json(const Mechanism& mech);
Mechanism mechanism_from_json(const std::string& text);

}  // namespace hirelab
