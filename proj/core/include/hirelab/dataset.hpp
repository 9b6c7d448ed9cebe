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
#include <cstdint>
#include <string>
#include <vector>

#include "hirelab/rational.hpp"

namespace hirelab {

struct WorkerRecord {
  int subject = -1;
  int true_type = -1;   // 0 = B, 1 = E
  int message = -1;     // canonical meaning: 0 = B, 1 = E, -1 = U
  Rational payoff{0};
  bool lie = false;
};

// One group-period of play: two workers and the matched staffer.
struct PeriodRecord {
  int session = 0;
  int period = 0;  // 1-based
  int group = 0;
  std::string mechanism;
  std::array<WorkerRecord, 2> workers;
  int staffer_subject = -1;
  Rational staffer_payoff{0};
  bool practice = false;
  bool paid = false;
};

struct SessionDataset {
  std::vector<PeriodRecord> records;
  std::string config_echo;  // JSON description of how the data was made
  std::uint64_t seed = 0;

  void append(const SessionDataset& other);
};

// Canonical message tokens used on disk: "B", "E", "U".
std::string message_token(int meaning);
int meaning_from_token(const std::string& token);

// CSV with header
// session,period,group,mechanism,subject,role,true_type,message,lie_flag,
// payoff,practice,paid
// and one row per subject-period (two worker rows and one staffer row per
// group). UTF-8, LF, comma-separated.
std::string dataset_to_csv(const SessionDataset& dataset);
SessionDataset dataset_from_csv(const std::string& text);

}  // namespace hirelab
