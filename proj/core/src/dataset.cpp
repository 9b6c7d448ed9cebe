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

#include "hirelab/dataset.hpp"

#include <map>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace hirelab {

void SessionDataset::append(const SessionDataset& other) {
  records.insert(records.end(), other.records.begin(), other.records.end());
}

std::string message_token(int meaning) {
  switch (meaning) {
    case 0: return "B";
    case 1: return "E";
    case -1: return "U";
  }
  throw std::domain_error("unknown message meaning " +
                          std::to_string(meaning));
}

int meaning_from_token(const std::string& token) {
  if (token == "B") return 0;
  if (token == "E") return 1;
  if (token == "U") return -1;
  throw std::invalid_argument("unknown message token '" + token + "'");
}

namespace {

const char* kHeader =
    "session,period,group,mechanism,subject,role,true_type,message,lie_flag,"
    "payoff,practice,paid";

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  for (const char c : line) {
    if (c == ',') {
      fields.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  fields.push_back(std::move(cur));
  return fields;
}

}  // namespace

std::string dataset_to_csv(const SessionDataset& dataset) {
  std::string out = kHeader;
  out += "\n";
  for (const PeriodRecord& rec : dataset.records) {
    const std::string prefix = std::to_string(rec.session) + "," +
                               std::to_string(rec.period) + "," +
                               std::to_string(rec.group) + "," + rec.mechanism +
                               ",";
    const std::string suffix = std::string(",") +
                               (rec.practice ? "1" : "0") + "," +
                               (rec.paid ? "1" : "0") + "\n";
    for (const WorkerRecord& w : rec.workers) {
      out += prefix + std::to_string(w.subject) + ",worker," +
             message_token(w.true_type) + "," + message_token(w.message) +
             "," + (w.lie ? "1" : "0") + "," + to_string(w.payoff) + suffix;
    }
    out += prefix + std::to_string(rec.staffer_subject) + ",staffer,,,," +
           to_string(rec.staffer_payoff) + suffix;
  }
  return out;
}

SessionDataset dataset_from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != kHeader) {
    throw std::invalid_argument(
        "dataset CSV header mismatch; expected: " + std::string(kHeader));
  }
  SessionDataset dataset;
  // Group rows back into period records keyed by (session, period, group).
  std::map<std::tuple<int, int, int>, PeriodRecord> pending;
  std::map<std::tuple<int, int, int>, int> worker_counts;
  std::vector<std::tuple<int, int, int>> order;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto f = split_line(line);
    if (f.size() != 12) {
      throw std::invalid_argument("line " + std::to_string(line_no) +
                                  ": expected 12 columns, got " +
                                  std::to_string(f.size()));
    }
    const auto key = std::make_tuple(std::stoi(f[0]), std::stoi(f[1]),
                                     std::stoi(f[2]));
    auto it = pending.find(key);
    if (it == pending.end()) {
      PeriodRecord rec;
      rec.session = std::get<0>(key);
      rec.period = std::get<1>(key);
      rec.group = std::get<2>(key);
      rec.mechanism = f[3];
      rec.practice = f[10] == "1";
      rec.paid = f[11] == "1";
      it = pending.emplace(key, std::move(rec)).first;
      order.push_back(key);
    }
    PeriodRecord& rec = it->second;
    if (f[5] == "worker") {
      const int slot = worker_counts[key]++;
      if (slot > 1) {
        throw std::invalid_argument("line " + std::to_string(line_no) +
                                    ": more than two workers in a group");
      }
      WorkerRecord& w = rec.workers[slot];
      w.subject = std::stoi(f[4]);
      w.true_type = meaning_from_token(f[6]);
      w.message = meaning_from_token(f[7]);
      w.lie = f[8] == "1";
      w.payoff = parse_rational(f[9]);
    } else if (f[5] == "staffer") {
      rec.staffer_subject = std::stoi(f[4]);
      rec.staffer_payoff = parse_rational(f[9]);
    } else {
      throw std::invalid_argument("line " + std::to_string(line_no) +
                                  ": unknown role '" + f[5] + "'");
    }
  }
  for (const auto& key : order) {
    if (worker_counts[key] != 2) {
      throw std::invalid_argument("group record is missing a worker row");
    }
    dataset.records.push_back(std::move(pending[key]));
  }
  return dataset;
}

}  // namespace hirelab
