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

#include "hirelab/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>

namespace hirelab {

std::string to_string(OutcomeClass c) {
  switch (c) {
    case OutcomeClass::kTruthfulEq: return "truthful-eq";
    case OutcomeClass::kWorkerOptimalEq: return "worker-optimal-eq";
    case OutcomeClass::kBoth: return "both";
    case OutcomeClass::kNeither: return "neither";
  }
  throw std::logic_error("bad outcome class");
}

OutcomeClass classify(const std::array<int, 2>& types,
                      const std::array<int, 2>& messages) {
  const bool all_expert_types = types[0] == kExpert && types[1] == kExpert;
  const bool all_expert_claims = messages[0] == kExpert &&
                                 messages[1] == kExpert;
  const bool truthful = messages[0] == types[0] && messages[1] == types[1];
  if (all_expert_claims && all_expert_types) return OutcomeClass::kBoth;
  if (all_expert_claims) return OutcomeClass::kWorkerOptimalEq;
  if (truthful) return OutcomeClass::kTruthfulEq;
  return OutcomeClass::kNeither;
}

std::vector<GroupObservation> group_observations(const SessionDataset& data) {
  std::vector<GroupObservation> out;
  for (const PeriodRecord& rec : data.records) {
    if (rec.practice) continue;
    GroupObservation obs;
    obs.session = rec.session;
    obs.period = rec.period;
    obs.group = rec.group;
    obs.mechanism = rec.mechanism;
    for (int i = 0; i < 2; ++i) {
      obs.subjects[i] = rec.workers[i].subject;
      obs.types[i] = rec.workers[i].true_type;
      obs.messages[i] = rec.workers[i].message;
      obs.worker_payoffs[i] = rec.workers[i].payoff;
    }
    obs.staffer_payoff = rec.staffer_payoff;
    obs.outcome = classify(obs.types, obs.messages);
    out.push_back(std::move(obs));
  }
  return out;
}

std::string type_pair_name(int pair) {
  switch (pair) {
    case kPairBB: return "2 beginners";
    case kPairMixed: return "1 expert, 1 beginner";
    case kPairEE: return "2 experts";
    case kPairAll: return "all";
  }
  throw std::domain_error("bad type pair index " + std::to_string(pair));
}

namespace {

int type_pair_of(const std::array<int, 2>& types) {
  return types[0] + types[1];  // B = 0, E = 1
}

struct CellAccumulator {
  long long n = 0;
  long long ee = 0;
  long long truthful = 0;
  double staffer_sum = 0.0;
  long long beg_n = 0;
  long long beg_truthful = 0;
  long long beg_deceptive = 0;
  long long beg_unanswered = 0;

  void add(const GroupObservation& obs) {
    ++n;
    if (obs.messages[0] == kExpert && obs.messages[1] == kExpert) ++ee;
    if (obs.messages[0] == obs.types[0] && obs.messages[1] == obs.types[1]) {
      ++truthful;
    }
    staffer_sum += to_double(obs.staffer_payoff);
    for (int i = 0; i < 2; ++i) {
      if (obs.types[i] != kBeginner) continue;
      ++beg_n;
      if (obs.messages[i] == kBeginner) ++beg_truthful;
      else if (obs.messages[i] == kExpert) ++beg_deceptive;
      else ++beg_unanswered;
    }
  }

  SummaryCell cell() const {
    SummaryCell c;
    c.n_groups = n;
    c.n_beginner_obs = beg_n;
    if (n > 0) {
      c.ee_message_rate = static_cast<double>(ee) / n;
      c.both_truthful_rate = static_cast<double>(truthful) / n;
      c.staffer_mean_payoff = staffer_sum / n;
    }
    if (beg_n > 0) {
      c.beginner_truthful_rate = static_cast<double>(beg_truthful) / beg_n;
      c.beginner_deceptive_rate = static_cast<double>(beg_deceptive) / beg_n;
      c.beginner_unanswered_rate = static_cast<double>(beg_unanswered) / beg_n;
    }
    return c;
  }
};

std::string opt_str(const std::optional<double>& v) {
  if (!v) return "";
  std::ostringstream os;
  os << *v;
  return os.str();
}

}  // namespace

SummaryTable summary_rates(const SessionDataset& data) {
  SummaryTable table;
  std::map<std::pair<std::string, int>, CellAccumulator> acc;
  for (const GroupObservation& obs : group_observations(data)) {
    if (std::find(table.mechanisms.begin(), table.mechanisms.end(),
                  obs.mechanism) == table.mechanisms.end()) {
      table.mechanisms.push_back(obs.mechanism);
    }
    acc[{obs.mechanism, type_pair_of(obs.types)}].add(obs);
    acc[{obs.mechanism, kPairAll}].add(obs);
  }
  for (const std::string& mech : table.mechanisms) {
    for (int pair = kPairBB; pair <= kPairAll; ++pair) {
      table.cells[{mech, pair}] = acc[{mech, pair}].cell();
    }
  }
  return table;
}

std::string summary_to_csv(const SummaryTable& table) {
  std::string out =
      "mechanism,type_pair,n_groups,n_beginner_obs,ee_message_rate,"
      "both_truthful_rate,beginner_truthful_rate,beginner_deceptive_rate,"
      "beginner_unanswered_rate,staffer_mean_payoff\n";
  for (const std::string& mech : table.mechanisms) {
    for (int pair = kPairBB; pair <= kPairAll; ++pair) {
      const SummaryCell& c = table.cells.at({mech, pair});
      out += mech + "," + type_pair_name(pair) + "," +
             std::to_string(c.n_groups) + "," +
             std::to_string(c.n_beginner_obs) + "," +
             opt_str(c.ee_message_rate) + "," +
             opt_str(c.both_truthful_rate) + "," +
             opt_str(c.beginner_truthful_rate) + "," +
             opt_str(c.beginner_deceptive_rate) + "," +
             opt_str(c.beginner_unanswered_rate) + "," +
             opt_str(c.staffer_mean_payoff) + "\n";
    }
  }
  return out;
}

ExpertClaimHistogram expert_claim_histogram(const SessionDataset& data) {
  ExpertClaimHistogram hist;
  std::map<std::pair<int, int>, int> periods;
  std::map<std::pair<int, int>, std::string> mech_of;
  for (const GroupObservation& obs : group_observations(data)) {
    for (int i = 0; i < 2; ++i) {
      const auto key = std::make_pair(obs.session, obs.subjects[i]);
      ++periods[key];
      mech_of[key] = obs.mechanism;
      if (obs.messages[i] == kExpert) ++hist.per_subject[key];
      else hist.per_subject.try_emplace(key, 0);
    }
  }
  for (const auto& [key, count] : periods) {
    if (count != 10) {
      throw std::invalid_argument(
          "subject " + std::to_string(key.second) + " in session " +
          std::to_string(key.first) + " has " + std::to_string(count) +
          " non-practice records, expected 10");
    }
  }
  for (const auto& [key, claims] : hist.per_subject) {
    auto [it, fresh] = hist.bins.try_emplace(mech_of[key]);
    if (fresh) it->second.fill(0);
    ++it->second[claims];
  }
  return hist;
}

std::string histogram_to_csv(const ExpertClaimHistogram& hist) {
  std::string out = "session,subject,expert_claims\n";
  for (const auto& [key, claims] : hist.per_subject) {
    out += std::to_string(key.first) + "," + std::to_string(key.second) +
           "," + std::to_string(claims) + "\n";
  }
  out += "\nmechanism,claims,subjects\n";
  for (const auto& [mech, bins] : hist.bins) {
    for (int b = 0; b <= 10; ++b) {
      out += mech + "," + std::to_string(b) + "," + std::to_string(bins[b]) +
             "\n";
    }
  }
  return out;
}

RegressionSpec RegressionSpec::table_model(int column) {
  RegressionSpec spec;
  switch (column) {
    case 1: spec.dependent = Dependent::kWorkerOptimalEq; break;
    case 2: spec.dependent = Dependent::kTruthfulEq; break;
    case 3: spec.dependent = Dependent::kDeceptiveAction; break;
    case 4: spec.dependent = Dependent::kTruthfulAction; break;
    case 5: spec.dependent = Dependent::kStafferProfit; break;
    case 6: spec.dependent = Dependent::kWorkersProfit; break;
    default:
      throw std::domain_error("table model column must be 1..6");
  }
  spec.type_pair_dummies = !spec.beginner_level();
  return spec;
}

std::string RegressionSpec::dependent_name() const {
  switch (dependent) {
    case Dependent::kWorkerOptimalEq: return "worker-optimal equilibrium";
    case Dependent::kTruthfulEq: return "truthful equilibrium";
    case Dependent::kDeceptiveAction: return "deceptive action";
    case Dependent::kTruthfulAction: return "truthful action";
    case Dependent::kStafferProfit: return "staffer profit";
    case Dependent::kWorkersProfit: return "workers' combined profit";
  }
  throw std::logic_error("bad dependent");
}

bool RegressionSpec::beginner_level() const {
  return dependent == Dependent::kDeceptiveAction ||
         dependent == Dependent::kTruthfulAction;
}

namespace {

const std::vector<std::string> kMechanismOrder = {"2x2-I", "2x2-E", "3x3-I",
                                                  "3x3-E"};

bool equilibrium_model(const RegressionSpec& spec) {
  return spec.dependent == RegressionSpec::Dependent::kWorkerOptimalEq ||
         spec.dependent == RegressionSpec::Dependent::kTruthfulEq;
}

}  // namespace

FitResult fit_lpm(const SessionDataset& data, const RegressionSpec& spec) {
  FitResult fit;
  fit.spec = spec;
  fit.names = {"constant"};
  for (size_t m = 1; m < kMechanismOrder.size(); ++m) {
    fit.names.push_back(kMechanismOrder[m] + " mechanism");
  }
  if (spec.type_pair_dummies) {
    fit.names.push_back(type_pair_name(kPairMixed));
    fit.names.push_back(type_pair_name(kPairEE));
  }
  const int k = static_cast<int>(fit.names.size());

  std::vector<std::vector<double>> X;
  std::vector<double> y;
  std::vector<int> clusters;
  const auto push_row = [&](const GroupObservation& obs, double dep) {
    std::vector<double> row(k, 0.0);
    row[0] = 1.0;
    for (size_t m = 1; m < kMechanismOrder.size(); ++m) {
      if (obs.mechanism == kMechanismOrder[m]) row[m] = 1.0;
    }
    if (spec.type_pair_dummies) {
      const int pair = obs.types[0] + obs.types[1];
      if (pair == 1) row[4] = 1.0;
      if (pair == 2) row[5] = 1.0;
    }
    X.push_back(std::move(row));
    y.push_back(dep);
    clusters.push_back(obs.session);
  };

  for (const GroupObservation& obs : group_observations(data)) {
    if (std::find(kMechanismOrder.begin(), kMechanismOrder.end(),
                  obs.mechanism) == kMechanismOrder.end()) {
      throw std::invalid_argument("unknown mechanism '" + obs.mechanism +
                                  "' in dataset");
    }
    switch (spec.dependent) {
      case RegressionSpec::Dependent::kWorkerOptimalEq:
      case RegressionSpec::Dependent::kTruthfulEq: {
        if (obs.outcome == OutcomeClass::kBoth && spec.exclude_censored) break;
        const bool wo = spec.dependent ==
                        RegressionSpec::Dependent::kWorkerOptimalEq;
        double dep = 0.0;
        if (obs.outcome == OutcomeClass::kBoth) {
          dep = 1.0;  // censored rows kept count for both equilibria
        } else if (wo && obs.outcome == OutcomeClass::kWorkerOptimalEq) {
          dep = 1.0;
        } else if (!wo && obs.outcome == OutcomeClass::kTruthfulEq) {
          dep = 1.0;
        }
        push_row(obs, dep);
        break;
      }
      case RegressionSpec::Dependent::kDeceptiveAction:
      case RegressionSpec::Dependent::kTruthfulAction: {
        const bool deceptive = spec.dependent ==
                               RegressionSpec::Dependent::kDeceptiveAction;
        for (int i = 0; i < 2; ++i) {
          if (obs.types[i] != kBeginner) continue;
          const int target = deceptive ? kExpert : kBeginner;
          push_row(obs, obs.messages[i] == target ? 1.0 : 0.0);
        }
        break;
      }
      case RegressionSpec::Dependent::kStafferProfit:
        push_row(obs, to_double(obs.staffer_payoff));
        break;
      case RegressionSpec::Dependent::kWorkersProfit:
        push_row(obs, to_double(obs.worker_payoffs[0] + obs.worker_payoffs[1]));
        break;
    }
  }
  if (X.empty()) {
    throw std::invalid_argument("fit_lpm: no usable observations");
  }
  fit.ols = fit_ols(X, y, clusters, fit.names);
  return fit;
}

std::vector<FitResult> fit_all_models(const SessionDataset& data) {
  std::vector<FitResult> fits;
  for (int column = 1; column <= 6; ++column) {
    fits.push_back(fit_lpm(data, RegressionSpec::table_model(column)));
  }
  return fits;
}

namespace {

std::string stars(double p) {
  if (p < 0.01) return "***";
  if (p < 0.05) return "**";
  if (p < 0.1) return "*";
  return "";
}

std::string fixed3(double v) {
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(3);
  os << v;
  return os.str();
}

// All regressor names across fits, constant last (table layout).
std::vector<std::string> merged_names(const std::vector<FitResult>& fits) {
  std::vector<std::string> names;
  for (const FitResult& fit : fits) {
    for (size_t j = 1; j < fit.names.size(); ++j) {
      if (std::find(names.begin(), names.end(), fit.names[j]) == names.end()) {
        names.push_back(fit.names[j]);
      }
    }
  }
  names.push_back("constant");
  return names;
}

int name_index(const FitResult& fit, const std::string& name) {
  const auto it = std::find(fit.names.begin(), fit.names.end(), name);
  return it == fit.names.end() ? -1
                               : static_cast<int>(it - fit.names.begin());
}

}  // namespace

std::string regression_table_csv(const std::vector<FitResult>& fits) {
  std::string out =
      "model,dependent,term,coefficient,std_error,p_value,n_obs,n_clusters,"
      "r_squared,log_likelihood\n";
  for (size_t m = 0; m < fits.size(); ++m) {
    const FitResult& fit = fits[m];
    for (size_t j = 0; j < fit.names.size(); ++j) {
      std::ostringstream os;
      os << m + 1 << "," << fit.spec.dependent_name() << "," << fit.names[j]
         << "," << fit.ols.coef[j] << "," << fit.ols.se[j] << ","
         << fit.ols.p_value[j] << "," << fit.ols.n_obs << ","
         << fit.ols.n_clusters << "," << fit.ols.r_squared << ","
         << fit.ols.log_likelihood << "\n";
      out += os.str();
    }
  }
  return out;
}

std::string regression_table_text(const std::vector<FitResult>& fits) {
  const std::vector<std::string> rows = merged_names(fits);
  const size_t n_models = fits.size();

  // Assemble cell text first, then align columns.
  std::vector<std::vector<std::string>> grid;
  std::vector<std::string> header = {"VARIABLES"};
  for (size_t m = 0; m < n_models; ++m) {
    header.push_back("(" + std::to_string(m + 1) + ")");
  }
  grid.push_back(header);
  std::vector<std::string> dep_row = {""};
  for (const FitResult& fit : fits) dep_row.push_back(fit.spec.dependent_name());
  grid.push_back(dep_row);

  for (const std::string& name : rows) {
    std::vector<std::string> coef_row = {name};
    std::vector<std::string> se_row = {""};
    for (const FitResult& fit : fits) {
      const int j = name_index(fit, name);
      if (j < 0) {
        coef_row.push_back("");
        se_row.push_back("");
      } else {
        coef_row.push_back(fixed3(fit.ols.coef[j]) +
                           stars(fit.ols.p_value[j]));
        se_row.push_back("(" + fixed3(fit.ols.se[j]) + ")");
      }
    }
    grid.push_back(coef_row);
    grid.push_back(se_row);
  }

  std::vector<std::string> n_row = {"Observations"};
  std::vector<std::string> r2_row = {"R-squared"};
  std::vector<std::string> ll_row = {"log likelihood"};
  for (const FitResult& fit : fits) {
    n_row.push_back(std::to_string(fit.ols.n_obs));
    r2_row.push_back(fixed3(fit.ols.r_squared));
    ll_row.push_back(fixed3(fit.ols.log_likelihood));
  }
  grid.push_back(n_row);
  grid.push_back(r2_row);
  grid.push_back(ll_row);

  std::vector<size_t> widths(n_models + 1, 0);
  for (const auto& row : grid) {
    for (size_t c = 0; c < row.size(); ++c) {
      widths[c] = std::max(widths[c], row[c].size());
    }
  }
  std::string out;
  for (const auto& row : grid) {
    std::string line;
    for (size_t c = 0; c < row.size(); ++c) {
      if (c == 0) {
        line += row[c] + std::string(widths[c] - row[c].size(), ' ');
      } else {
        line += "  " + std::string(widths[c] - row[c].size(), ' ') + row[c];
      }
    }
    while (!line.empty() && line.back() == ' ') line.pop_back();
    out += line + "\n";
  }
  out += "*** p<0.01, ** p<0.05, * p<0.1\n";
  return out;
}

namespace {

bool is_truthful_obs(int type, int message) { return message == type; }

struct SessionRates {
  std::string mechanism;
  double beginner = 0.0;
  double expert = 0.0;
  double all = 0.0;
};

}  // namespace

std::vector<RankTestEntry> rank_tests(const SessionDataset& data) {
  // Session-level truthful-action rates per scope.
  struct Acc {
    std::string mechanism;
    long long beg_n = 0, beg_t = 0, exp_n = 0, exp_t = 0;
  };
  std::map<int, Acc> sessions;
  for (const GroupObservation& obs : group_observations(data)) {
    Acc& a = sessions[obs.session];
    a.mechanism = obs.mechanism;
    for (int i = 0; i < 2; ++i) {
      const bool truthful = is_truthful_obs(obs.types[i], obs.messages[i]);
      if (obs.types[i] == kBeginner) {
        ++a.beg_n;
        if (truthful) ++a.beg_t;
      } else {
        ++a.exp_n;
        if (truthful) ++a.exp_t;
      }
    }
  }
  std::vector<SessionRates> rates;
  for (const auto& [id, a] : sessions) {
    SessionRates r;
    r.mechanism = a.mechanism;
    r.beginner = a.beg_n ? static_cast<double>(a.beg_t) / a.beg_n : 0.0;
    r.expert = a.exp_n ? static_cast<double>(a.exp_t) / a.exp_n : 0.0;
    const long long n = a.beg_n + a.exp_n;
    r.all = n ? static_cast<double>(a.beg_t + a.exp_t) / n : 0.0;
    rates.push_back(std::move(r));
  }

  const auto value_of = [](const SessionRates& r, const std::string& scope) {
    if (scope == "beginner") return r.beginner;
    if (scope == "expert") return r.expert;
    return r.all;
  };
  const auto is_explicit = [](const std::string& mech) {
    return mech.ends_with("-E");
  };
  const auto is_extended = [](const std::string& mech) {
    return mech.starts_with("3x3");
  };

  std::vector<RankTestEntry> out;
  for (const std::string scope : {"beginner", "expert", "all"}) {
    // Kruskal-Wallis across all mechanisms present.
    std::map<std::string, std::vector<double>> by_mech;
    for (const SessionRates& r : rates) {
      by_mech[r.mechanism].push_back(value_of(r, scope));
    }
    std::vector<std::vector<double>> groups;
    for (const auto& [mech, vals] : by_mech) {
      if (vals.size() < 2) {
        throw std::invalid_argument("rank_tests: mechanism " + mech +
                                    " has fewer than two sessions");
      }
      groups.push_back(vals);
    }
    if (groups.size() < 2) {
      throw std::invalid_argument("rank_tests: need at least two mechanisms");
    }
    out.push_back({scope, "all-mechanisms", kruskal_wallis(groups)});

    for (const std::string comparison :
         {"direct-vs-extended", "implicit-vs-explicit"}) {
      std::vector<double> a, b;
      for (const SessionRates& r : rates) {
        const bool second = comparison == "direct-vs-extended"
                                ? is_extended(r.mechanism)
                                : is_explicit(r.mechanism);
        (second ? b : a).push_back(value_of(r, scope));
      }
      if (a.size() < 2 || b.size() < 2) {
        throw std::invalid_argument("rank_tests: " + comparison +
                                    " group has fewer than two sessions");
      }
      out.push_back({scope, comparison, mann_whitney(a, b)});
    }
  }
  return out;
}

std::string rank_tests_to_csv(const std::vector<RankTestEntry>& entries) {
  std::string out = "scope,comparison,statistic,p_value,exact\n";
  for (const RankTestEntry& e : entries) {
    std::ostringstream os;
    os << e.scope << "," << e.comparison << "," << e.result.statistic << ","
       << e.result.p_value << "," << (e.result.exact ? "1" : "0") << "\n";
    out += os.str();
  }
  return out;
}

}  // namespace hirelab
