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

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "hirelab/analysis.hpp"
#include "hirelab/behavior.hpp"
#include "hirelab/dataset.hpp"
#include "hirelab/equilibrium.hpp"
#include "hirelab/mechanism.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitDomain = 1;
constexpr int kExitUsage = 2;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << content;
  if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

hirelab::Mechanism load_mechanism(const std::string& name,
                                  const std::string& file) {
  if (!file.empty()) return hirelab::mechanism_from_json(read_file(file));
  return hirelab::builtin_mechanism(name);
}

int cmd_show_mechanism(const std::string& name, const std::string& file) {
  const hirelab::Mechanism mech = load_mechanism(name, file);
  std::cout << hirelab::render_table(mech);
  return kExitOk;
}

int cmd_equilibria(const std::string& name, const std::string& file,
                   const std::string& format, int threads) {
  const hirelab::Mechanism mech = load_mechanism(name, file);
  const hirelab::Environment env = hirelab::paper_environment();
  hirelab::EnumerationOptions options;
  options.threads = threads;
  const auto reports =
      hirelab::enumerate_ex_post_equilibria(env, mech, options);
  if (format == "csv") {
    std::cout << hirelab::equilibria_to_csv(env, mech, reports);
  } else {
    std::cout << hirelab::equilibria_to_text(env, mech, reports);
  }
  return kExitOk;
}

int cmd_simulate(const std::string& config_path, std::uint64_t seed,
                 const std::string& out_path, int threads) {
  const hirelab::ExperimentConfig config =
      hirelab::experiment_config_from_json(read_file(config_path));
  const hirelab::SessionDataset data =
      hirelab::run_experiment(config, seed, threads);
  write_file(out_path, hirelab::dataset_to_csv(data));

  nlohmann::json meta;
  meta["seed"] = seed;
  meta["config"] = nlohmann::json::parse(data.config_echo);
  write_file(out_path + ".meta.json", meta.dump(2) + "\n");

  int subjects = 0;
  for (const hirelab::SessionSpec& s : config.grid) subjects += s.n_subjects;
  std::cout << "seed: " << seed << "\n"
            << "sessions: " << config.grid.size() << "\n"
            << "subjects: " << subjects << "\n"
            << "records: " << data.records.size() << "\n"
            << "wrote: " << out_path << "\n";
  return kExitOk;
}

int cmd_analyze(const std::string& data_path, const std::string& model,
                const std::string& out_prefix) {
  const hirelab::SessionDataset data =
      hirelab::dataset_from_csv(read_file(data_path));

  std::vector<int> columns;
  if (model == "eq-wo") columns = {1};
  else if (model == "eq-truth") columns = {2};
  else if (model == "action") columns = {3, 4};
  else if (model == "profit") columns = {5, 6};
  else columns = {1, 2, 3, 4, 5, 6};

  std::vector<hirelab::FitResult> fits;
  for (const int c : columns) {
    fits.push_back(
        hirelab::fit_lpm(data, hirelab::RegressionSpec::table_model(c)));
  }
  const std::string text = hirelab::regression_table_text(fits);
  std::cout << text;

  const auto summary = hirelab::summary_rates(data);
  const auto tests = hirelab::rank_tests(data);
  std::string histogram_csv;
  try {
    histogram_csv = hirelab::histogram_to_csv(
        hirelab::expert_claim_histogram(data));
  } catch (const std::invalid_argument& e) {
    std::cerr << "note: expert-claim histogram skipped: " << e.what() << "\n";
  }

  if (!out_prefix.empty()) {
    write_file(out_prefix + "_regressions.csv",
               hirelab::regression_table_csv(fits));
    write_file(out_prefix + "_regressions.txt", text);
    write_file(out_prefix + "_summary.csv", hirelab::summary_to_csv(summary));
    write_file(out_prefix + "_rank_tests.csv",
               hirelab::rank_tests_to_csv(tests));
    if (!histogram_csv.empty()) {
      write_file(out_prefix + "_histogram.csv", histogram_csv);
    }
    std::cout << "wrote: " << out_prefix << "_*.csv\n";
  }
  return kExitOk;
}

int cmd_verify_prop1(int trials, std::uint64_t seed) {
  const hirelab::CompositionSuiteResult result =
      hirelab::run_proposition1_suite(trials, seed);
  for (const std::string& note : result.notes) {
    std::cout << note << "\n";
  }
  const int ok = result.trials - result.theorem_violations;
  if (result.theorem_violations == 0) {
    std::cout << "PASS, " << ok << "/" << result.trials << "\n";
    return kExitOk;
  }
  std::cout << "FAIL, " << ok << "/" << result.trials << "\n";
  return kExitDomain;
}

int cmd_report() {
  const hirelab::Environment env = hirelab::paper_environment();
  for (const std::string& name : hirelab::builtin_mechanism_names()) {
    const hirelab::Mechanism mech = hirelab::builtin_mechanism(name);
    std::cout << hirelab::render_table(mech) << "\n";
    const auto reports = hirelab::enumerate_ex_post_equilibria(env, mech);
    int dominant = 0;
    for (const auto& r : reports) dominant += r.dominant_strategy ? 1 : 0;
    std::cout << "ex-post equilibria: " << reports.size()
              << " (dominant-strategy: " << dominant << ")\n\n";
  }
  std::cout << "designer target strategy-proof: "
            << (hirelab::is_strategy_proof(env, hirelab::principal_scf())
                    ? "yes"
                    : "no")
            << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Workbench for finite private-value mechanism design"};
  app.require_subcommand(1);

  std::string name = "2x2-I";
  std::string file;
  std::string format = "text";
  std::string config_path;
  std::string data_path;
  std::string out_path = "dataset.csv";
  std::string out_prefix;
  std::string model = "all";
  std::uint64_t seed = 0;
  int threads = 1;
  int trials = 200;

  auto* show = app.add_subcommand("show-mechanism",
                                  "Render a mechanism's outcome table");
  auto* show_name = show->add_option("--name", name, "Built-in mechanism");
  auto* show_file = show->add_option("--file", file, "Mechanism JSON file");
  show_name->excludes(show_file);

  auto* eq = app.add_subcommand("equilibria",
                                "Enumerate pure ex-post equilibria");
  eq->add_option("--name", name, "Built-in mechanism");
  eq->add_option("--file", file, "Mechanism JSON file");
  eq->add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"csv", "text"}));
  eq->add_option("--threads", threads, "Worker threads")
      ->check(CLI::PositiveNumber);

  auto* sim = app.add_subcommand("simulate",
                                 "Simulate experimental sessions");
  sim->add_option("--config", config_path, "Experiment config JSON")
      ->required();
  sim->add_option("--seed", seed, "Master seed");
  sim->add_option("--out", out_path, "Output CSV path");
  sim->add_option("--threads", threads, "Worker threads")
      ->check(CLI::PositiveNumber);

  auto* analyze = app.add_subcommand("analyze",
                                     "Regressions and summaries on a dataset");
  analyze->add_option("--data", data_path, "Dataset CSV")->required();
  analyze->add_option("--model", model, "Regression selection")
      ->check(CLI::IsMember({"eq-wo", "eq-truth", "action", "profit", "all"}));
  analyze->add_option("--out", out_prefix, "Output file prefix");

  auto* prop1 = app.add_subcommand(
      "verify-prop1", "Randomized composition-theorem verification");
  prop1->add_option("--trials", trials, "Number of trials")
      ->check(CLI::PositiveNumber);
  prop1->add_option("--seed", seed, "Suite seed");

  auto* report = app.add_subcommand(
      "report", "Overview of the built-in mechanisms and equilibria");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (show->parsed()) return cmd_show_mechanism(name, file);
    if (eq->parsed()) return cmd_equilibria(name, file, format, threads);
    if (sim->parsed()) return cmd_simulate(config_path, seed, out_path, threads);
    if (analyze->parsed()) return cmd_analyze(data_path, model, out_prefix);
    if (prop1->parsed()) return cmd_verify_prop1(trials, seed);
    if (report->parsed()) return cmd_report();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDomain;
  }
  return kExitUsage;
}
