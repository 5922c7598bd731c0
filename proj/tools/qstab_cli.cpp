// Copyright 2026 The qstab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// qstab <experiment> [--key value ...] [--config file] [--out path]
//
// Precedence: command-line flags > config file > experiment defaults.
// Without --out the CSV goes to stdout.

#include <exception>
#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"
#include "qstab/config.hpp"
#include "qstab/csv.hpp"
#include "qstab/experiments.hpp"

namespace {

const char* describe_key(const std::string& key) {
  static const std::map<std::string, const char*> help{
      {"j", "spin quantum number (half-integer)"},
      {"beta", "torsion control parameter"},
      {"p", "kick rotation angle (accepts pi/2 etc.)"},
      {"tau", "kick period"},
      {"epsilon", "classical perturbation of beta (fig1a, fig1b)"},
      {"alpha", "environment coupling"},
      {"theta", "polar angle of the initial coherent state"},
      {"phi", "azimuth of the initial coherent state"},
      {"d", "qubit amplitude on |0>, first environment (markov: a = d^2)"},
      {"d_prime", "qubit amplitude on |0>, second environment"},
      {"n_kicks", "number of kicks (bounds-table: Markov step count)"},
      {"grid", "phi grid size (fig1b) or a-grid size (bounds-table)"},
      {"c", "oscillator amplitudes, comma separated"},
      {"c_prime", "second oscillator amplitudes"},
      {"alphas", "alpha values for alpha-sweep"},
      {"threshold", "fidelity threshold for alpha-sweep, in (0, 1)"},
  };
  const auto it = help.find(key);
  return it == help.end() ? "" : it->second;
}

struct Invocation {
  std::map<std::string, std::string> flags;
  std::string config_path;
  std::string out_path;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fidelity decay of the kicked top with a quantized control parameter"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string("qstab ") + QSTAB_VERSION);

  std::map<std::string, Invocation> invocations;
  for (auto e : qstab::cli::all_experiments()) {
    const std::string name(qstab::cli::experiment_name(e));
    auto& inv = invocations[name];
    CLI::App* sub = app.add_subcommand(name, "run the " + name + " experiment");
    for (const auto& key : qstab::cli::config_keys()) {
      sub->add_option("--" + key, inv.flags[key], describe_key(key));
    }
    sub->add_option("--config", inv.config_path, "flat key = value file");
    sub->add_option("--out", inv.out_path, "output CSV path (default: stdout)");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    for (auto* sub : app.get_subcommands()) {
      const auto experiment = *qstab::cli::parse_experiment(sub->get_name());
      const Invocation& inv = invocations.at(sub->get_name());
      qstab::cli::ExperimentConfig cfg = qstab::cli::default_config(experiment);
      if (!inv.config_path.empty()) qstab::cli::apply_config_file(cfg, inv.config_path);
      for (const auto& key : qstab::cli::config_keys()) {
        if (sub->count("--" + key) > 0) qstab::cli::apply_setting(cfg, key, inv.flags.at(key));
      }
      const qstab::cli::CsvTable table = qstab::cli::run_experiment(cfg);
      if (inv.out_path.empty()) {
        std::cout << table.render();
      } else {
        qstab::cli::write_csv(table, inv.out_path);
      }
    }
  } catch (const std::exception& e) {
    std::cerr << "qstab: error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
