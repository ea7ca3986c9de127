// Copyright 2026 the hetnet-egt authors
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


// Experiment runner command line.
//
// Exit codes: 0 success, 1 usage or configuration error, 2 validation
// failure, 3 numeric failure.

#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "hetnet/config_io.hpp"
#include "hetnet/experiments.hpp"

namespace {

enum Exit { kOk = 0, kUsage = 1, kValidation = 2, kNumeric = 3 };

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Heterogeneous sub-6 GHz / mmWave network studies"};
  std::string config_path;
  std::string experiment;
  std::vector<std::string> sets;
  std::vector<std::string> sweeps;
  std::optional<std::uint64_t> seed;
  std::string out_dir = "out";
  std::string budget = "fast";
  bool print_config = false;

  std::string ids;
  for (auto id : hetnet::all_experiments()) ids += (ids.empty() ? "" : ", ") + std::string(hetnet::experiment_name(id));

  app.add_option("--config", config_path, "key = value configuration file")->check(CLI::ExistingFile);
  app.add_option("--experiment", experiment, "one of: " + ids)->required();
  app.add_option("--set", sets, "override, section.key=value (repeatable)");
  app.add_option("--sweep", sweeps, "axis override, name=first:last:steps or name=v1,v2 (repeatable)");
  app.add_option("--seed", seed, "master seed (network.seed)");
  app.add_option("--out", out_dir, "output directory");
  app.add_option("--budget", budget, "fast or full")->check(CLI::IsMember({"fast", "full"}));
  app.add_flag("--print-config", print_config, "print the effective configuration and exit");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    const auto id = hetnet::parse_experiment(experiment);
    if (!id) throw hetnet::UsageError("unknown experiment '" + experiment + "' (expected " + ids + ")");

    hetnet::KeyValues kv;
    if (!config_path.empty()) kv = hetnet::load_key_values(config_path);
    // Experiment presets sit between the file and explicit overrides.
    for (const auto& [key, value] : hetnet::preset_overrides(*id))
      if (!kv.count(key)) kv[key] = value;
    for (const auto& s : sets) hetnet::apply_override(kv, s);
    if (seed) kv["network.seed"] = std::to_string(*seed);
    const auto cfg = hetnet::build_config(kv);

    if (print_config) {
      std::cout << hetnet::to_config_text(cfg);
      return kOk;
    }

    hetnet::ExperimentSpec spec;
    spec.id = *id;
    spec.output_dir = out_dir;
    spec.seed = cfg.seed;
    spec.budget = budget == "full" ? hetnet::Budget::full : hetnet::Budget::fast;
    for (const auto& s : sweeps) spec.axes.push_back(hetnet::parse_sweep(s));
    hetnet::check_spec(spec);

    const auto result = hetnet::run_experiment(spec, cfg);
    for (const auto& f : result.files) std::cout << f.string() << '\n';
    if (result.validation_failed) {
      std::cerr << "validation failed; see " << result.manifest.string() << '\n';
      return kValidation;
    }
    return kOk;
  } catch (const hetnet::ConfigError& e) {
    std::cerr << e.what() << '\n';
    return kUsage;
  } catch (const hetnet::UsageError& e) {
    std::cerr << "usage: " << e.what() << '\n';
    return kUsage;
  } catch (const hetnet::DomainError& e) {
    std::cerr << "invalid parameters: " << e.what() << '\n';
    return kUsage;
  } catch (const hetnet::NumericError& e) {
    std::cerr << "numeric failure: " << e.what() << '\n';
    return kNumeric;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kNumeric;
  }
}
