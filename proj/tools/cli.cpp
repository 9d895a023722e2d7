// Copyright 2026 The cogmarket Authors.
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

#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "cogmarket/experiment.hpp"
#include "cogmarket/scenario.hpp"
#include "cogmarket/serialize.hpp"
#include "cogmarket/verification.hpp"

namespace cogmarket {

namespace {

constexpr const char* kOutputDirEnv = "COGMARKET_OUTPUT_DIR";

struct CommonFlags {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<int> trials;
  std::string out;
  std::string format = "csv";
  std::string mechanisms;
  std::string pu_metric = "free";
};

void add_common(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--config", f.config, "Scenario JSON file")->check(CLI::ExistingFile);
  cmd->add_option("--seed", f.seed, "Master seed (overrides config)");
  cmd->add_option("--trials", f.trials, "Number of trials (overrides config)")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--out", f.out, "Output file; stdout when omitted");
  cmd->add_option("--format", f.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}));
}

ScenarioConfig load_config(const CommonFlags& f) {
  ScenarioConfig config = f.config.empty() ? ScenarioConfig{} : load_scenario(f.config);
  if (f.seed) config.seed = *f.seed;
  if (f.trials) config.trials = *f.trials;
  config.validate();
  return config;
}

std::vector<Mechanism> load_mechanisms(const CommonFlags& f) {
  return f.mechanisms.empty() ? all_mechanisms() : parse_mechanism_list(f.mechanisms);
}

PuMetric load_pu_metric(const CommonFlags& f) {
  return f.pu_metric == "self" ? PuMetric::kSelfMatched : PuMetric::kInterferenceFree;
}

std::filesystem::path resolve_output(const std::string& path) {
  std::filesystem::path p(path);
  if (const char* dir = std::getenv(kOutputDirEnv); dir != nullptr && *dir != '\0' &&
                                                    p.is_relative())
    p = std::filesystem::path(dir) / p;
  return p;
}

// Writes through `write` into --out (or `out` when empty).
template <typename Writer>
void emit(const std::string& path, std::ostream& out, Writer&& write) {
  if (path.empty()) {
    write(out);
    return;
  }
  const auto target = resolve_output(path);
  if (target.has_parent_path()) std::filesystem::create_directories(target.parent_path());
  std::ofstream file(target, std::ios::binary);
  if (!file) throw std::runtime_error("cannot open output file: " + target.string());
  write(file);
  if (!file) throw std::runtime_error("failed writing output file: " + target.string());
}

std::vector<double> parse_values(const std::string& text) {
  std::vector<double> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size())
      throw std::invalid_argument("invalid --values entry: '" + item + "'");
    values.push_back(v);
  }
  if (values.empty()) throw std::invalid_argument("--values must not be empty");
  return values;
}

int do_run(const CommonFlags& f, const std::string& detail_path, std::ostream& out) {
  const ScenarioConfig config = load_config(f);
  const auto mechanisms = load_mechanisms(f);
  ExperimentOptions options;
  options.pu_metric = load_pu_metric(f);
  std::ofstream detail;
  if (!detail_path.empty()) {
    const auto target = resolve_output(detail_path);
    if (target.has_parent_path()) std::filesystem::create_directories(target.parent_path());
    detail.open(target, std::ios::binary);
    if (!detail) throw std::runtime_error("cannot open detail file: " + target.string());
    options.record_auction_history = true;
    options.observer = [&detail](const TrialDetail& d) {
      detail << trial_detail_json(d) << '\n';
    };
  }
  const auto records = run_experiment(config, mechanisms, options);
  emit(f.out, out, [&](std::ostream& o) {
    if (f.format == "json")
      write_records_jsonl(o, records);
    else
      write_records_csv(o, records);
  });
  return 0;
}

int do_sweep(const CommonFlags& f, const std::string& axis_name, const std::string& values_text,
             std::optional<double> channels_per_su, std::ostream& out) {
  const ScenarioConfig config = load_config(f);
  const SweepAxis axis = parse_sweep_axis(axis_name);
  const auto values = parse_values(values_text);
  ExperimentOptions options;
  options.pu_metric = load_pu_metric(f);
  const auto rows = sweep(config, axis, values, load_mechanisms(f), options, channels_per_su);
  emit(f.out, out, [&](std::ostream& o) {
    if (f.format == "json")
      write_aggregate_jsonl(o, rows);
    else
      write_aggregate_csv(o, rows);
  });
  return 0;
}

int do_region(const CommonFlags& f, std::ostream& out) {
  const auto points = region_boundary(load_config(f));
  emit(f.out, out, [&](std::ostream& o) {
    if (f.format == "json")
      write_region_jsonl(o, points);
    else
      write_region_csv(o, points);
  });
  return 0;
}

int do_verify(std::uint64_t seed, int instances, std::ostream& out) {
  const auto report = run_invariant_suite({seed, instances});
  int passed = 0;
  int gating = 0;
  for (const auto& r : report.results) {
    const char* tag = r.passed() ? "PASS " : (r.gating ? "FAIL " : "INFO ");
    out << tag << r.name << " (" << r.cases - r.failures << '/'
        << r.cases << ")\n";
    if (r.gating) {
      ++gating;
      passed += r.passed() ? 1 : 0;
    }
  }
  out << passed << '/' << gating << " invariants passed\n";
  return report.all_passed() ? 0 : 1;
}

}  // namespace

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Spectrum assignment simulator: stable matching and English auction"};
  app.name("cogmarket");
  app.require_subcommand(1);

  CommonFlags run_flags;
  std::string detail_path;
  auto* run = app.add_subcommand("run", "Run one Monte-Carlo experiment");
  add_common(run, run_flags);
  run->add_option("--mechanisms", run_flags.mechanisms,
                  "Comma list of stable-matching,english-auction,hungarian,random");
  run->add_option("--pu-metric", run_flags.pu_metric, "PU rate of unassigned channels")
      ->check(CLI::IsMember({"free", "self"}));
  run->add_option("--detail", detail_path, "Per-trial matchings and auction traces (JSONL)");

  CommonFlags sweep_flags;
  std::string axis;
  std::string values;
  std::optional<double> channels_per_su;
  auto* sw = app.add_subcommand("sweep", "Aggregate metrics over one swept parameter");
  add_common(sw, sweep_flags);
  sw->add_option("--mechanisms", sweep_flags.mechanisms, "Comma-separated mechanism list");
  sw->add_option("--pu-metric", sweep_flags.pu_metric, "PU rate of unassigned channels")
      ->check(CLI::IsMember({"free", "self"}));
  sw->add_option("--axis", axis, "snr_db, alpha, K or quota")->required();
  sw->add_option("--values", values, "Comma-separated axis values")->required();
  sw->add_option("--l-per-k", channels_per_su, "Keep L = ratio * K when sweeping K")
      ->check(CLI::PositiveNumber);

  CommonFlags region_flags;
  auto* region = app.add_subcommand("region", "Sum-rate region boundary over lambda");
  add_common(region, region_flags);

  std::uint64_t verify_seed = 7;
  int verify_instances = 200;
  auto* verify = app.add_subcommand("verify", "Run the randomized invariant suite");
  verify->add_option("--seed", verify_seed, "Seed for the random instances");
  verify->add_option("--trials", verify_instances, "Instances per invariant")
      ->check(CLI::PositiveNumber);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }

  try {
    if (run->parsed()) return do_run(run_flags, detail_path, out);
    if (sw->parsed()) return do_sweep(sweep_flags, axis, values, channels_per_su, out);
    if (region->parsed()) return do_region(region_flags, out);
    return do_verify(verify_seed, verify_instances, out);
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace cogmarket
