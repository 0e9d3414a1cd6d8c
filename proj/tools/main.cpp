#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>
#include <json.hpp>

#include "hyperreal/demos.hpp"
#include "hyperreal/scenario.hpp"
#include "hyperreal/taxonomy.hpp"

namespace fs = std::filesystem;
using hyperreal::Error;
using hyperreal::ErrorCode;

namespace {

enum Exit { kOk = 0, kUsage = 1, kInput = 2, kFault = 3 };

nlohmann::json read_json(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ScenarioError, "cannot read '" + path.string() + "'");
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::ScenarioError, path.string() + ": " + e.what());
  }
}

void write_json(const fs::path& path, const nlohmann::json& doc) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::ScenarioError, "cannot write '" + path.string() + "'");
  out << doc.dump(2) << '\n';
}

int report_faults(const hyperreal::RunSummary& summary) {
  for (const auto& f : summary.faults) {
    std::string kind(hyperreal::script::to_string(f.kind));
    if (f.cause) kind += "(" + std::string(hyperreal::to_string(*f.cause)) + ")";
    std::fprintf(stderr, "t=%.9g object %u %s:%d:%d: %s: %s\n", f.time, f.object.value, f.event.c_str(), f.loc.line,
                 f.loc.column, kind.c_str(), f.message.c_str());
  }
  return summary.faults.empty() ? kOk : kFault;
}

hyperreal::RunSummary simulate(const hyperreal::Scenario& scenario, const fs::path& csv_path, std::uint64_t sample_every,
                               hyperreal::DemoProbe* probe) {
  std::ofstream csv(csv_path);
  if (!csv) throw Error(ErrorCode::ScenarioError, "cannot write '" + csv_path.string() + "'");
  hyperreal::Simulation sim = hyperreal::build_simulation(scenario);
  hyperreal::RunOptions options;
  options.sample_every = sample_every;
  options.csv = &csv;
  if (probe) {
    probe->start(sim);
    options.observer = [probe](const hyperreal::Simulation& s, const hyperreal::StepReport& r) { probe->observe(s, r); };
  }
  return hyperreal::run(sim, scenario, options);
}

int cmd_run(const fs::path& file, const fs::path& out, std::uint64_t sample_every, std::optional<std::uint64_t> seed) {
  hyperreal::Scenario scenario = hyperreal::load_scenario(file);
  if (seed) hyperreal::apply_seed(scenario, *seed);
  const hyperreal::RunSummary summary = simulate(scenario, out, sample_every, nullptr);
  nlohmann::json doc = hyperreal::to_json(summary);
  doc["scenario"] = scenario.name;
  fs::path summary_path = out;
  summary_path += ".summary.json";
  write_json(summary_path, doc);
  std::printf("%s: %llu steps, t=%.9g s, %zu collisions, mean dilation %.9g\n", scenario.name.c_str(),
              static_cast<unsigned long long>(summary.steps), summary.sim_time, summary.collisions,
              summary.mean_dilation);
  return report_faults(summary);
}

int cmd_demo(const std::string& name, const std::string& law, const fs::path& dir, std::uint64_t seed,
             std::uint64_t sample_every) {
  std::optional<hyperreal::LawKind> kind;
  if (!law.empty()) kind = hyperreal::parse_law_kind(law);
  hyperreal::Scenario scenario = hyperreal::demo_scenario(name, kind, seed);
  auto probe = hyperreal::make_probe(name);
  if (sample_every == 0) sample_every = name == "brownian" ? 45 : 1;
  fs::create_directories(dir);
  const hyperreal::RunSummary summary = simulate(scenario, dir / (name + ".csv"), sample_every, probe.get());
  nlohmann::json doc = hyperreal::to_json(summary);
  doc["scenario"] = scenario.name;
  doc["law"] = std::string(hyperreal::to_string(scenario.region.default_law.kind));
  doc["seed"] = seed;
  doc["demo"] = probe->extras();
  write_json(dir / (name + "_summary.json"), doc);
  std::printf("%s\n", doc["demo"].dump().c_str());
  return report_faults(summary);
}

int cmd_classify(const fs::path& file, bool as_json) {
  const hyperreal::taxonomy::EnvironmentProfile profile = hyperreal::taxonomy::profile_from_json(read_json(file));
  const hyperreal::taxonomy::Verdict verdict = hyperreal::taxonomy::classify(profile);
  if (as_json) {
    std::printf("%s\n", hyperreal::taxonomy::to_json(verdict).dump(2).c_str());
  } else {
    std::printf("%s", hyperreal::taxonomy::format_report(verdict).c_str());
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hyperreal: scriptable virtual-world physics microworld"};
  app.require_subcommand(1);

  fs::path run_file;
  fs::path run_out;
  std::uint64_t run_every = 1;
  std::optional<std::uint64_t> seed;
  auto* run = app.add_subcommand("run", "Run a scenario file and write a trajectory CSV");
  run->add_option("file", run_file, "Scenario JSON")->required();
  run->add_option("--out", run_out, "Trajectory CSV path (summary goes to <out>.summary.json)")->required();
  run->add_option("--sample-every", run_every, "Write one row per object every N steps")
      ->check(CLI::PositiveNumber);
  run->add_option("--seed", seed, "Override the scenario seed");

  fs::path profile_file;
  bool as_json = false;
  auto* classify = app.add_subcommand("classify", "Classify an environment profile under both rubrics");
  classify->add_option("file", profile_file, "Profile JSON")->required();
  classify->add_flag("--json", as_json, "Print the verdict as JSON");

  std::string demo_name;
  std::string demo_law;
  fs::path demo_out = "out";
  std::uint64_t demo_seed = 1;
  std::uint64_t demo_every = 0;
  auto* demo = app.add_subcommand("demo", "Run a bundled demo");
  demo->add_option("name", demo_name, "freefall, buoyancy, airtrack, bumpers, cannon or brownian")->required();
  demo->add_option("--law", demo_law, "newtonian, impetus or aristotelian");
  demo->add_option("--out", demo_out, "Output directory");
  demo->add_option("--seed", demo_seed, "Random seed");
  demo->add_option("--sample-every", demo_every, "Write one row per object every N steps");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*run) return cmd_run(run_file, run_out, run_every, seed);
    if (*classify) return cmd_classify(profile_file, as_json);
    if (*demo) return cmd_demo(demo_name, demo_law, demo_out, demo_seed, demo_every);
  } catch (const hyperreal::script::ScriptError& e) {
    std::fprintf(stderr, "%s\n", e.format("script").c_str());
    return kInput;
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kInput;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kInput;
  }
  return kUsage;
}
