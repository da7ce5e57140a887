// Command-line front end: validate and run scenarios, analyze process nets,
// export graphs, and fuzz fault schedules.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "reconet/analysis.hpp"
#include "reconet/errors.hpp"
#include "reconet/fuzz.hpp"
#include "reconet/json_io.hpp"
#include "reconet/semantics.hpp"
#include "reconet/simenv.hpp"

namespace {

enum class LogLevel { Quiet, Info, Debug };

LogLevel log_level() {
  const char* env = std::getenv("RECONET_LOG");
  if (!env) return LogLevel::Info;
  std::string value = env;
  if (value == "quiet") return LogLevel::Quiet;
  if (value == "debug") return LogLevel::Debug;
  return LogLevel::Info;
}

void log_debug(const std::string& message) {
  if (log_level() == LogLevel::Debug) {
    std::cerr << "[reconet] " << message << "\n";
  }
}

int write_output(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    std::cerr << "error: cannot write '" << path << "'\n";
    return 1;
  }
  out << content;
  return 0;
}

int cmd_run(const std::string& path, std::optional<int> heartbeat_limit,
            std::optional<int> polling_interval,
            const std::optional<std::string>& out_path) {
  reconet::ScenarioConfig config = reconet::load_scenario_file(path);
  if (heartbeat_limit) {
    config.policy.heartbeat_limit = *heartbeat_limit;
    reconet::validate_policy(config.policy);
  }
  if (polling_interval) {
    config.polling.interval_ticks = *polling_interval;
    reconet::validate_polling(config.polling);
  }
  log_debug("running scenario '" + config.name + "'");
  reconet::SimTrace trace = reconet::run(config);
  std::cout << trace.rendered();
  if (out_path) {
    int rc = write_output(*out_path, trace.rendered());
    if (rc != 0) return rc;
  }
  return trace.exit_code();
}

int cmd_validate(const std::string& path) {
  reconet::ScenarioConfig config = reconet::load_scenario_file(path);
  reconet::Net flat = reconet::flatten(config.process);
  int bound_services = 0;
  for (const auto& entry : config.services) {
    const std::string& id = entry.descriptor.id;
    for (const auto& [tid, t] : flat.transitions()) {
      if (tid == id || (tid.size() > id.size() + 1 &&
                        tid.compare(tid.size() - id.size() - 1, id.size() + 1,
                                    "/" + id) == 0)) {
        ++bound_services;
        break;
      }
    }
  }
  std::cout << "scenario '" << config.name << "': OK\n"
            << "services: " << config.services.size() << " (bound to the net: "
            << bound_services << ")\n"
            << "process: " << flat.places().size() << " places, "
            << flat.transitions().size() << " transitions (flattened)\n"
            << "rules: " << config.rules.size() << "\n"
            << "faults: " << config.fault_schedule.size() << "\n";
  return 0;
}

int cmd_analyze(const std::string& path, std::size_t bound) {
  reconet::ScenarioConfig config = reconet::load_scenario_file(path);
  reconet::Net flat = reconet::flatten(config.process);
  reconet::Marking initial;
  initial.add(flat.input_place(), reconet::kPlainLabel);

  reconet::ReachabilitySet set = reconet::reachable(flat, initial, bound);
  std::cout << "reachable markings: " << set.markings.size()
            << (set.truncated ? " (truncated)" : " (complete)") << "\n";

  try {
    reconet::ConsistencyResult consistency =
        reconet::check_consistency(flat, initial, bound);
    std::cout << "consistency: "
              << (consistency.consistent ? "true" : "false");
    if (consistency.consistent) {
      std::cout << " (witness length " << consistency.witness.size() << ")";
    }
    std::cout << "\n";
  } catch (const reconet::BoundExceeded&) {
    std::cout << "consistency: indeterminate (bound " << bound
              << " exceeded)\n";
  }

  reconet::Safety safety =
      reconet::classify_safety(flat, initial, config.unsafe);
  std::cout << "safety: "
            << (safety == reconet::Safety::Safe ? "Safe" : "Unsafe") << "\n";
  return 0;
}

int cmd_export(const std::string& path, const std::string& format,
               bool templates, const std::optional<std::string>& out_path) {
  if (format != "dot" && format != "json") {
    std::cerr << "error: unknown format '" << format << "' (dot|json)\n";
    return 1;
  }
  reconet::ScenarioConfig config = reconet::load_scenario_file(path);
  reconet::Net flat = reconet::flatten(config.process);

  std::string content;
  if (format == "dot") {
    content = reconet::export_dot(flat);
    if (templates) {
      content += reconet::export_dot(reconet::nonfunctional_template().net,
                                     reconet::nonfunctional_template().initial);
      content += reconet::export_dot(reconet::functional_template().net,
                                     reconet::functional_template().initial);
    }
  } else {
    if (templates) {
      content += "{\"process\":" + reconet::net_to_json(flat) +
                 ",\"templates\":{\"nonfunctional\":" +
                 reconet::net_to_json(reconet::nonfunctional_template().net) +
                 ",\"functional\":" +
                 reconet::net_to_json(reconet::functional_template().net) +
                 "}}";
    } else {
      content = reconet::net_to_json(flat);
    }
    content += "\n";
  }

  if (out_path) return write_output(*out_path, content);
  std::cout << content;
  return 0;
}

int cmd_fuzz(const std::string& path, int count, unsigned long long seed) {
  reconet::ScenarioConfig config = reconet::load_scenario_file(path);
  reconet::FuzzReport report = reconet::fuzz_scenario(config, count, seed);
  if (report.ok()) {
    std::cout << "fuzz: " << report.runs << " runs, no invariant violations\n";
    return 0;
  }
  std::cerr << "fuzz: " << report.violations.size() << "/" << report.runs
            << " runs violated invariants (seed " << seed << ")\n";
  for (const auto& v : report.violations) {
    std::cerr << "schedule " << v.schedule_index << ": " << v.message << "\n"
              << "minimized reproducer:\n"
              << reconet::describe_schedule(v.schedule);
  }
  return 4;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "reconet: reconfigurable Petri-net engine and deterministic "
      "service-orchestration simulator"};
  app.require_subcommand(1);

  std::string scenario_path;
  std::optional<int> heartbeat_limit;
  std::optional<int> polling_interval;
  std::optional<std::string> out_path;
  std::size_t bound = reconet::kDefaultExplorationBound;
  std::string format = "dot";
  bool templates = false;
  int count = 50;
  unsigned long long seed = 42;

  CLI::App* run_cmd =
      app.add_subcommand("run", "Run a scenario and print its trace");
  run_cmd->add_option("scenario", scenario_path, "scenario JSON file")
      ->required();
  run_cmd->add_option("--heartbeat-limit", heartbeat_limit,
                      "override the policy's heartbeat limit");
  run_cmd->add_option("--polling-interval", polling_interval,
                      "override the polling interval (ticks)");
  run_cmd->add_option("--out", out_path, "also write the trace to a file");

  CLI::App* validate_cmd =
      app.add_subcommand("validate", "Parse and validate a scenario");
  validate_cmd->add_option("scenario", scenario_path, "scenario JSON file")
      ->required();

  CLI::App* analyze_cmd = app.add_subcommand(
      "analyze", "Reachability, consistency and safety of the process net");
  analyze_cmd->add_option("scenario", scenario_path, "scenario JSON file")
      ->required();
  analyze_cmd->add_option("--bound", bound, "exploration bound (markings)");

  CLI::App* export_cmd =
      app.add_subcommand("export", "Export the flattened process net");
  export_cmd->add_option("scenario", scenario_path, "scenario JSON file")
      ->required();
  export_cmd->add_option("--format", format, "dot or json");
  export_cmd->add_flag("--templates", templates,
                       "include the change-state templates");
  export_cmd->add_option("--out", out_path, "write to a file instead");

  CLI::App* fuzz_cmd = app.add_subcommand(
      "fuzz", "Random fault schedules with invariant checking");
  fuzz_cmd->add_option("scenario", scenario_path, "scenario JSON file")
      ->required();
  fuzz_cmd->add_option("--count", count, "number of schedules");
  fuzz_cmd->add_option("--seed", seed, "generator seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? 0 : 1;
  }

  try {
    if (run_cmd->parsed()) {
      return cmd_run(scenario_path, heartbeat_limit, polling_interval,
                     out_path);
    }
    if (validate_cmd->parsed()) return cmd_validate(scenario_path);
    if (analyze_cmd->parsed()) return cmd_analyze(scenario_path, bound);
    if (export_cmd->parsed()) {
      return cmd_export(scenario_path, format, templates, out_path);
    }
    if (fuzz_cmd->parsed()) {
      if (count < 1) {
        std::cerr << "error: --count must be >= 1\n";
        return 1;
      }
      return cmd_fuzz(scenario_path, count, seed);
    }
  } catch (const reconet::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 1;
  } catch (const reconet::ValidationError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return 1;
  } catch (const reconet::EngineError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
