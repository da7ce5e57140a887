#pragma once

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "reconet/analysis.hpp"
#include "reconet/change_model.hpp"
#include "reconet/detection.hpp"
#include "reconet/hierarchy.hpp"
#include "reconet/reaction.hpp"

namespace reconet {

// One scheduled descriptor change, applied at the start of its tick.
struct FaultInjection {
  long tick = 0;
  std::string service;
  std::string field;  // available | reliable | cost | responsiveness_ms |
                      // advertised | add_operation | remove_operation
  std::variant<bool, double, OperationSignature, std::string> value;
};

// A scenario service: its descriptor plus environment state and the
// operations the process actually calls (all of them when unset).
struct ServiceEntry {
  ServiceDescriptor descriptor;
  bool advertised = true;
  std::optional<std::vector<std::string>> invoked_operations;
};

struct ScenarioConfig {
  std::string name;
  std::vector<ServiceEntry> services;
  HierarchicalNet process;
  std::vector<RewriteRule> rules;
  std::vector<FaultInjection> fault_schedule;
  PollingConfig polling;
  ReactionPolicy policy;
  UnsafeSpec unsafe = default_unsafe_spec();
  double deadband = 0.0;
  long seed = 0;
  long max_ticks = 500;
};

// The healthcare orchestration shipped as the default scenario: a
// subscription process over HS, AS, SS, FS and IS where HS is refined by the
// nine information/assessment web services.
HierarchicalNet builtin_healthcare_process();

// Parses and validates a scenario document. Unknown keys and unknown service
// references are rejected (ParseError with path / ValidationError).
ScenarioConfig load_scenario(const std::string& json_text);
ScenarioConfig load_scenario_file(const std::string& path);
std::string scenario_to_json(const ScenarioConfig& config);

// The simulated member services: answers Alive/Refresh probes and receives
// fault injections.
class Environment : public MemberDirectory {
 public:
  explicit Environment(const std::vector<ServiceEntry>& services);

  bool alive(const std::string& service_id) const override;
  std::optional<ServiceDescriptor> refresh(
      const std::string& service_id) const override;
  std::vector<std::string> roster() const override;

  // Applies the fault; the change becomes visible to the next probes.
  // Throws UnknownService.
  void inject(const FaultInjection& fault);

  const ServiceDescriptor& descriptor(const std::string& service_id) const;

 private:
  std::map<std::string, ServiceDescriptor> descriptors_;
  std::set<std::string> advertised_;
};

struct SimTrace {
  std::vector<std::string> lines;  // DETECT/REACT/FIRE then final RESULT
  RunStatus final_status = RunStatus::Running;
  int generations = 0;
  long ticks = 0;
  std::optional<OrchestrationState> final_state;

  std::string rendered() const;  // one line each, '\n'-terminated
  // 0 Completed, 2 Exited, 3 neither within max_ticks.
  int exit_code() const;
};

// Optional instrumentation for invariant checking; every hook may be empty.
struct RunObserver {
  // Net structure changed under a reaction (one or more rule applications).
  std::function<void(const Marking& before, const Marking& after,
                     const Net& net_after)>
      on_reconfigured;
  std::function<void(const OrchestrationState& state, long tick)>
      on_reaction_settled;
  std::function<void(int heartbeats_used, int limit)> on_heartbeat;
  std::function<void(const std::string& message, long tick)> on_rule_failure;
};

// Deterministic tick loop: inject due faults, poll when due, react to every
// pending record, heartbeat while paused, then fire one enabled process
// transition (lexicographically first whose service answers). Stops on
// completion, exit, or after max_ticks.
SimTrace run(const ScenarioConfig& config, const RunObserver* observer = nullptr);

}  // namespace reconet
