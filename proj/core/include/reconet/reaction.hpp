#pragma once

#include <deque>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "reconet/change_model.hpp"
#include "reconet/detection.hpp"
#include "reconet/marking.hpp"
#include "reconet/reconfig.hpp"

namespace reconet {

enum class SubstitutionStrategy { FirstListed, LowestCost };

struct ReactionPolicy {
  int heartbeat_limit = 3;  // max probes while paused before exiting
  SubstitutionStrategy strategy = SubstitutionStrategy::FirstListed;
};

void validate_policy(const ReactionPolicy& policy);

enum class RunStatus { Running, Paused, Exited, Completed };

std::string to_string(RunStatus status);

struct PausedInfo {
  std::string service;
  int heartbeats_used = 0;
  long paused_at_tick = 0;
};

// Which net nodes realize one member service.
struct ServiceBinding {
  std::set<std::string> places;
  std::set<std::string> transitions;
};

// The reaction side's view of how services map onto the orchestration net.
struct OrchestrationBindings {
  std::map<std::string, ServiceBinding> fragments;
  std::map<std::string, std::set<std::string>> invoked_operations;

  ChangeContext context() const;
};

// Latest known descriptors, keyed by service id (the detection agent's
// snapshot store).
using Catalog = std::map<std::string, ServiceDescriptor>;

struct OrchestrationState {
  ReconfigurableNet pnac;
  Marking marking;
  RunStatus status = RunStatus::Running;
  std::optional<PausedInfo> paused;
  std::vector<std::string> trace;  // rendered REACT lines, causal order
  std::map<std::string, std::vector<std::string>> backups;  // role -> ids
  OrchestrationBindings bindings;
};

// Rule that swaps a service's fragment for an isomorphic fragment of the
// replacement service: node ids are renamed, tokens transfer positionally,
// boundary arcs rebind identically. Throws FragmentNotFound.
RewriteRule synthesize_substitution_rule(const Net& net,
                                         const ServiceBinding& old_fragment,
                                         const std::string& old_service,
                                         const ServiceDescriptor& replacement);

// Rule that deletes a service's fragment and bridges its surroundings with a
// bypass place and a skip transition; tokens stranded in the fragment move to
// the bypass place.
RewriteRule synthesize_removal_rule(const Net& net,
                                    const ServiceBinding& fragment,
                                    const std::string& service_id);

// Dispatches one detection record against the orchestration: register
// advertised services as backups, substitute failed services when an
// equivalent is available, pause on critical failures, bypass non-critical
// ones, record state-level changes (applying a registered rule when one
// matches). Appends every action to state.trace. Throws InvalidStatus when
// the orchestration already exited or completed, RuleApplicationFailed when
// an enactment fails structurally.
OrchestrationState react(const OrchestrationState& state,
                         const DetectionRecord& record,
                         const ReactionPolicy& policy, const Catalog& catalog,
                         long tick);

// One heartbeat probe of the paused-on service: resume when it answers,
// exit after heartbeat_limit probes. Throws InvalidStatus unless paused.
OrchestrationState heartbeat_tick(const OrchestrationState& state,
                                  const MemberDirectory& directory,
                                  const ReactionPolicy& policy, long tick);

// Single-consumer wrapper: buffers records while paused and replays them in
// order on resume; converts reaction failures into trace lines via the
// optional callback instead of aborting the run.
class ReactionActor {
 public:
  ReactionActor(OrchestrationState initial, ReactionPolicy policy);

  void consume(const DetectionRecord& record, const Catalog& catalog,
               long tick);
  void heartbeat(const MemberDirectory& directory, const Catalog& catalog,
                 long tick);

  const OrchestrationState& state() const { return state_; }
  OrchestrationState& mutable_state() { return state_; }
  const ReactionPolicy& policy() const { return policy_; }
  std::size_t pending() const { return pending_.size(); }

  std::function<void(const std::string& message, long tick)> on_rule_failure;

 private:
  void drain(const Catalog& catalog, long tick);

  OrchestrationState state_;
  ReactionPolicy policy_;
  std::deque<DetectionRecord> pending_;
};

}  // namespace reconet
