#include "reconet/reaction.hpp"

#include <algorithm>
#include <sstream>

#include "reconet/analysis.hpp"
#include "reconet/errors.hpp"

namespace reconet {

void validate_policy(const ReactionPolicy& policy) {
  if (policy.heartbeat_limit < 1) {
    throw ValidationError("heartbeat limit must be >= 1");
  }
}

std::string to_string(RunStatus status) {
  switch (status) {
    case RunStatus::Running:
      return "Running";
    case RunStatus::Paused:
      return "Paused";
    case RunStatus::Exited:
      return "Exited";
    case RunStatus::Completed:
      return "Completed";
  }
  return "unknown";
}

ChangeContext OrchestrationBindings::context() const {
  ChangeContext ctx;
  for (const auto& [id, binding] : fragments) ctx.member_services.insert(id);
  ctx.invoked_operations = invoked_operations;
  return ctx;
}

namespace {

std::string cause_of(const DetectionRecord& record) {
  return record.event.service_id + "/" + to_string(record.event.kind) + "@" +
         std::to_string(record.tick);
}

void append_react(OrchestrationState& state, long tick,
                  const std::string& omega, const std::string& action,
                  const std::vector<std::pair<std::string, std::string>>& kvs) {
  std::ostringstream line;
  line << "tick=" << tick << " REACT omega=" << omega << " action=" << action;
  for (const auto& [k, v] : kvs) line << " " << k << "=" << v;
  state.trace.push_back(line.str());
}

// New node id for the substituted fragment: the replacement service id takes
// the old one's position inside the node id.
std::string map_node_id(const std::string& node, const std::string& old_id,
                        const std::string& new_id, int position) {
  auto pos = node.find(old_id);
  if (pos != std::string::npos) {
    std::string mapped = node;
    mapped.replace(pos, old_id.size(), new_id);
    return mapped;
  }
  return new_id + ".n" + std::to_string(position);
}

struct BoundaryArc {
  std::string outside;
  std::string inside;
  int weight;
  bool into_fragment;
};

struct FragmentView {
  Fragment fragment;                 // nodes and internal arcs as in the net
  std::vector<BoundaryArc> boundary;
};

FragmentView cut_fragment(const Net& net, const ServiceBinding& binding,
                          const std::string& service_id) {
  FragmentView view;
  for (const auto& id : binding.places) {
    auto it = net.places().find(id);
    if (it == net.places().end()) {
      throw FragmentNotFound("service '" + service_id + "': place '" + id +
                             "' is not in the net");
    }
    view.fragment.places.push_back(it->second);
  }
  for (const auto& id : binding.transitions) {
    auto it = net.transitions().find(id);
    if (it == net.transitions().end()) {
      throw FragmentNotFound("service '" + service_id + "': transition '" +
                             id + "' is not in the net");
    }
    view.fragment.transitions.push_back(it->second);
  }
  auto inside = [&](const std::string& id) {
    return binding.places.count(id) || binding.transitions.count(id);
  };
  for (const Arc& a : net.arcs()) {
    bool src_in = inside(a.source);
    bool dst_in = inside(a.target);
    if (src_in && dst_in) {
      view.fragment.arcs.push_back(a);
    } else if (dst_in) {
      view.boundary.push_back({a.source, a.target, a.weight, true});
    } else if (src_in) {
      view.boundary.push_back({a.target, a.source, a.weight, false});
    }
  }
  return view;
}

// Deduplicate port arcs by (host, fragment, direction), summing weights.
std::vector<PortArc> coalesce_ports(std::vector<PortArc> ports) {
  std::map<std::tuple<std::string, std::string, bool>, int> merged;
  for (const auto& p : ports) {
    merged[{p.host_node, p.fragment_node, p.into_fragment}] += p.weight;
  }
  std::vector<PortArc> out;
  for (const auto& [key, weight] : merged) {
    out.push_back({std::get<0>(key), std::get<1>(key), weight,
                   std::get<2>(key)});
  }
  return out;
}

bool consistent_now(const OrchestrationState& state) {
  try {
    return check_consistency(state.pnac.net(), state.marking).consistent;
  } catch (const BoundExceeded&) {
    return false;  // indeterminate treated as failure for escalation
  }
}

bool service_critical(const Catalog& catalog, const std::string& id) {
  auto it = catalog.find(id);
  return it != catalog.end() && it->second.critical;
}

OrchestrationState pause_on(OrchestrationState state, const std::string& id,
                            long tick, const std::string& omega,
                            const std::string& cause) {
  state.status = RunStatus::Paused;
  state.paused = PausedInfo{id, 0, tick};
  append_react(state, tick, omega, "pause", {{"service", id}, {"cause", cause}});
  return state;
}

OrchestrationState remove_service(OrchestrationState state,
                                  const std::string& id, long tick,
                                  const std::string& omega,
                                  const std::string& cause) {
  auto it = state.bindings.fragments.find(id);
  if (it == state.bindings.fragments.end()) {
    throw FragmentNotFound("service '" + id + "' has no fragment to remove");
  }
  RewriteRule rule = synthesize_removal_rule(state.pnac.net(), it->second, id);
  try {
    auto [next_pnac, next_marking] =
        apply_rule(state.pnac, rule, state.marking);
    state.pnac = std::move(next_pnac);
    state.marking = std::move(next_marking);
  } catch (const EngineError& e) {
    throw RuleApplicationFailed("removal of '" + id + "' failed: " + e.what());
  }
  state.bindings.fragments.erase(id);
  state.bindings.invoked_operations.erase(id);
  append_react(state, tick, omega, "remove",
               {{"service", id}, {"rule", rule.id}, {"cause", cause}});
  return state;
}

// Escalation path shared by every structural reaction: a reconfiguration
// that leaves the output place unreachable is handled as if the involved
// service itself had failed.
OrchestrationState ensure_consistency(OrchestrationState state,
                                      const std::string& service,
                                      const Catalog& catalog, long tick,
                                      const std::string& omega,
                                      const std::string& cause) {
  if (state.status != RunStatus::Running || consistent_now(state)) {
    return state;
  }
  if (service_critical(catalog, service)) {
    return pause_on(std::move(state), service, tick, omega, cause);
  }
  if (state.bindings.fragments.count(service)) {
    state = remove_service(std::move(state), service, tick, omega, cause);
    if (consistent_now(state)) return state;
  }
  state.status = RunStatus::Exited;
  append_react(state, tick, omega, "exit",
               {{"service", service}, {"reason", "inconsistent"},
                {"cause", cause}});
  return state;
}

std::vector<std::string> substitution_candidates(
    const OrchestrationState& state, const ServiceDescriptor& old_descriptor,
    const Catalog& catalog, SubstitutionStrategy strategy) {
  std::vector<std::string> ordered;
  std::set<std::string> seen;
  auto push = [&](const std::string& id) {
    if (id != old_descriptor.id && seen.insert(id).second) {
      ordered.push_back(id);
    }
  };
  for (const auto& id : old_descriptor.substitutes) push(id);
  auto backups = state.backups.find(old_descriptor.role_name);
  if (backups != state.backups.end()) {
    for (const auto& id : backups->second) push(id);
  }

  std::set<std::string> required_ops;
  for (const auto& op : old_descriptor.operations) required_ops.insert(op.name);

  std::vector<std::string> equivalent;
  for (const auto& id : ordered) {
    auto it = catalog.find(id);
    if (it == catalog.end()) continue;
    const ServiceDescriptor& cand = it->second;
    if (!cand.available) continue;
    if (cand.role_name != old_descriptor.role_name) continue;
    std::set<std::string> names;
    for (const auto& op : cand.operations) names.insert(op.name);
    if (!std::includes(names.begin(), names.end(), required_ops.begin(),
                       required_ops.end())) {
      continue;
    }
    if (state.pnac.net().has_node(id)) continue;  // already placed in the net
    equivalent.push_back(id);
  }
  if (strategy == SubstitutionStrategy::LowestCost) {
    std::stable_sort(equivalent.begin(), equivalent.end(),
                     [&](const std::string& a, const std::string& b) {
                       return catalog.at(a).cost < catalog.at(b).cost;
                     });
  }
  return equivalent;
}

OrchestrationState substitute_service(OrchestrationState state,
                                      const std::string& old_id,
                                      const std::string& new_id,
                                      const Catalog& catalog, long tick,
                                      const std::string& omega,
                                      const std::string& cause) {
  const ServiceBinding old_binding = state.bindings.fragments.at(old_id);
  RewriteRule rule = synthesize_substitution_rule(
      state.pnac.net(), old_binding, old_id, catalog.at(new_id));
  try {
    auto [next_pnac, next_marking] =
        apply_rule(state.pnac, rule, state.marking);
    state.pnac = std::move(next_pnac);
    state.marking = std::move(next_marking);
  } catch (const EngineError& e) {
    throw RuleApplicationFailed("substitution of '" + old_id + "' by '" +
                                new_id + "' failed: " + e.what());
  }

  // Rebind the fragment and invoked operations to the replacement service.
  ServiceBinding new_binding;
  int position = 0;
  for (const auto& p : old_binding.places) {
    new_binding.places.insert(map_node_id(p, old_id, new_id, position++));
  }
  for (const auto& t : old_binding.transitions) {
    new_binding.transitions.insert(map_node_id(t, old_id, new_id, position++));
  }
  auto invoked = state.bindings.invoked_operations.find(old_id);
  if (invoked != state.bindings.invoked_operations.end()) {
    state.bindings.invoked_operations[new_id] = invoked->second;
    state.bindings.invoked_operations.erase(old_id);
  }
  state.bindings.fragments.erase(old_id);
  state.bindings.fragments.emplace(new_id, std::move(new_binding));

  append_react(state, tick, omega, "substitute",
               {{"service", old_id}, {"with", new_id}, {"rule", rule.id},
                {"cause", cause}});
  return state;
}

// Registered rule matching a recorded state/order change: same omega kind,
// touching the service's fragment when it has one, applicable right now.
const RewriteRule* find_registered_rule(const OrchestrationState& state,
                                        AdaptiveChangeKind kind,
                                        const std::string& service) {
  const auto* binding =
      state.bindings.fragments.count(service)
          ? &state.bindings.fragments.at(service)
          : nullptr;
  for (const auto& [id, rule] : state.pnac.rules()) {
    if (rule.omega != kind) continue;
    if (!applicable(state.pnac, rule, Marking{})) continue;
    if (binding && !rule.match.places.empty()) {
      bool touches = false;
      for (const auto& p : rule.match.places) {
        if (binding->places.count(p.id)) touches = true;
      }
      for (const auto& t : rule.match.transitions) {
        if (binding->transitions.count(t.id)) touches = true;
      }
      if (!touches) continue;
    }
    return &rule;
  }
  return nullptr;
}

}  // namespace

RewriteRule synthesize_substitution_rule(const Net& net,
                                         const ServiceBinding& old_fragment,
                                         const std::string& old_service,
                                         const ServiceDescriptor& replacement) {
  FragmentView view = cut_fragment(net, old_fragment, old_service);

  RewriteRule rule;
  rule.id = "substitute-" + old_service + "-" + replacement.id;
  rule.omega = AdaptiveChangeKind::AlterServiceInstance;
  rule.match = view.fragment;

  int position = 0;
  std::map<std::string, std::string> rename;
  for (const auto& p : view.fragment.places) {
    rename[p.id] = map_node_id(p.id, old_service, replacement.id, position++);
  }
  for (const auto& t : view.fragment.transitions) {
    rename[t.id] = map_node_id(t.id, old_service, replacement.id, position++);
  }

  for (const auto& p : view.fragment.places) {
    rule.replacement.places.push_back({rename[p.id], rename[p.id]});
    rule.token_transfer[p.id] = rename[p.id];
  }
  for (const auto& t : view.fragment.transitions) {
    rule.replacement.transitions.push_back({rename[t.id], rename[t.id],
                                            t.guard});
  }
  for (const Arc& a : view.fragment.arcs) {
    rule.replacement.arcs.push_back({rename[a.source], rename[a.target],
                                     a.weight});
  }
  std::vector<PortArc> ports;
  for (const auto& b : view.boundary) {
    ports.push_back({b.outside, rename[b.inside], b.weight, b.into_fragment});
  }
  rule.port_map = coalesce_ports(std::move(ports));
  validate_rule(rule);
  return rule;
}

RewriteRule synthesize_removal_rule(const Net& net,
                                    const ServiceBinding& fragment,
                                    const std::string& service_id) {
  FragmentView view = cut_fragment(net, fragment, service_id);
  const std::string bypass = service_id + ".bypass";
  const std::string skip = service_id + ".skip";

  RewriteRule rule;
  rule.id = "remove-" + service_id;
  rule.omega = AdaptiveChangeKind::AlterServiceInstance;
  rule.match = view.fragment;
  rule.replacement.places.push_back({bypass, bypass});
  rule.replacement.transitions.push_back({skip, skip, std::nullopt});
  rule.replacement.arcs.push_back({bypass, skip, 1});
  for (const auto& p : view.fragment.places) rule.token_transfer[p.id] = bypass;

  std::vector<PortArc> ports;
  for (const auto& b : view.boundary) {
    bool inside_is_place =
        std::any_of(view.fragment.places.begin(), view.fragment.places.end(),
                    [&](const Place& p) { return p.id == b.inside; });
    ports.push_back({b.outside, inside_is_place ? bypass : skip, b.weight,
                     b.into_fragment});
  }
  rule.port_map = coalesce_ports(std::move(ports));
  validate_rule(rule);
  return rule;
}

OrchestrationState react(const OrchestrationState& state,
                         const DetectionRecord& record,
                         const ReactionPolicy& policy, const Catalog& catalog,
                         long tick) {
  if (state.status == RunStatus::Exited ||
      state.status == RunStatus::Completed) {
    throw InvalidStatus("cannot react while " + to_string(state.status));
  }
  OrchestrationState next = state;
  const HandlingEvent& event = record.event;
  const std::string cause = cause_of(record);

  // A whole-service advertisement registers a backup; the net is untouched.
  bool member = next.bindings.fragments.count(event.service_id) > 0;
  if (event.kind == HandlingChangeKind::StructuralAdd && !event.pre_snapshot &&
      event.post_snapshot && !member) {
    auto& pool = next.backups[event.post_snapshot->role_name];
    if (std::find(pool.begin(), pool.end(), event.service_id) == pool.end()) {
      pool.push_back(event.service_id);
      append_react(next, tick, to_string(AdaptiveChangeKind::AlterServiceInstance),
                   "backup",
                   {{"service", event.service_id},
                    {"role", event.post_snapshot->role_name},
                    {"cause", cause}});
    }
    return next;
  }
  if (!member) return next;  // catalog-only knowledge, nothing orchestrated

  AdaptiveEvent omega =
      map_theta_to_omega(event, next.bindings.context(), tick);
  const std::string omega_name = to_string(omega.kind);

  if (omega.kind == AdaptiveChangeKind::AlterServiceInstance) {
    const ServiceDescriptor* old_descriptor = nullptr;
    if (event.pre_snapshot) {
      old_descriptor = &*event.pre_snapshot;
    } else if (auto it = catalog.find(event.service_id); it != catalog.end()) {
      old_descriptor = &it->second;
    }
    std::vector<std::string> candidates;
    if (old_descriptor) {
      candidates = substitution_candidates(next, *old_descriptor, catalog,
                                           policy.strategy);
    }
    if (!candidates.empty()) {
      next = substitute_service(std::move(next), event.service_id,
                                candidates.front(), catalog, tick, omega_name,
                                cause);
      return ensure_consistency(std::move(next), candidates.front(), catalog,
                                tick, omega_name, cause);
    }
    if (service_critical(catalog, event.service_id)) {
      return pause_on(std::move(next), event.service_id, tick, omega_name,
                      cause);
    }
    next = remove_service(std::move(next), event.service_id, tick, omega_name,
                          cause);
    return ensure_consistency(std::move(next), event.service_id, catalog,
                              tick, omega_name, cause);
  }

  // AlterState / AlterOrder: enact a registered rule when one matches,
  // otherwise the change is recorded only.
  const RewriteRule* rule =
      find_registered_rule(next, omega.kind, event.service_id);
  if (rule) {
    const std::string rule_id = rule->id;
    try {
      auto [next_pnac, next_marking] =
          apply_rule(next.pnac, *rule, next.marking);
      next.pnac = std::move(next_pnac);
      next.marking = std::move(next_marking);
    } catch (const EngineError& e) {
      throw RuleApplicationFailed("rule '" + rule_id + "' failed: " + e.what());
    }
    append_react(next, tick, omega_name, "record",
                 {{"service", event.service_id}, {"rule", rule_id},
                  {"cause", cause}});
    return ensure_consistency(std::move(next), event.service_id, catalog,
                              tick, omega_name, cause);
  }
  append_react(next, tick, omega_name, "record",
               {{"service", event.service_id}, {"cause", cause}});
  return next;
}

OrchestrationState heartbeat_tick(const OrchestrationState& state,
                                  const MemberDirectory& directory,
                                  const ReactionPolicy& policy, long tick) {
  if (state.status != RunStatus::Paused || !state.paused) {
    throw InvalidStatus("heartbeat requires a paused orchestration");
  }
  OrchestrationState next = state;
  PausedInfo info = *next.paused;
  if (directory.alive(info.service)) {
    next.status = RunStatus::Running;
    next.paused.reset();
    append_react(next, tick, to_string(AdaptiveChangeKind::AlterServiceInstance),
                 "resume",
                 {{"service", info.service},
                  {"heartbeats", std::to_string(info.heartbeats_used)}});
    return next;
  }
  info.heartbeats_used += 1;
  if (info.heartbeats_used >= policy.heartbeat_limit) {
    next.status = RunStatus::Exited;
    next.paused.reset();
    append_react(next, tick, to_string(AdaptiveChangeKind::AlterServiceInstance),
                 "exit",
                 {{"service", info.service},
                  {"heartbeats", std::to_string(info.heartbeats_used)}});
    return next;
  }
  next.paused = info;
  return next;
}

ReactionActor::ReactionActor(OrchestrationState initial, ReactionPolicy policy)
    : state_(std::move(initial)), policy_(policy) {
  validate_policy(policy_);
}

void ReactionActor::consume(const DetectionRecord& record,
                            const Catalog& catalog, long tick) {
  if (state_.status == RunStatus::Paused) {
    pending_.push_back(record);  // replayed in order on resume
    return;
  }
  if (state_.status != RunStatus::Running) return;
  try {
    state_ = react(state_, record, policy_, catalog, tick);
  } catch (const RuleApplicationFailed& e) {
    state_.trace.push_back("tick=" + std::to_string(tick) +
                           " REACT omega=none action=record error=" +
                           std::string("rule-application-failed"));
    if (on_rule_failure) on_rule_failure(e.what(), tick);
  }
}

void ReactionActor::heartbeat(const MemberDirectory& directory,
                              const Catalog& catalog, long tick) {
  if (state_.status != RunStatus::Paused) return;
  state_ = heartbeat_tick(state_, directory, policy_, tick);
  if (state_.status == RunStatus::Running) drain(catalog, tick);
}

void ReactionActor::drain(const Catalog& catalog, long tick) {
  while (state_.status == RunStatus::Running && !pending_.empty()) {
    DetectionRecord record = std::move(pending_.front());
    pending_.pop_front();
    consume(record, catalog, tick);
  }
}

}  // namespace reconet
