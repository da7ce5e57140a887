#include "reconet/simenv.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json_detail.hpp"
#include "reconet/errors.hpp"
#include "reconet/json_io.hpp"
#include "reconet/semantics.hpp"

namespace reconet {

namespace {

using json_detail::json;

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() &&
         s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

std::string format_number(double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%g", value);
  return buffer;
}

std::string signature_text(const OperationSignature& op) {
  std::string out = op.name + "(";
  for (std::size_t i = 0; i < op.inputs.size(); ++i) {
    if (i) out += ",";
    out += op.inputs[i];
  }
  out += ";";
  for (std::size_t i = 0; i < op.outputs.size(); ++i) {
    if (i) out += ",";
    out += op.outputs[i];
  }
  out += ")";
  return out;
}

// The changed field's before/after values for the DETECT trace line.
std::pair<std::string, std::string> event_values(const HandlingEvent& e) {
  const auto* pre = e.pre_snapshot ? &*e.pre_snapshot : nullptr;
  const auto* post = e.post_snapshot ? &*e.post_snapshot : nullptr;
  switch (e.kind) {
    case HandlingChangeKind::AlterAvailability:
      return {pre && pre->available ? "true" : "false",
              post && post->available ? "true" : "false"};
    case HandlingChangeKind::AlterReliability:
      return {pre && pre->reliable ? "true" : "false",
              post && post->reliable ? "true" : "false"};
    case HandlingChangeKind::AlterCost:
      return {pre ? format_number(pre->cost) : "-",
              post ? format_number(post->cost) : "-"};
    case HandlingChangeKind::AlterResponsiveness:
      return {pre ? format_number(pre->responsiveness_ms) : "-",
              post ? format_number(post->responsiveness_ms) : "-"};
    case HandlingChangeKind::StructuralRemove:
    case HandlingChangeKind::StructuralAdd:
    case HandlingChangeKind::Behavioral: {
      if (e.operation.empty()) return {"-", "advertised"};
      const OperationSignature* before =
          pre ? pre->find_operation(e.operation) : nullptr;
      const OperationSignature* after =
          post ? post->find_operation(e.operation) : nullptr;
      return {before ? signature_text(*before) : "-",
              after ? signature_text(*after) : "-"};
    }
  }
  return {"-", "-"};
}

std::string render_detect(const DetectionRecord& record) {
  auto [pre, post] = event_values(record.event);
  std::ostringstream line;
  line << "tick=" << record.tick << " DETECT service="
       << record.event.service_id << " theta=" << to_string(record.event.kind);
  if (!record.event.operation.empty()) {
    line << " op=" << record.event.operation;
  }
  line << " pre=" << pre << " post=" << post;
  return line.str();
}

std::set<std::string> operation_names(const ServiceDescriptor& d) {
  std::set<std::string> names;
  for (const auto& op : d.operations) names.insert(op.name);
  return names;
}

}  // namespace

HierarchicalNet builtin_healthcare_process() {
  NetBuilder root;
  root.place("start")
      .place("HS.out")
      .place("AS.in")
      .place("AS.out")
      .place("SS.in")
      .place("SS.out")
      .place("FS.in")
      .place("IS.in")
      .place("done");
  root.transition("HS")
      .transition("split")
      .transition("AS")
      .transition("SS")
      .transition("join")
      .transition("FS")
      .transition("IS");
  root.arc("start", "HS").arc("HS", "HS.out");
  root.arc("HS.out", "split").arc("split", "AS.in").arc("split", "SS.in");
  root.arc("AS.in", "AS").arc("AS", "AS.out");
  root.arc("SS.in", "SS").arc("SS", "SS.out");
  root.arc("AS.out", "join").arc("SS.out", "join").arc("join", "FS.in");
  root.arc("FS.in", "FS").arc("FS", "IS.in");
  root.arc("IS.in", "IS").arc("IS", "done");
  root.input("start").output("done");

  // The health-service sub-process: parallel acquisition, then diagnosis,
  // assessment and the information/guidance tail in sequence.
  NetBuilder sub;
  sub.place("in").place("out");
  const std::vector<std::string> acquisition = {"PhysInfoWS", "EnvInfoWS",
                                                "SubjFeelWS"};
  const std::vector<std::string> tail = {"CoronaryDiagWS", "AssessmentWS",
                                         "EmrWS", "GeoWS", "EmerWS",
                                         "GuideWS"};
  sub.transition("scatter").transition("gather");
  sub.arc("in", "scatter");
  for (const auto& ws : acquisition) {
    sub.place(ws + ".in").place(ws + ".done");
    sub.transition(ws);
    sub.arc("scatter", ws + ".in").arc(ws + ".in", ws).arc(ws, ws + ".done");
    sub.arc(ws + ".done", "gather");
  }
  std::string previous = "gather";
  for (const auto& ws : tail) {
    sub.place(ws + ".in");
    sub.transition(ws);
    sub.arc(previous, ws + ".in").arc(ws + ".in", ws);
    previous = ws;
  }
  sub.arc(previous, "out");
  sub.input("in").output("out");

  return refine(HierarchicalNet(root.build()), "HS", sub.build());
}

Environment::Environment(const std::vector<ServiceEntry>& services) {
  for (const auto& entry : services) {
    validate_descriptor(entry.descriptor);
    descriptors_.emplace(entry.descriptor.id, entry.descriptor);
    if (entry.advertised) advertised_.insert(entry.descriptor.id);
  }
}

bool Environment::alive(const std::string& service_id) const {
  auto it = descriptors_.find(service_id);
  return it != descriptors_.end() && advertised_.count(service_id) &&
         it->second.available;
}

std::optional<ServiceDescriptor> Environment::refresh(
    const std::string& service_id) const {
  if (!alive(service_id)) return std::nullopt;
  return descriptors_.at(service_id);
}

std::vector<std::string> Environment::roster() const {
  return {advertised_.begin(), advertised_.end()};
}

const ServiceDescriptor& Environment::descriptor(
    const std::string& service_id) const {
  auto it = descriptors_.find(service_id);
  if (it == descriptors_.end()) {
    throw UnknownService("unknown service '" + service_id + "'");
  }
  return it->second;
}

void Environment::inject(const FaultInjection& fault) {
  auto it = descriptors_.find(fault.service);
  if (it == descriptors_.end()) {
    throw UnknownService("fault targets unknown service '" + fault.service +
                         "'");
  }
  ServiceDescriptor& d = it->second;
  if (fault.field == "available") {
    d.available = std::get<bool>(fault.value);
  } else if (fault.field == "reliable") {
    d.reliable = std::get<bool>(fault.value);
  } else if (fault.field == "cost") {
    d.cost = std::get<double>(fault.value);
  } else if (fault.field == "responsiveness_ms") {
    d.responsiveness_ms = std::get<double>(fault.value);
  } else if (fault.field == "advertised") {
    if (std::get<bool>(fault.value)) {
      advertised_.insert(fault.service);
    } else {
      advertised_.erase(fault.service);
    }
  } else if (fault.field == "add_operation") {
    const auto& op = std::get<OperationSignature>(fault.value);
    for (auto& existing : d.operations) {
      if (existing.name == op.name) {
        existing = op;
        return;
      }
    }
    d.operations.push_back(op);
  } else if (fault.field == "remove_operation") {
    const auto& name = std::get<std::string>(fault.value);
    std::erase_if(d.operations, [&](const OperationSignature& op) {
      return op.name == name;
    });
  } else {
    throw ValidationError("unknown fault field '" + fault.field + "'");
  }
}

namespace {

const std::set<std::string> kBoolFields = {"available", "reliable",
                                           "advertised"};
const std::set<std::string> kNumberFields = {"cost", "responsiveness_ms"};

FaultInjection fault_from(const json& value, const std::string& path) {
  json_detail::expect_keys(value, {"tick", "service", "field", "value"}, path);
  FaultInjection fault;
  fault.tick = json_detail::as_integer(
      json_detail::require(value, "tick", path), path + ".tick");
  fault.service = json_detail::as_string(
      json_detail::require(value, "service", path), path + ".service");
  fault.field = json_detail::as_string(
      json_detail::require(value, "field", path), path + ".field");
  const json& v = json_detail::require(value, "value", path);
  const std::string vpath = path + ".value";
  if (kBoolFields.count(fault.field)) {
    fault.value = json_detail::as_bool(v, vpath);
  } else if (kNumberFields.count(fault.field)) {
    fault.value = json_detail::as_number(v, vpath);
  } else if (fault.field == "add_operation") {
    fault.value = json_detail::operation_from(v, vpath);
  } else if (fault.field == "remove_operation") {
    fault.value = json_detail::as_string(v, vpath);
  } else {
    throw ValidationError(path + ".field: unknown fault field '" +
                          fault.field + "'");
  }
  return fault;
}

json fault_to(const FaultInjection& fault) {
  json value;
  if (std::holds_alternative<bool>(fault.value)) {
    value = std::get<bool>(fault.value);
  } else if (std::holds_alternative<double>(fault.value)) {
    value = std::get<double>(fault.value);
  } else if (std::holds_alternative<OperationSignature>(fault.value)) {
    value = json_detail::operation_to(std::get<OperationSignature>(fault.value));
  } else {
    value = std::get<std::string>(fault.value);
  }
  return json{{"tick", fault.tick},
              {"service", fault.service},
              {"field", fault.field},
              {"value", value}};
}

ServiceEntry service_entry_from(const json& value, const std::string& path) {
  json_detail::expect_object(value, path);
  ServiceEntry entry;
  json descriptor = value;
  if (auto it = descriptor.find("advertised"); it != descriptor.end()) {
    entry.advertised = json_detail::as_bool(*it, path + ".advertised");
    descriptor.erase("advertised");
  }
  if (auto it = descriptor.find("invoked_operations");
      it != descriptor.end()) {
    if (!it->is_array()) {
      json_detail::fail(path + ".invoked_operations", "expected an array");
    }
    std::vector<std::string> invoked;
    for (const auto& op : *it) {
      invoked.push_back(
          json_detail::as_string(op, path + ".invoked_operations"));
    }
    entry.invoked_operations = std::move(invoked);
    descriptor.erase("invoked_operations");
  }
  entry.descriptor = json_detail::descriptor_from(descriptor, path);
  return entry;
}

json service_entry_to(const ServiceEntry& entry) {
  json out = json_detail::descriptor_to(entry.descriptor);
  if (!entry.advertised) out["advertised"] = false;
  if (entry.invoked_operations) {
    out["invoked_operations"] = *entry.invoked_operations;
  }
  return out;
}

UnsafeSpec unsafe_from(const json& value, const std::string& path) {
  if (!value.is_array()) json_detail::fail(path, "expected an array");
  UnsafeSpec spec;
  for (std::size_t i = 0; i < value.size(); ++i) {
    const std::string cpath = path + "[" + std::to_string(i) + "]";
    json_detail::expect_keys(value[i], {"place", "label", "at_least"}, cpath);
    UnsafeCondition condition;
    condition.place = json_detail::as_string(
        json_detail::require(value[i], "place", cpath), cpath + ".place");
    if (value[i].contains("label")) {
      condition.label =
          json_detail::as_string(value[i]["label"], cpath + ".label");
    }
    if (value[i].contains("at_least")) {
      condition.at_least = static_cast<int>(json_detail::as_integer(
          value[i]["at_least"], cpath + ".at_least"));
    }
    spec.any_of.push_back(std::move(condition));
  }
  return spec;
}

json unsafe_to(const UnsafeSpec& spec) {
  json out = json::array();
  for (const auto& c : spec.any_of) {
    json condition = {{"place", c.place}};
    if (c.label) condition["label"] = *c.label;
    if (c.at_least != 1) condition["at_least"] = c.at_least;
    out.push_back(condition);
  }
  return out;
}

}  // namespace

ScenarioConfig load_scenario(const std::string& json_text) {
  json document = json_detail::parse_document(json_text);
  const std::string path = "scenario";
  json_detail::expect_keys(document,
                           {"name", "services", "process", "rules",
                            "fault_schedule", "polling", "policy", "unsafe",
                            "deadband", "seed", "max_ticks"},
                           path);

  const json& services = json_detail::require(document, "services", path);
  if (!services.is_array()) {
    json_detail::fail(path + ".services", "expected an array");
  }

  const json& process = json_detail::require(document, "process", path);
  HierarchicalNet parsed_process = [&] {
    if (process.is_string()) {
      std::string name = process.get<std::string>();
      if (name != "builtin:healthcare") {
        throw ValidationError(path + ".process: unknown built-in process '" +
                              name + "'");
      }
      return builtin_healthcare_process();
    }
    return json_detail::hierarchical_from(process, path + ".process");
  }();

  ScenarioConfig config{.name = {},
                        .services = {},
                        .process = std::move(parsed_process),
                        .rules = {},
                        .fault_schedule = {},
                        .polling = {},
                        .policy = {},
                        .unsafe = default_unsafe_spec(),
                        .deadband = 0.0,
                        .seed = 0,
                        .max_ticks = 500};
  if (document.contains("name")) {
    config.name = json_detail::as_string(document["name"], path + ".name");
  }

  std::set<std::string> service_ids;
  for (std::size_t i = 0; i < services.size(); ++i) {
    ServiceEntry entry = service_entry_from(
        services[i], path + ".services[" + std::to_string(i) + "]");
    if (!service_ids.insert(entry.descriptor.id).second) {
      throw ValidationError(path + ".services: duplicate service '" +
                            entry.descriptor.id + "'");
    }
    config.services.push_back(std::move(entry));
  }

  if (document.contains("rules")) {
    const json& rules = document["rules"];
    if (!rules.is_array()) json_detail::fail(path + ".rules", "expected an array");
    for (std::size_t i = 0; i < rules.size(); ++i) {
      config.rules.push_back(json_detail::rule_from(
          rules[i], path + ".rules[" + std::to_string(i) + "]"));
    }
  }

  if (document.contains("polling")) {
    const std::string ppath = path + ".polling";
    json_detail::expect_keys(document["polling"],
                             {"interval_ticks", "alive_timeout_ticks"}, ppath);
    if (document["polling"].contains("interval_ticks")) {
      config.polling.interval_ticks = static_cast<int>(json_detail::as_integer(
          document["polling"]["interval_ticks"], ppath + ".interval_ticks"));
    }
    if (document["polling"].contains("alive_timeout_ticks")) {
      config.polling.alive_timeout_ticks =
          static_cast<int>(json_detail::as_integer(
              document["polling"]["alive_timeout_ticks"],
              ppath + ".alive_timeout_ticks"));
    }
    try {
      validate_polling(config.polling);
    } catch (const ValidationError& e) {
      throw ValidationError(ppath + ": " + e.what());
    }
  }

  if (document.contains("policy")) {
    const std::string ppath = path + ".policy";
    json_detail::expect_keys(document["policy"],
                             {"heartbeat_limit", "substitution_strategy"},
                             ppath);
    if (document["policy"].contains("heartbeat_limit")) {
      config.policy.heartbeat_limit = static_cast<int>(json_detail::as_integer(
          document["policy"]["heartbeat_limit"], ppath + ".heartbeat_limit"));
    }
    if (document["policy"].contains("substitution_strategy")) {
      std::string strategy = json_detail::as_string(
          document["policy"]["substitution_strategy"],
          ppath + ".substitution_strategy");
      if (strategy == "first_listed") {
        config.policy.strategy = SubstitutionStrategy::FirstListed;
      } else if (strategy == "lowest_cost") {
        config.policy.strategy = SubstitutionStrategy::LowestCost;
      } else {
        throw ValidationError(ppath + ".substitution_strategy: unknown '" +
                              strategy + "'");
      }
    }
    try {
      validate_policy(config.policy);
    } catch (const ValidationError& e) {
      throw ValidationError(ppath + ": " + e.what());
    }
  }

  if (document.contains("unsafe")) {
    config.unsafe = unsafe_from(document["unsafe"], path + ".unsafe");
  }
  if (document.contains("deadband")) {
    config.deadband =
        json_detail::as_number(document["deadband"], path + ".deadband");
    if (config.deadband < 0) {
      throw ValidationError(path + ".deadband: must be >= 0");
    }
  }
  if (document.contains("seed")) {
    config.seed = json_detail::as_integer(document["seed"], path + ".seed");
  }
  if (document.contains("max_ticks")) {
    config.max_ticks =
        json_detail::as_integer(document["max_ticks"], path + ".max_ticks");
    if (config.max_ticks < 1) {
      throw ValidationError(path + ".max_ticks: must be >= 1");
    }
  }

  if (document.contains("fault_schedule")) {
    const json& schedule = document["fault_schedule"];
    if (!schedule.is_array()) {
      json_detail::fail(path + ".fault_schedule", "expected an array");
    }
    for (std::size_t i = 0; i < schedule.size(); ++i) {
      const std::string fpath =
          path + ".fault_schedule[" + std::to_string(i) + "]";
      FaultInjection fault = fault_from(schedule[i], fpath);
      if (!service_ids.count(fault.service)) {
        throw ValidationError(fpath + ".service: unknown service '" +
                              fault.service + "'");
      }
      if (fault.tick < 0 || fault.tick > config.max_ticks) {
        throw ValidationError(fpath + ".tick: outside [0, max_ticks]");
      }
      config.fault_schedule.push_back(std::move(fault));
    }
  }

  // The flat process must be structurally sound before anything runs.
  flatten(config.process);
  return config;
}

ScenarioConfig load_scenario_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open scenario file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return load_scenario(buffer.str());
}

std::string scenario_to_json(const ScenarioConfig& config) {
  json services = json::array();
  for (const auto& entry : config.services) {
    services.push_back(service_entry_to(entry));
  }
  json rules = json::array();
  for (const auto& rule : config.rules) {
    rules.push_back(json_detail::rule_to(rule));
  }
  json schedule = json::array();
  for (const auto& fault : config.fault_schedule) {
    schedule.push_back(fault_to(fault));
  }
  json document = {
      {"name", config.name},
      {"services", services},
      {"process", json_detail::hierarchical_to(config.process)},
      {"rules", rules},
      {"fault_schedule", schedule},
      {"polling",
       {{"interval_ticks", config.polling.interval_ticks},
        {"alive_timeout_ticks", config.polling.alive_timeout_ticks}}},
      {"policy",
       {{"heartbeat_limit", config.policy.heartbeat_limit},
        {"substitution_strategy",
         config.policy.strategy == SubstitutionStrategy::FirstListed
             ? "first_listed"
             : "lowest_cost"}}},
      {"unsafe", unsafe_to(config.unsafe)},
      {"deadband", config.deadband},
      {"seed", config.seed},
      {"max_ticks", config.max_ticks}};
  return document.dump(2);
}

std::string SimTrace::rendered() const {
  std::string out;
  for (const auto& line : lines) {
    out += line;
    out += '\n';
  }
  return out;
}

int SimTrace::exit_code() const {
  switch (final_status) {
    case RunStatus::Completed:
      return 0;
    case RunStatus::Exited:
      return 2;
    default:
      return 3;
  }
}

namespace {

OrchestrationBindings derive_bindings(const Net& flat,
                                      const std::vector<ServiceEntry>& services) {
  OrchestrationBindings bindings;
  for (const auto& entry : services) {
    const std::string& sid = entry.descriptor.id;
    ServiceBinding binding;
    for (const auto& [tid, t] : flat.transitions()) {
      if (tid == sid || ends_with(tid, "/" + sid)) binding.transitions.insert(tid);
    }
    if (binding.transitions.empty()) continue;  // standby: catalog-only
    for (const auto& [pid, p] : flat.places()) {
      if (pid == sid + ".in" || ends_with(pid, "/" + sid + ".in")) {
        binding.places.insert(pid);
      }
    }
    std::set<std::string> invoked;
    if (entry.invoked_operations) {
      invoked.insert(entry.invoked_operations->begin(),
                     entry.invoked_operations->end());
    } else {
      invoked = operation_names(entry.descriptor);
    }
    bindings.fragments.emplace(sid, std::move(binding));
    bindings.invoked_operations.emplace(sid, std::move(invoked));
  }
  return bindings;
}

}  // namespace

SimTrace run(const ScenarioConfig& config, const RunObserver* observer) {
  Environment env(config.services);

  Net flat = flatten(config.process);
  OrchestrationBindings bindings = derive_bindings(flat, config.services);

  Marking initial;
  initial.add(flat.input_place(), kPlainLabel);

  OrchestrationState state{
      .pnac = ReconfigurableNet(flat, config.rules, initial),
      .marking = initial,
      .status = RunStatus::Running,
      .paused = std::nullopt,
      .trace = {},
      .backups = {},
      .bindings = std::move(bindings)};
  ReactionActor actor(std::move(state), config.policy);

  std::map<std::string, ServiceDescriptor> initial_snapshots;
  for (const auto& entry : config.services) {
    if (entry.advertised) {
      initial_snapshots.emplace(entry.descriptor.id, entry.descriptor);
    }
  }
  DetectionAgent agent(std::move(initial_snapshots), config.polling);
  DetectionChannel channel;

  SimTrace trace;
  std::size_t trace_synced = 0;
  auto sync_trace = [&] {
    const auto& lines = actor.state().trace;
    for (; trace_synced < lines.size(); ++trace_synced) {
      trace.lines.push_back(lines[trace_synced]);
    }
  };
  if (observer && observer->on_rule_failure) {
    actor.on_rule_failure = observer->on_rule_failure;
  }
  // Reconfigurations are detected by generation jumps around actor calls.
  auto observed = [&](auto&& call) {
    Marking before = actor.state().marking;
    int generation = actor.state().pnac.generation();
    call();
    if (observer && observer->on_reconfigured &&
        actor.state().pnac.generation() != generation) {
      observer->on_reconfigured(before, actor.state().marking,
                                actor.state().pnac.net());
    }
  };

  auto service_of = [&](const std::string& transition) -> const std::string* {
    for (const auto& [sid, binding] : actor.state().bindings.fragments) {
      if (binding.transitions.count(transition)) return &sid;
    }
    return nullptr;
  };

  long tick = 0;
  if (actor.state().marking.marked(actor.state().pnac.net().output_place())) {
    actor.mutable_state().status = RunStatus::Completed;
  }
  for (; tick <= config.max_ticks &&
         actor.state().status != RunStatus::Completed &&
         actor.state().status != RunStatus::Exited;
       ++tick) {
    // (1) due faults
    for (const auto& fault : config.fault_schedule) {
      if (fault.tick == tick) env.inject(fault);
    }

    // (2) polling
    auto records = agent.poll_cycle(env, tick);
    for (const auto& record : records) {
      trace.lines.push_back(render_detect(record));
    }
    forward(records, channel);

    // (3) reaction consumes the channel
    while (auto record = channel.pop()) {
      observed([&] { actor.consume(*record, agent.snapshots(), tick); });
      sync_trace();
      if (observer && observer->on_reaction_settled) {
        observer->on_reaction_settled(actor.state(), tick);
      }
    }

    // (4) heartbeat while paused (first probe the tick after pausing)
    if (actor.state().status == RunStatus::Paused &&
        actor.state().paused->paused_at_tick < tick) {
      observed([&] { actor.heartbeat(env, agent.snapshots(), tick); });
      sync_trace();
      if (observer && observer->on_heartbeat) {
        int used = actor.state().paused ? actor.state().paused->heartbeats_used
                                        : config.policy.heartbeat_limit;
        observer->on_heartbeat(used, config.policy.heartbeat_limit);
      }
      if (observer && observer->on_reaction_settled) {
        observer->on_reaction_settled(actor.state(), tick);
      }
    }

    // (5) one process step
    if (actor.state().status == RunStatus::Running) {
      const Net& net = actor.state().pnac.net();
      for (const auto& t : enabled_transitions(net, actor.state().marking)) {
        const std::string* sid = service_of(t);
        if (sid && !env.alive(*sid)) continue;  // cannot call a dark service
        actor.mutable_state().marking = fire(net, actor.state().marking, t);
        trace.lines.push_back("tick=" + std::to_string(tick) +
                              " FIRE transition=" + t);
        break;
      }
      if (actor.state().marking.marked(net.output_place())) {
        actor.mutable_state().status = RunStatus::Completed;
      }
    }
  }

  sync_trace();
  trace.final_status = actor.state().status;
  trace.generations = actor.state().pnac.generation();
  trace.ticks = tick > 0 ? tick - 1 : 0;
  trace.lines.push_back("RESULT status=" + to_string(trace.final_status) +
                        " generations=" + std::to_string(trace.generations) +
                        " ticks=" + std::to_string(trace.ticks));
  trace.final_state = actor.state();
  return trace;
}

}  // namespace reconet
