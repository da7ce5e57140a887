#include "reconet/change_model.hpp"

#include <algorithm>
#include <cmath>

#include "reconet/errors.hpp"
#include "reconet/semantics.hpp"

namespace reconet {

const OperationSignature* ServiceDescriptor::find_operation(
    const std::string& name) const {
  for (const auto& op : operations) {
    if (op.name == name) return &op;
  }
  return nullptr;
}

void validate_descriptor(const ServiceDescriptor& d) {
  if (d.id.empty()) throw ValidationError("service descriptor without id");
  std::set<std::string> names;
  for (const auto& op : d.operations) {
    if (!names.insert(op.name).second) {
      throw ValidationError("service '" + d.id + "': duplicate operation '" +
                            op.name + "'");
    }
  }
  for (const auto& s : d.substitutes) {
    if (s == d.id) {
      throw ValidationError("service '" + d.id + "' lists itself as substitute");
    }
  }
  if (d.cost < 0 || d.responsiveness_ms < 0) {
    throw ValidationError("service '" + d.id +
                          "': negative cost or responsiveness");
  }
}

std::string to_string(HandlingChangeKind kind) {
  switch (kind) {
    case HandlingChangeKind::AlterAvailability:
      return "alterAvailability";
    case HandlingChangeKind::AlterReliability:
      return "alterReliability";
    case HandlingChangeKind::AlterCost:
      return "alterCost";
    case HandlingChangeKind::AlterResponsiveness:
      return "alterResponsiveness";
    case HandlingChangeKind::StructuralRemove:
      return "structuralRemove";
    case HandlingChangeKind::StructuralAdd:
      return "structuralAdd";
    case HandlingChangeKind::Behavioral:
      return "behavioral";
  }
  return "unknown";
}

bool is_nonfunctional(HandlingChangeKind kind) {
  switch (kind) {
    case HandlingChangeKind::AlterAvailability:
    case HandlingChangeKind::AlterReliability:
    case HandlingChangeKind::AlterCost:
    case HandlingChangeKind::AlterResponsiveness:
      return true;
    default:
      return false;
  }
}

const ChangeTemplate& nonfunctional_template() {
  static const ChangeTemplate t = [] {
    NetBuilder b;
    b.place("PS").place("PS'A").place("PS'R").place("PS'C").place("PS'Re");
    b.transition("TA", TokenLabel{"A"});
    b.transition("TR", TokenLabel{"R"});
    b.transition("TC", TokenLabel{"C"});
    b.transition("TRe", TokenLabel{"Re"});
    b.arc("PS", "TA").arc("TA", "PS'A");
    b.arc("PS", "TR").arc("TR", "PS'R");
    b.arc("PS", "TC").arc("TC", "PS'C");
    b.arc("PS", "TRe").arc("TRe", "PS'Re");
    // The template records state; it has no downstream flow, so both
    // interface places are PS.
    b.input("PS").output("PS");
    Marking initial;
    initial.add("PS", "A");
    initial.add("PS", "R");
    initial.add("PS", "C");
    initial.add("PS", "Re");
    return ChangeTemplate{b.build(), std::move(initial)};
  }();
  return t;
}

const ChangeTemplate& functional_template() {
  static const ChangeTemplate t = [] {
    NetBuilder b;
    b.place("PSF").place("PSF'S").place("PSF'B");
    b.transition("TStruct", TokenLabel{"Struct"});
    b.transition("TBehav", TokenLabel{"Behav"});
    b.arc("PSF", "TStruct").arc("TStruct", "PSF'S");
    b.arc("PSF", "TBehav").arc("TBehav", "PSF'B");
    b.input("PSF").output("PSF");
    Marking initial;
    initial.add("PSF", "Struct");
    initial.add("PSF", "Behav");
    return ChangeTemplate{b.build(), std::move(initial)};
  }();
  return t;
}

const ChangeTemplate& template_for(HandlingChangeKind kind) {
  return is_nonfunctional(kind) ? nonfunctional_template()
                                : functional_template();
}

Net dependability_subnet() {
  return project(nonfunctional_template().net, {"PS", "PS'A", "PS'Re"},
                 {"TA", "TRe"});
}

const std::string& template_transition(HandlingChangeKind kind) {
  static const std::map<HandlingChangeKind, std::string> table = {
      {HandlingChangeKind::AlterAvailability, "TA"},
      {HandlingChangeKind::AlterReliability, "TR"},
      {HandlingChangeKind::AlterCost, "TC"},
      {HandlingChangeKind::AlterResponsiveness, "TRe"},
      {HandlingChangeKind::StructuralRemove, "TStruct"},
      {HandlingChangeKind::StructuralAdd, "TStruct"},
      {HandlingChangeKind::Behavioral, "TBehav"},
  };
  return table.at(kind);
}

namespace {

bool numeric_changed(double before, double after, double deadband) {
  if (before == after) return false;
  if (deadband <= 0) return true;
  double reference = std::max(std::abs(before), std::abs(after));
  return std::abs(after - before) > deadband * reference;
}

HandlingEvent make_event(HandlingChangeKind kind, const ServiceDescriptor& pre,
                         const ServiceDescriptor& post, long tick,
                         std::string operation = {}) {
  HandlingEvent e;
  e.kind = kind;
  e.service_id = pre.id;
  e.pre_snapshot = pre;
  e.post_snapshot = post;
  e.operation = std::move(operation);
  e.tick = tick;
  return e;
}

}  // namespace

std::vector<HandlingEvent> classify(const ServiceDescriptor& pre,
                                    const ServiceDescriptor& post, long tick,
                                    const ClassifyOptions& options) {
  if (pre.id != post.id) {
    throw IdMismatch("classify called with '" + pre.id + "' vs '" + post.id +
                     "'");
  }
  std::vector<HandlingEvent> events;

  // Non-functional kinds, lexicographic by change name.
  if (pre.available != post.available) {
    events.push_back(
        make_event(HandlingChangeKind::AlterAvailability, pre, post, tick));
  }
  if (numeric_changed(pre.cost, post.cost, options.deadband)) {
    events.push_back(
        make_event(HandlingChangeKind::AlterCost, pre, post, tick));
  }
  if (pre.reliable != post.reliable) {
    events.push_back(
        make_event(HandlingChangeKind::AlterReliability, pre, post, tick));
  }
  if (numeric_changed(pre.responsiveness_ms, post.responsiveness_ms,
                      options.deadband)) {
    events.push_back(
        make_event(HandlingChangeKind::AlterResponsiveness, pre, post, tick));
  }

  // Functional changes per operation name; a signature change decomposes into
  // remove followed by add.
  std::set<std::string> names;
  for (const auto& op : pre.operations) names.insert(op.name);
  for (const auto& op : post.operations) names.insert(op.name);
  for (const auto& name : names) {
    const OperationSignature* before = pre.find_operation(name);
    const OperationSignature* after = post.find_operation(name);
    if (before && !after) {
      events.push_back(make_event(HandlingChangeKind::StructuralRemove, pre,
                                  post, tick, name));
    } else if (!before && after) {
      events.push_back(make_event(HandlingChangeKind::StructuralAdd, pre, post,
                                  tick, name));
    } else if (before && after && !(*before == *after)) {
      events.push_back(make_event(HandlingChangeKind::StructuralRemove, pre,
                                  post, tick, name));
      events.push_back(make_event(HandlingChangeKind::StructuralAdd, pre, post,
                                  tick, name));
    }
  }
  return events;
}

Marking fire_theta(const Net& template_net, const Marking& template_marking,
                   const HandlingEvent& event) {
  const std::string& t = template_transition(event.kind);
  if (!template_net.has_transition(t)) {
    throw UnknownTransition("template has no transition recording " +
                            to_string(event.kind));
  }
  return fire(template_net, template_marking, t);
}

AdaptiveEvent map_theta_to_omega(const HandlingEvent& event,
                                 const ChangeContext& context, long tick) {
  if (!context.member_services.count(event.service_id)) {
    throw UnknownService("service '" + event.service_id +
                         "' is not part of the orchestration");
  }
  AdaptiveEvent omega;
  omega.target_service = event.service_id;
  omega.cause = event;
  omega.tick = tick;

  switch (event.kind) {
    case HandlingChangeKind::AlterAvailability:
    case HandlingChangeKind::AlterReliability:
      omega.kind = AdaptiveChangeKind::AlterServiceInstance;
      break;
    case HandlingChangeKind::AlterCost:
    case HandlingChangeKind::AlterResponsiveness:
      omega.kind = AdaptiveChangeKind::AlterState;
      break;
    case HandlingChangeKind::StructuralRemove:
    case HandlingChangeKind::StructuralAdd:
    case HandlingChangeKind::Behavioral: {
      auto it = context.invoked_operations.find(event.service_id);
      bool invoked = it != context.invoked_operations.end() &&
                     it->second.count(event.operation) > 0;
      omega.kind = invoked ? AdaptiveChangeKind::AlterServiceInstance
                           : AdaptiveChangeKind::AlterState;
      break;
    }
  }
  return omega;
}

}  // namespace reconet
