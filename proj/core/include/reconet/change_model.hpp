#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "reconet/marking.hpp"
#include "reconet/net.hpp"
#include "reconet/reconfig.hpp"

namespace reconet {

struct OperationSignature {
  std::string name;
  std::vector<std::string> inputs;
  std::vector<std::string> outputs;

  friend bool operator==(const OperationSignature&,
                         const OperationSignature&) = default;
};

// Simulated stand-in for a member service's WSDL description plus its
// non-functional attributes.
struct ServiceDescriptor {
  std::string id;
  std::string role_name;
  std::vector<OperationSignature> operations;  // names unique
  bool available = true;
  bool reliable = true;
  double cost = 0.0;
  double responsiveness_ms = 0.0;
  bool critical = false;
  std::vector<std::string> substitutes;  // ordered preference, never own id

  const OperationSignature* find_operation(const std::string& name) const;
  friend bool operator==(const ServiceDescriptor&,
                         const ServiceDescriptor&) = default;
};

// Throws ValidationError on duplicate operation names or self-substitution.
void validate_descriptor(const ServiceDescriptor& d);

// Service-level change kinds. The four non-functional kinds fire the
// non-functional template; the functional kinds fire the functional one.
enum class HandlingChangeKind {
  AlterAvailability,
  AlterReliability,
  AlterCost,
  AlterResponsiveness,
  StructuralRemove,
  StructuralAdd,
  Behavioral,
};

std::string to_string(HandlingChangeKind kind);
bool is_nonfunctional(HandlingChangeKind kind);

// One detected service-level change with before/after snapshots. The
// pre-snapshot is absent for a newly advertised service.
struct HandlingEvent {
  HandlingChangeKind kind = HandlingChangeKind::AlterAvailability;
  std::string service_id;
  std::optional<ServiceDescriptor> pre_snapshot;
  std::optional<ServiceDescriptor> post_snapshot;
  std::string operation;  // structural/behavioral kinds only
  long tick = 0;
};

// The business-level reaction derived from a handling change.
struct AdaptiveEvent {
  AdaptiveChangeKind kind = AdaptiveChangeKind::AlterState;
  std::string target_service;
  HandlingEvent cause;
  long tick = 0;
};

// A change-state template plus its canonical initial marking. Templates are
// per-service state recorders; callers keep one marking per monitored
// service.
struct ChangeTemplate {
  Net net;
  Marking initial;
};

// Five places {PS, PS'A, PS'R, PS'C, PS'Re}, four guarded transitions
// {TA, TR, TC, TRe}; PS starts with one token per non-functional change kind.
const ChangeTemplate& nonfunctional_template();

// Two-branch analogue for functional changes: PSF with {Struct, Behav}
// tokens, transitions TStruct/TBehav into PSF'S/PSF'B.
const ChangeTemplate& functional_template();

// The template whose transitions record `kind`.
const ChangeTemplate& template_for(HandlingChangeKind kind);

// Sub-net of the non-functional template covering service dependability:
// places {PS, PS'A, PS'Re} and transitions {TA, TRe}.
Net dependability_subnet();

// Template transition recording `kind` (e.g. AlterAvailability -> "TA").
const std::string& template_transition(HandlingChangeKind kind);

struct ClassifyOptions {
  // Relative dead-band for numeric attributes; 0 reports any change.
  double deadband = 0.0;
};

// Pure diff of two descriptor snapshots of the same service: one event per
// changed modeled field, non-functional first, then structural per operation
// name (a changed signature decomposes into remove followed by add). Throws
// IdMismatch.
std::vector<HandlingEvent> classify(const ServiceDescriptor& pre,
                                    const ServiceDescriptor& post,
                                    long tick = 0,
                                    const ClassifyOptions& options = {});

// Fires the template transition recording the event's kind. NotEnabled means
// the change kind was already recorded for this service (duplicate event).
Marking fire_theta(const Net& template_net, const Marking& template_marking,
                   const HandlingEvent& event);

// What the orchestration knows about its member services when mapping
// changes.
struct ChangeContext {
  std::set<std::string> member_services;
  std::map<std::string, std::set<std::string>> invoked_operations;
};

// Deterministic mapping table from service-level to business-level changes:
// availability/reliability losses demand a service-instance change;
// cost/responsiveness drifts alter recorded state; functional changes depend
// on whether the affected operation is invoked. Throws UnknownService.
AdaptiveEvent map_theta_to_omega(const HandlingEvent& event,
                                 const ChangeContext& context, long tick);

}  // namespace reconet
