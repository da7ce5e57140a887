#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "reconet/marking.hpp"
#include "reconet/net.hpp"

namespace reconet {

// Business-level classification of a rewriting rule.
enum class AdaptiveChangeKind { AlterState, AlterServiceInstance, AlterOrder };

std::string to_string(AdaptiveChangeKind kind);

// A connected piece of net structure: the nodes a rule deletes or creates,
// with the arcs among them. Arcs crossing into the host net are declared as
// ports on the rule.
struct Fragment {
  std::vector<Place> places;
  std::vector<Transition> transitions;
  std::vector<Arc> arcs;

  bool has_node(const std::string& id) const;
};

// Arc between a surviving host node and a replacement node.
struct PortArc {
  std::string host_node;
  std::string fragment_node;
  int weight = 1;
  bool into_fragment = true;  // host -> fragment when true

  friend bool operator==(const PortArc&, const PortArc&) = default;
};

// Replaces the matched fragment (addressed by concrete node ids) with the
// replacement fragment, moving each deleted place's tokens to its transfer
// target.
struct RewriteRule {
  std::string id;
  AdaptiveChangeKind omega = AdaptiveChangeKind::AlterState;
  Fragment match;
  Fragment replacement;
  std::map<std::string, std::string> token_transfer;  // deleted -> created
  std::vector<PortArc> port_map;
};

// Shape validation independent of any host net: fragment arcs stay inside
// their fragment, replacement ids do not collide with match ids, transfer
// endpoints are fragment places. Throws RuleError.
void validate_rule(const RewriteRule& rule);

// A net bundled with its rewriting rules and initial state. Rule
// applications produce new generations; values are immutable.
class ReconfigurableNet {
 public:
  ReconfigurableNet(Net net, std::vector<RewriteRule> rules, Marking initial);

  const Net& net() const { return net_; }
  const std::map<std::string, RewriteRule>& rules() const { return rules_; }
  const RewriteRule& rule(const std::string& id) const;  // UnknownRule
  const Marking& initial() const { return initial_; }
  int generation() const { return generation_; }

 private:
  friend std::pair<ReconfigurableNet, Marking> apply_rule(
      const ReconfigurableNet&, const RewriteRule&, const Marking&);
  Net net_;
  std::map<std::string, RewriteRule> rules_;
  Marking initial_;
  int generation_ = 0;
};

// True iff every match node exists in the host with the declared arcs and
// weights. An empty match is vacuously applicable.
bool applicable(const ReconfigurableNet& pnac, const RewriteRule& rule,
                const Marking& marking);
bool applicable(const ReconfigurableNet& pnac, const std::string& rule_id,
                const Marking& marking);

// Applies the rule: match nodes and their incident arcs are removed, the
// replacement is spliced in through the port arcs, tokens of deleted places
// move to their transfer targets, the generation advances. Throws
// NotApplicable (match absent, interface place deleted, id collision, bad
// port) or OrphanedTokens (marked place deleted without a target).
std::pair<ReconfigurableNet, Marking> apply_rule(const ReconfigurableNet& pnac,
                                                 const RewriteRule& rule,
                                                 const Marking& marking);

AdaptiveChangeKind adaptive_change_kind(const RewriteRule& rule);

}  // namespace reconet
