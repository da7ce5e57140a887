#include "reconet/reconfig.hpp"

#include <algorithm>
#include <set>

#include "reconet/errors.hpp"

namespace reconet {

std::string to_string(AdaptiveChangeKind kind) {
  switch (kind) {
    case AdaptiveChangeKind::AlterState:
      return "alterState";
    case AdaptiveChangeKind::AlterServiceInstance:
      return "alterServiceInstance";
    case AdaptiveChangeKind::AlterOrder:
      return "alterOrder";
  }
  return "unknown";
}

bool Fragment::has_node(const std::string& id) const {
  for (const auto& p : places) {
    if (p.id == id) return true;
  }
  for (const auto& t : transitions) {
    if (t.id == id) return true;
  }
  return false;
}

namespace {

std::set<std::string> node_ids(const Fragment& f) {
  std::set<std::string> ids;
  for (const auto& p : f.places) ids.insert(p.id);
  for (const auto& t : f.transitions) ids.insert(t.id);
  return ids;
}

std::set<std::string> place_ids(const Fragment& f) {
  std::set<std::string> ids;
  for (const auto& p : f.places) ids.insert(p.id);
  return ids;
}

}  // namespace

void validate_rule(const RewriteRule& rule) {
  auto match_ids = node_ids(rule.match);
  auto repl_ids = node_ids(rule.replacement);
  if (match_ids.size() !=
      rule.match.places.size() + rule.match.transitions.size()) {
    throw RuleError("rule '" + rule.id + "': duplicate match node ids");
  }
  if (repl_ids.size() !=
      rule.replacement.places.size() + rule.replacement.transitions.size()) {
    throw RuleError("rule '" + rule.id + "': duplicate replacement node ids");
  }
  for (const auto& id : repl_ids) {
    if (match_ids.count(id)) {
      throw RuleError("rule '" + rule.id + "': replacement id '" + id +
                      "' collides with the match");
    }
  }
  for (const Arc& a : rule.match.arcs) {
    if (!match_ids.count(a.source) || !match_ids.count(a.target)) {
      throw RuleError("rule '" + rule.id + "': match arc " + a.source +
                      " -> " + a.target + " leaves the fragment");
    }
  }
  for (const Arc& a : rule.replacement.arcs) {
    if (!repl_ids.count(a.source) || !repl_ids.count(a.target)) {
      throw RuleError("rule '" + rule.id + "': replacement arc " + a.source +
                      " -> " + a.target + " leaves the fragment");
    }
  }
  auto deleted_places = place_ids(rule.match);
  auto created_places = place_ids(rule.replacement);
  for (const auto& [from, to] : rule.token_transfer) {
    if (!deleted_places.count(from)) {
      throw RuleError("rule '" + rule.id + "': transfer source '" + from +
                      "' is not a deleted place");
    }
    if (!created_places.count(to)) {
      throw RuleError("rule '" + rule.id + "': transfer target '" + to +
                      "' is not a created place");
    }
  }
  for (const PortArc& port : rule.port_map) {
    if (!repl_ids.count(port.fragment_node)) {
      throw RuleError("rule '" + rule.id + "': port references unknown node '" +
                      port.fragment_node + "'");
    }
    if (match_ids.count(port.host_node)) {
      throw RuleError("rule '" + rule.id + "': port binds to deleted node '" +
                      port.host_node + "'");
    }
    if (port.weight < 1) {
      throw RuleError("rule '" + rule.id + "': port arc weight < 1");
    }
  }
}

ReconfigurableNet::ReconfigurableNet(Net net, std::vector<RewriteRule> rules,
                                     Marking initial)
    : net_(std::move(net)), initial_(std::move(initial)) {
  for (auto& rule : rules) {
    validate_rule(rule);
    std::string id = rule.id;
    if (id.empty()) throw RuleError("rule with empty id");
    if (!rules_.emplace(id, std::move(rule)).second) {
      throw RuleError("duplicate rule id '" + id + "'");
    }
  }
  for (const auto& [place, bag] : initial_.bags()) {
    if (!net_.has_place(place)) {
      throw StructuralError("initial marking marks unknown place '" + place +
                            "'");
    }
  }
}

const RewriteRule& ReconfigurableNet::rule(const std::string& id) const {
  auto it = rules_.find(id);
  if (it == rules_.end()) throw UnknownRule("unknown rule '" + id + "'");
  return it->second;
}

bool applicable(const ReconfigurableNet& pnac, const RewriteRule& rule,
                const Marking& marking) {
  (void)marking;  // applicability is structural; tokens matter at apply time
  const Net& net = pnac.net();
  for (const auto& p : rule.match.places) {
    if (!net.has_place(p.id)) return false;
  }
  for (const auto& t : rule.match.transitions) {
    if (!net.has_transition(t.id)) return false;
  }
  for (const Arc& a : rule.match.arcs) {
    if (net.arc_weight(a.source, a.target) != a.weight) return false;
  }
  return true;
}

bool applicable(const ReconfigurableNet& pnac, const std::string& rule_id,
                const Marking& marking) {
  return applicable(pnac, pnac.rule(rule_id), marking);
}

std::pair<ReconfigurableNet, Marking> apply_rule(const ReconfigurableNet& pnac,
                                                 const RewriteRule& rule,
                                                 const Marking& marking) {
  validate_rule(rule);
  if (!applicable(pnac, rule, marking)) {
    throw NotApplicable("rule '" + rule.id +
                        "' does not match the current net");
  }
  const Net& net = pnac.net();
  auto removed = node_ids(rule.match);
  if (removed.count(net.input_place()) || removed.count(net.output_place())) {
    throw NotApplicable("rule '" + rule.id +
                        "' would delete an interface place");
  }
  for (const auto& p : rule.replacement.places) {
    if (net.has_node(p.id) && !removed.count(p.id)) {
      throw NotApplicable("rule '" + rule.id + "': replacement place '" +
                          p.id + "' already exists in the host");
    }
  }
  for (const auto& t : rule.replacement.transitions) {
    if (net.has_node(t.id) && !removed.count(t.id)) {
      throw NotApplicable("rule '" + rule.id + "': replacement transition '" +
                          t.id + "' already exists in the host");
    }
  }
  for (const PortArc& port : rule.port_map) {
    if (!net.has_node(port.host_node) || removed.count(port.host_node)) {
      throw NotApplicable("rule '" + rule.id + "': port host node '" +
                          port.host_node + "' is not a surviving node");
    }
  }

  NetBuilder b;
  for (const auto& [id, p] : net.places()) {
    if (!removed.count(id)) b.place(id, p.name);
  }
  for (const auto& [id, t] : net.transitions()) {
    if (!removed.count(id)) b.transition(id, t.guard, t.name);
  }
  for (const auto& p : rule.replacement.places) {
    b.place(p.id, p.name.empty() ? p.id : p.name);
  }
  for (const auto& t : rule.replacement.transitions) {
    b.transition(t.id, t.guard, t.name.empty() ? t.id : t.name);
  }
  for (const Arc& a : net.arcs()) {
    if (!removed.count(a.source) && !removed.count(a.target)) {
      b.arc(a.source, a.target, a.weight);
    }
  }
  for (const Arc& a : rule.replacement.arcs) b.arc(a.source, a.target, a.weight);
  for (const PortArc& port : rule.port_map) {
    if (port.into_fragment) {
      b.arc(port.host_node, port.fragment_node, port.weight);
    } else {
      b.arc(port.fragment_node, port.host_node, port.weight);
    }
  }
  for (const auto& l : net.alphabet()) b.label(l);
  b.input(net.input_place());
  b.output(net.output_place());

  Net next_net = b.build();

  auto transfer = [&](Marking m) {
    for (const auto& p : rule.match.places) {
      if (m.count(p.id) > 0) {
        auto it = rule.token_transfer.find(p.id);
        if (it == rule.token_transfer.end()) {
          throw OrphanedTokens(rule.id, p.id);
        }
        m.transfer_all(p.id, it->second);
      } else {
        m.clear(p.id);
      }
    }
    return m;
  };

  Marking next_marking = transfer(marking);
  Marking next_initial = transfer(pnac.initial());

  std::vector<RewriteRule> carried;
  for (const auto& [id, r] : pnac.rules()) carried.push_back(r);
  ReconfigurableNet next(std::move(next_net), std::move(carried),
                         std::move(next_initial));
  next.generation_ = pnac.generation() + 1;
  return {std::move(next), std::move(next_marking)};
}

AdaptiveChangeKind adaptive_change_kind(const RewriteRule& rule) {
  return rule.omega;
}

}  // namespace reconet
