#include "reconet/hierarchy.hpp"

#include <algorithm>

#include "reconet/errors.hpp"
#include "reconet/semantics.hpp"

namespace reconet {

namespace {

std::string dirname(const std::string& path) {
  auto pos = path.rfind('/');
  return pos == std::string::npos ? std::string{} : path.substr(0, pos);
}

std::string basename(const std::string& path) {
  auto pos = path.rfind('/');
  return pos == std::string::npos ? path : path.substr(pos + 1);
}

bool ids_have_separator(const Net& net) {
  for (const auto& [id, p] : net.places()) {
    if (id.find('/') != std::string::npos) return true;
  }
  for (const auto& [id, t] : net.transitions()) {
    if (id.find('/') != std::string::npos) return true;
  }
  return false;
}

void check_refinable(const HierarchicalNet& hnet, const std::string& path,
                     const Net& subnet) {
  const Net& host = hnet.host_of(path);
  const std::string id = basename(path);
  if (!host.has_transition(id)) {
    throw UnknownTransition("no transition at path '" + path + "'");
  }
  if (hnet.refined(path)) {
    throw AlreadyRefined("transition at path '" + path +
                         "' is already refined");
  }
  if (host.transition(id).guard) {
    throw StructuralError("guarded transition '" + path +
                          "' cannot be refined");
  }
  if (subnet.input_place() == subnet.output_place()) {
    throw StructuralError(
        "refinement subnet needs distinct input and output places");
  }
  if (ids_have_separator(hnet.root()) || ids_have_separator(subnet)) {
    throw StructuralError("'/' is reserved for path-qualified ids");
  }
}

// Replaces transition `t` of `host` by `sub`, prefixing inner ids with
// "t/". Arcs that entered t now leave from the consumers of sub's entry
// place; arcs that left t are fed by the producers of sub's exit place.
Net splice(const Net& host, const std::string& t, const Net& sub) {
  const std::string prefix = t + "/";
  NetBuilder b;

  for (const auto& [id, p] : host.places()) b.place(id, p.name);
  for (const auto& [id, tr] : host.transitions()) {
    if (id != t) b.transition(id, tr.guard, tr.name);
  }
  for (const auto& [id, p] : sub.places()) {
    if (id == sub.input_place() || id == sub.output_place()) continue;
    b.place(prefix + id, prefix + p.name);
  }
  for (const auto& [id, tr] : sub.transitions()) {
    b.transition(prefix + id, tr.guard, prefix + tr.name);
  }

  std::vector<std::string> entry_places;
  std::vector<std::string> exit_places;
  for (const auto& [p, w] : host.inputs_of(t)) entry_places.push_back(p);
  for (const auto& [p, w] : host.outputs_of(t)) exit_places.push_back(p);

  for (const Arc& a : host.arcs()) {
    if (a.source != t && a.target != t) b.arc(a.source, a.target, a.weight);
  }
  auto map_endpoint = [&](const std::string& id) -> std::vector<std::string> {
    if (id == sub.input_place()) return entry_places;
    if (id == sub.output_place()) return exit_places;
    return {prefix + id};
  };
  for (const Arc& a : sub.arcs()) {
    for (const auto& src : map_endpoint(a.source)) {
      for (const auto& dst : map_endpoint(a.target)) {
        b.arc(src, dst, a.weight);
      }
    }
  }

  for (const auto& l : host.alphabet()) b.label(l);
  for (const auto& l : sub.alphabet()) b.label(l);
  b.input(host.input_place());
  b.output(host.output_place());
  return b.build();
}

Net expand(const HierarchicalNet& hnet, const std::string& path,
           const Net& base) {
  Net current = base;
  for (const auto& [key, sub] : hnet.refinements()) {
    if (dirname(key) != path) continue;
    Net child = expand(hnet, key, sub);
    current = splice(current, basename(key), child);
  }
  return current;
}

// Flat place ids a subnet-local place stands for. Entry/exit places resolve
// through the refined transition's surroundings in the parent net.
std::vector<std::string> resolve_place(const HierarchicalNet& hnet,
                                       const std::string& host_path,
                                       const std::string& place) {
  if (host_path.empty()) return {place};
  const Net& sub = hnet.refinements().at(host_path);
  const std::string refined_id = basename(host_path);
  const std::string parent = dirname(host_path);
  const Net& parent_host = hnet.host_of(host_path);

  std::vector<std::string> result;
  if (place == sub.input_place()) {
    for (const auto& [p, w] : parent_host.inputs_of(refined_id)) {
      auto up = resolve_place(hnet, parent, p);
      result.insert(result.end(), up.begin(), up.end());
    }
  } else if (place == sub.output_place()) {
    for (const auto& [p, w] : parent_host.outputs_of(refined_id)) {
      auto up = resolve_place(hnet, parent, p);
      result.insert(result.end(), up.begin(), up.end());
    }
  } else {
    result.push_back(host_path + "/" + place);
  }
  std::sort(result.begin(), result.end());
  return result;
}

struct EffectiveTransition {
  std::optional<TokenLabel> guard;
  std::vector<std::pair<std::string, int>> inputs;   // flat place, weight
  std::vector<std::pair<std::string, int>> outputs;
};

EffectiveTransition resolve_transition(const HierarchicalNet& hnet,
                                       const std::string& path) {
  const Net& host = hnet.host_of(path);
  const std::string id = basename(path);
  if (!host.has_transition(id)) {
    throw UnknownTransition("no transition at path '" + path + "'");
  }
  if (hnet.refined(path)) {
    throw UnknownTransition("transition at path '" + path +
                            "' is refined and cannot fire directly");
  }
  const std::string dir = dirname(path);
  EffectiveTransition t;
  t.guard = host.transition(id).guard;
  for (const auto& [p, w] : host.inputs_of(id)) {
    for (const auto& fp : resolve_place(hnet, dir, p)) {
      t.inputs.emplace_back(fp, w);
    }
  }
  for (const auto& [p, w] : host.outputs_of(id)) {
    for (const auto& fp : resolve_place(hnet, dir, p)) {
      t.outputs.emplace_back(fp, w);
    }
  }
  return t;
}

std::string effective_blocking_place(const EffectiveTransition& t,
                                     const Marking& marking) {
  std::map<std::string, int> required;
  for (const auto& [place, weight] : t.inputs) required[place] += weight;
  for (const auto& [place, weight] : required) {
    int available =
        t.guard ? marking.count(place, *t.guard) : marking.count(place);
    if (available < weight) return place;
  }
  return {};
}

}  // namespace

const Net& HierarchicalNet::host_of(const std::string& path) const {
  auto pos = path.rfind('/');
  if (pos == std::string::npos) return root_;
  auto it = refinements_.find(path.substr(0, pos));
  if (it == refinements_.end()) {
    throw UnknownTransition("path '" + path +
                            "' does not resolve to a refinement");
  }
  return it->second;
}

HierarchicalNet refine(const HierarchicalNet& hnet, const std::string& path,
                       const Net& subnet) {
  check_refinable(hnet, path, subnet);
  if (subnet == hnet.root()) {
    throw CyclicRefinement("subnet at '" + path + "' equals the root net");
  }
  HierarchicalNet next = hnet;
  next.refinements_.emplace(path, subnet);
  return next;
}

HierarchicalNet refine(const HierarchicalNet& hnet, const std::string& path,
                       const HierarchicalNet& subnet) {
  check_refinable(hnet, path, subnet.root());
  if (subnet.root() == hnet.root()) {
    throw CyclicRefinement("subnet at '" + path + "' equals the root net");
  }
  for (const auto& [key, sub] : subnet.refinements()) {
    if (sub == hnet.root()) {
      throw CyclicRefinement("subnet at '" + path + "/" + key +
                             "' refines back into the root net");
    }
  }
  HierarchicalNet next = hnet;
  next.refinements_.emplace(path, subnet.root());
  for (const auto& [key, sub] : subnet.refinements()) {
    next.refinements_.emplace(path + "/" + key, sub);
  }
  return next;
}

Net flatten(const HierarchicalNet& hnet) {
  return expand(hnet, "", hnet.root());
}

Marking execute_hierarchical(const HierarchicalNet& hnet,
                             const Marking& marking,
                             std::span<const std::string> sequence) {
  Marking current = marking;
  for (std::size_t i = 0; i < sequence.size(); ++i) {
    const std::string& path = sequence[i];
    EffectiveTransition t = resolve_transition(hnet, path);
    std::string blocked = effective_blocking_place(t, current);
    if (!blocked.empty()) throw NotEnabled(path, blocked, i);
    for (const auto& [place, weight] : t.inputs) {
      if (t.guard) {
        current.remove(place, *t.guard, weight);
      } else {
        current.remove_any(place, weight);
      }
    }
    for (const auto& [place, weight] : t.outputs) {
      current.add(place, t.guard ? *t.guard : kPlainLabel, weight);
    }
  }
  return current;
}

bool hierarchical_enabled(const HierarchicalNet& hnet, const Marking& marking,
                          const std::string& path) {
  EffectiveTransition t = resolve_transition(hnet, path);
  return effective_blocking_place(t, marking).empty();
}

std::vector<std::string> hierarchical_enabled_transitions(
    const HierarchicalNet& hnet, const Marking& marking) {
  std::vector<std::string> paths;
  for (const auto& [id, t] : hnet.root().transitions()) {
    if (!hnet.refined(id)) paths.push_back(id);
  }
  for (const auto& [key, sub] : hnet.refinements()) {
    for (const auto& [id, t] : sub.transitions()) {
      std::string path = key + "/" + id;
      if (!hnet.refined(path)) paths.push_back(path);
    }
  }
  std::sort(paths.begin(), paths.end());
  std::vector<std::string> result;
  for (const auto& path : paths) {
    if (hierarchical_enabled(hnet, marking, path)) result.push_back(path);
  }
  return result;
}

}  // namespace reconet
