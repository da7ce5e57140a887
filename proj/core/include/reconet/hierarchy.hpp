#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "reconet/marking.hpp"
#include "reconet/net.hpp"

namespace reconet {

// A net whose transitions may be refined by single-entry/single-exit subnets.
// Refinement keys are path-qualified transition ids ("HS", "HS/Diag", ...);
// "/" is the reserved path separator and may not appear in user ids.
class HierarchicalNet {
 public:
  explicit HierarchicalNet(Net root) : root_(std::move(root)) {}

  const Net& root() const { return root_; }
  const std::map<std::string, Net>& refinements() const {
    return refinements_;
  }
  bool refined(const std::string& path) const {
    return refinements_.count(path) > 0;
  }

  // The net hosting the last segment of `path`: the root for a bare id,
  // otherwise the subnet attached at the parent path. Throws
  // UnknownTransition when the parent path does not resolve.
  const Net& host_of(const std::string& path) const;

 private:
  friend HierarchicalNet refine(const HierarchicalNet&, const std::string&,
                                const Net&);
  friend HierarchicalNet refine(const HierarchicalNet&, const std::string&,
                                const HierarchicalNet&);
  Net root_;
  std::map<std::string, Net> refinements_;
};

// Attaches `subnet` to the unrefined transition at `path`. The subnet's input
// and output places become the connection ports; the refined transition is
// eliminated when flattening. Throws UnknownTransition, AlreadyRefined,
// CyclicRefinement or StructuralError (guarded transition, "/" in ids,
// coinciding ports).
HierarchicalNet refine(const HierarchicalNet& hnet, const std::string& path,
                       const Net& subnet);

// Hierarchical overload: the subnet's own refinements are carried over with
// path-prefixed keys. A subnet that contains a net structurally equal to the
// host root is rejected as CyclicRefinement.
HierarchicalNet refine(const HierarchicalNet& hnet, const std::string& path,
                       const HierarchicalNet& subnet);

// Splices every refinement into one flat net, bottom-up. Inner ids are
// path-prefixed ("HS/x"); each refined transition disappears, its input
// places feeding the arcs that left the subnet's entry place and the arcs
// into the subnet's exit place retargeted to its output places. The root's
// interface places are preserved.
Net flatten(const HierarchicalNet& hnet);

// Direct interpreter over the hierarchy; sequences use path-qualified
// transition ids and markings use the same flat ids as flatten(). Serves as
// the independent second route of the flattening-equivalence check.
Marking execute_hierarchical(const HierarchicalNet& hnet,
                             const Marking& marking,
                             std::span<const std::string> sequence);

bool hierarchical_enabled(const HierarchicalNet& hnet, const Marking& marking,
                          const std::string& path);

// All enabled path-qualified transitions, lexicographically ordered.
std::vector<std::string> hierarchical_enabled_transitions(
    const HierarchicalNet& hnet, const Marking& marking);

}  // namespace reconet
