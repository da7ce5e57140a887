#pragma once

#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "reconet/marking.hpp"
#include "reconet/net.hpp"

namespace reconet {

inline constexpr std::size_t kDefaultExplorationBound = 100000;

// Breadth-first closure under firing, up to `bound` distinct markings.
struct ReachabilitySet {
  std::set<Marking> markings;
  std::size_t bound = kDefaultExplorationBound;
  bool truncated = false;
};

// Cooperative cancellation: returning true aborts the exploration, which then
// reports truncation.
using CancelToken = std::function<bool()>;

ReachabilitySet reachable(const Net& net, const Marking& initial,
                          std::size_t bound = kDefaultExplorationBound,
                          const CancelToken& cancelled = {});

// Marking predicate in disjunctive form: the marking is unsafe as soon as one
// condition holds.
struct UnsafeCondition {
  std::string place;
  std::optional<TokenLabel> label;  // any label when absent
  int at_least = 1;
};

struct UnsafeSpec {
  std::vector<UnsafeCondition> any_of;

  bool holds(const Marking& marking) const;
};

// Post-change template places; the shipped default predicate.
UnsafeSpec default_unsafe_spec();

enum class Safety { Safe, Unsafe };

Safety classify_safety(const Net& net, const Marking& marking,
                       const UnsafeSpec& spec);

struct ConsistencyResult {
  bool consistent = false;
  // A firing sequence reaching the output place, present iff consistent.
  std::vector<std::string> witness;
};

// True iff some marking reachable within `bound` puts a token in the net's
// output place. Throws BoundExceeded when the search is truncated before any
// verdict (indeterminate, distinct from false).
ConsistencyResult check_consistency(const Net& net, const Marking& marking,
                                    std::size_t bound = kDefaultExplorationBound,
                                    const CancelToken& cancelled = {});

// Deterministic DOT rendering: places as circles annotated with their token
// bags, transitions as boxes, weights > 1 as edge labels.
std::string export_dot(const Net& net,
                       const std::optional<Marking>& marking = std::nullopt);

std::string dump_reachability_json(const ReachabilitySet& set);

}  // namespace reconet
