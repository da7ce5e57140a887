#pragma once

#include <compare>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "reconet/marking.hpp"

namespace reconet {

struct Place {
  std::string id;
  std::string name;  // display name, defaults to id

  friend bool operator==(const Place&, const Place&) = default;
};

struct Transition {
  std::string id;
  std::string name;
  // A guarded transition consumes and produces exactly its guard label; an
  // unguarded one consumes any labels and produces plain tokens.
  std::optional<TokenLabel> guard;

  friend bool operator==(const Transition&, const Transition&) = default;
};

struct Arc {
  std::string source;
  std::string target;
  int weight = 1;

  friend bool operator==(const Arc&, const Arc&) = default;
  friend auto operator<=>(const Arc&, const Arc&) = default;
};

// A labeled place/transition net with weighted flow and distinguished
// input/output places. Instances are immutable once built and always satisfy
// the structural conditions checked by NetBuilder::build.
class Net {
 public:
  const std::map<std::string, Place>& places() const { return places_; }
  const std::map<std::string, Transition>& transitions() const {
    return transitions_;
  }
  const std::vector<Arc>& arcs() const { return arcs_; }
  const std::string& input_place() const { return p_in_; }
  const std::string& output_place() const { return p_out_; }
  const std::set<TokenLabel>& alphabet() const { return alphabet_; }

  bool has_place(const std::string& id) const { return places_.count(id) > 0; }
  bool has_transition(const std::string& id) const {
    return transitions_.count(id) > 0;
  }
  bool has_node(const std::string& id) const {
    return has_place(id) || has_transition(id);
  }
  // Throws UnknownTransition.
  const Transition& transition(const std::string& id) const;

  // (place, weight) pairs, ordered by place id.
  const std::vector<std::pair<std::string, int>>& inputs_of(
      const std::string& transition) const;
  const std::vector<std::pair<std::string, int>>& outputs_of(
      const std::string& transition) const;

  int arc_weight(const std::string& source, const std::string& target) const;

  friend bool operator==(const Net& a, const Net& b);

 private:
  friend class NetBuilder;
  Net() = default;

  std::map<std::string, Place> places_;
  std::map<std::string, Transition> transitions_;
  std::vector<Arc> arcs_;  // sorted by (source, target)
  std::string p_in_;
  std::string p_out_;
  std::set<TokenLabel> alphabet_;
  std::map<std::string, std::vector<std::pair<std::string, int>>> pre_;
  std::map<std::string, std::vector<std::pair<std::string, int>>> post_;
};

// Collects places, transitions, arcs and the interface places, then validates
// the whole structure in build(). Violations raise StructuralError naming the
// first failed condition.
class NetBuilder {
 public:
  NetBuilder& place(const std::string& id, const std::string& name = "");
  NetBuilder& transition(const std::string& id,
                         std::optional<TokenLabel> guard = std::nullopt,
                         const std::string& name = "");
  NetBuilder& arc(const std::string& source, const std::string& target,
                  int weight = 1);
  NetBuilder& input(const std::string& place_id);
  NetBuilder& output(const std::string& place_id);
  NetBuilder& label(const TokenLabel& label);

  // Validates: non-empty node set, disjoint place/transition ids, arcs only
  // between a place and a transition with weight >= 1 and existing endpoints,
  // no duplicate arcs, input/output places present, guards drawn from the
  // alphabet (guard labels and "plain" are added implicitly).
  Net build() const;

 private:
  std::vector<Place> places_;
  std::vector<Transition> transitions_;
  std::vector<Arc> arcs_;
  std::string p_in_;
  std::string p_out_;
  std::set<TokenLabel> alphabet_;
};

// Sub-net induced by the kept places/transitions: arcs with both endpoints
// kept survive. The original interface places must be kept.
Net project(const Net& net, const std::set<std::string>& places,
            const std::set<std::string>& transitions);

}  // namespace reconet
