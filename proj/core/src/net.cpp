#include "reconet/net.hpp"

#include <algorithm>

#include "reconet/errors.hpp"

namespace reconet {

namespace {

const std::vector<std::pair<std::string, int>> kNoArcs;

bool valid_id(const std::string& id) {
  if (id.empty()) return false;
  return id.find_first_of(" \t\n\r") == std::string::npos;
}

}  // namespace

const Transition& Net::transition(const std::string& id) const {
  auto it = transitions_.find(id);
  if (it == transitions_.end()) {
    throw UnknownTransition("unknown transition '" + id + "'");
  }
  return it->second;
}

const std::vector<std::pair<std::string, int>>& Net::inputs_of(
    const std::string& transition) const {
  auto it = pre_.find(transition);
  return it == pre_.end() ? kNoArcs : it->second;
}

const std::vector<std::pair<std::string, int>>& Net::outputs_of(
    const std::string& transition) const {
  auto it = post_.find(transition);
  return it == post_.end() ? kNoArcs : it->second;
}

int Net::arc_weight(const std::string& source,
                    const std::string& target) const {
  auto it = std::lower_bound(
      arcs_.begin(), arcs_.end(), std::make_pair(source, target),
      [](const Arc& a, const std::pair<std::string, std::string>& key) {
        return std::tie(a.source, a.target) < std::tie(key.first, key.second);
      });
  if (it != arcs_.end() && it->source == source && it->target == target) {
    return it->weight;
  }
  return 0;
}

bool operator==(const Net& a, const Net& b) {
  return a.places_ == b.places_ && a.transitions_ == b.transitions_ &&
         a.arcs_ == b.arcs_ && a.p_in_ == b.p_in_ && a.p_out_ == b.p_out_ &&
         a.alphabet_ == b.alphabet_;
}

NetBuilder& NetBuilder::place(const std::string& id, const std::string& name) {
  places_.push_back({id, name.empty() ? id : name});
  return *this;
}

NetBuilder& NetBuilder::transition(const std::string& id,
                                   std::optional<TokenLabel> guard,
                                   const std::string& name) {
  transitions_.push_back({id, name.empty() ? id : name, std::move(guard)});
  return *this;
}

NetBuilder& NetBuilder::arc(const std::string& source,
                            const std::string& target, int weight) {
  arcs_.push_back({source, target, weight});
  return *this;
}

NetBuilder& NetBuilder::input(const std::string& place_id) {
  p_in_ = place_id;
  return *this;
}

NetBuilder& NetBuilder::output(const std::string& place_id) {
  p_out_ = place_id;
  return *this;
}

NetBuilder& NetBuilder::label(const TokenLabel& label) {
  alphabet_.insert(label);
  return *this;
}

Net NetBuilder::build() const {
  if (places_.empty() && transitions_.empty()) {
    throw StructuralError("net has no places and no transitions");
  }

  Net net;
  for (const auto& p : places_) {
    if (!valid_id(p.id)) {
      throw StructuralError("invalid place id '" + p.id + "'");
    }
    if (!net.places_.emplace(p.id, p).second) {
      throw StructuralError("duplicate place id '" + p.id + "'");
    }
  }
  for (const auto& t : transitions_) {
    if (!valid_id(t.id)) {
      throw StructuralError("invalid transition id '" + t.id + "'");
    }
    if (net.places_.count(t.id)) {
      throw StructuralError("id '" + t.id +
                            "' is used as both place and transition");
    }
    if (!net.transitions_.emplace(t.id, t).second) {
      throw StructuralError("duplicate transition id '" + t.id + "'");
    }
  }

  net.arcs_ = arcs_;
  std::sort(net.arcs_.begin(), net.arcs_.end());
  for (std::size_t i = 0; i < net.arcs_.size(); ++i) {
    const Arc& a = net.arcs_[i];
    if (a.weight < 1) {
      throw StructuralError("arc " + a.source + " -> " + a.target +
                            " has weight " + std::to_string(a.weight));
    }
    bool src_place = net.places_.count(a.source) > 0;
    bool src_trans = net.transitions_.count(a.source) > 0;
    bool dst_place = net.places_.count(a.target) > 0;
    bool dst_trans = net.transitions_.count(a.target) > 0;
    if (!src_place && !src_trans) {
      throw StructuralError("arc source '" + a.source + "' does not exist");
    }
    if (!dst_place && !dst_trans) {
      throw StructuralError("arc target '" + a.target + "' does not exist");
    }
    if (src_place == dst_place) {
      throw StructuralError("arc " + a.source + " -> " + a.target +
                            " must connect a place and a transition");
    }
    if (i > 0 && net.arcs_[i - 1].source == a.source &&
        net.arcs_[i - 1].target == a.target) {
      throw StructuralError("duplicate arc " + a.source + " -> " + a.target);
    }
  }

  if (p_in_.empty() || !net.places_.count(p_in_)) {
    throw StructuralError("input place '" + p_in_ + "' is not a place");
  }
  if (p_out_.empty() || !net.places_.count(p_out_)) {
    throw StructuralError("output place '" + p_out_ + "' is not a place");
  }
  net.p_in_ = p_in_;
  net.p_out_ = p_out_;

  net.alphabet_ = alphabet_;
  net.alphabet_.insert(kPlainLabel);
  for (const auto& [id, t] : net.transitions_) {
    if (t.guard) net.alphabet_.insert(*t.guard);
  }

  for (const Arc& a : net.arcs_) {
    if (net.transitions_.count(a.target)) {
      net.pre_[a.target].emplace_back(a.source, a.weight);
    } else {
      net.post_[a.source].emplace_back(a.target, a.weight);
    }
  }
  return net;
}

Net project(const Net& net, const std::set<std::string>& places,
            const std::set<std::string>& transitions) {
  NetBuilder b;
  for (const auto& id : places) {
    auto it = net.places().find(id);
    if (it == net.places().end()) {
      throw UnknownPlace("projection keeps unknown place '" + id + "'");
    }
    b.place(it->second.id, it->second.name);
  }
  for (const auto& id : transitions) {
    auto it = net.transitions().find(id);
    if (it == net.transitions().end()) {
      throw UnknownTransition("projection keeps unknown transition '" + id +
                              "'");
    }
    b.transition(it->second.id, it->second.guard, it->second.name);
  }
  for (const Arc& a : net.arcs()) {
    bool keep_src = places.count(a.source) || transitions.count(a.source);
    bool keep_dst = places.count(a.target) || transitions.count(a.target);
    if (keep_src && keep_dst) b.arc(a.source, a.target, a.weight);
  }
  for (const auto& l : net.alphabet()) b.label(l);
  b.input(net.input_place());
  b.output(net.output_place());
  return b.build();
}

}  // namespace reconet
