#include "reconet/analysis.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <sstream>

#include "reconet/errors.hpp"
#include "reconet/semantics.hpp"

namespace reconet {

namespace {

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

std::string quote(const std::string& s) { return "\"" + escape(s) + "\""; }

// Two-line DOT label; "\n" is the DOT escape, not a literal newline.
std::string two_line_label(const std::string& top, const std::string& bottom) {
  return "\"" + escape(top) + "\\n" + escape(bottom) + "\"";
}

std::string bag_text(const Marking::Bag& bag) {
  std::string out = "{";
  bool first = true;
  for (const auto& [label, n] : bag) {
    for (int i = 0; i < n; ++i) {
      if (!first) out += ",";
      out += label;
      first = false;
    }
  }
  out += "}";
  return out;
}

}  // namespace

ReachabilitySet reachable(const Net& net, const Marking& initial,
                          std::size_t bound, const CancelToken& cancelled) {
  ReachabilitySet set;
  set.bound = bound;
  if (bound == 0) {
    set.truncated = true;
    return set;
  }
  std::deque<Marking> frontier{initial};
  set.markings.insert(initial);
  while (!frontier.empty()) {
    if (cancelled && cancelled()) {
      set.truncated = true;
      return set;
    }
    Marking current = std::move(frontier.front());
    frontier.pop_front();
    for (const auto& t : enabled_transitions(net, current)) {
      Marking next = fire(net, current, t);
      if (set.markings.count(next)) continue;
      if (set.markings.size() >= bound) {
        set.truncated = true;
        return set;
      }
      set.markings.insert(next);
      frontier.push_back(std::move(next));
    }
  }
  return set;
}

bool UnsafeSpec::holds(const Marking& marking) const {
  for (const auto& c : any_of) {
    int count =
        c.label ? marking.count(c.place, *c.label) : marking.count(c.place);
    if (count >= c.at_least) return true;
  }
  return false;
}

UnsafeSpec default_unsafe_spec() {
  UnsafeSpec spec;
  for (const auto& place : {"PS'A", "PS'R", "PS'C", "PS'Re", "PSF'S", "PSF'B"}) {
    spec.any_of.push_back({place, std::nullopt, 1});
  }
  return spec;
}

Safety classify_safety(const Net& net, const Marking& marking,
                       const UnsafeSpec& spec) {
  (void)net;
  return spec.holds(marking) ? Safety::Unsafe : Safety::Safe;
}

ConsistencyResult check_consistency(const Net& net, const Marking& marking,
                                    std::size_t bound,
                                    const CancelToken& cancelled) {
  const std::string& goal = net.output_place();
  if (marking.marked(goal)) return {true, {}};

  // BFS with predecessor links so a positive verdict carries its witness.
  std::map<Marking, std::pair<Marking, std::string>> parent;
  std::deque<Marking> frontier{marking};
  std::set<Marking> seen{marking};
  bool truncated = false;

  while (!frontier.empty()) {
    if (cancelled && cancelled()) {
      truncated = true;
      break;
    }
    Marking current = std::move(frontier.front());
    frontier.pop_front();
    for (const auto& t : enabled_transitions(net, current)) {
      Marking next = fire(net, current, t);
      if (seen.count(next)) continue;
      if (seen.size() >= bound) {
        truncated = true;
        frontier.clear();
        break;
      }
      parent.emplace(next, std::make_pair(current, t));
      if (next.marked(goal)) {
        ConsistencyResult result;
        result.consistent = true;
        Marking at = next;
        while (!(at == marking)) {
          auto it = parent.find(at);
          result.witness.push_back(it->second.second);
          at = it->second.first;
        }
        std::reverse(result.witness.begin(), result.witness.end());
        return result;
      }
      seen.insert(next);
      frontier.push_back(std::move(next));
    }
  }
  if (truncated) {
    throw BoundExceeded("consistency undecided within " +
                        std::to_string(bound) + " markings");
  }
  return {false, {}};
}

std::string export_dot(const Net& net, const std::optional<Marking>& marking) {
  std::ostringstream out;
  out << "digraph net {\n";
  out << "  rankdir=LR;\n";
  for (const auto& [id, p] : net.places()) {
    out << "  " << quote(id) << " [shape=circle";
    if (marking && marking->count(id) > 0) {
      out << ", label=" << two_line_label(id, bag_text(marking->bag(id)));
    }
    out << "];\n";
  }
  for (const auto& [id, t] : net.transitions()) {
    out << "  " << quote(id) << " [shape=box";
    if (t.guard) out << ", label=" << two_line_label(id, "[" + *t.guard + "]");
    out << "];\n";
  }
  for (const Arc& a : net.arcs()) {
    out << "  " << quote(a.source) << " -> " << quote(a.target);
    if (a.weight != 1) out << " [label=\"" << a.weight << "\"]";
    out << ";\n";
  }
  out << "}\n";
  return out.str();
}

std::string dump_reachability_json(const ReachabilitySet& set) {
  std::ostringstream out;
  out << "{\"bound\":" << set.bound
      << ",\"truncated\":" << (set.truncated ? "true" : "false")
      << ",\"markings\":[";
  bool first_marking = true;
  for (const auto& m : set.markings) {
    if (!first_marking) out << ",";
    first_marking = false;
    out << "{";
    bool first_place = true;
    for (const auto& [place, bag] : m.bags()) {
      if (!first_place) out << ",";
      first_place = false;
      out << quote(place) << ":{";
      bool first_label = true;
      for (const auto& [label, n] : bag) {
        if (!first_label) out << ",";
        first_label = false;
        out << quote(label) << ":" << n;
      }
      out << "}";
    }
    out << "}";
  }
  out << "]}";
  return out.str();
}

}  // namespace reconet
