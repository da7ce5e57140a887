#include "reconet/semantics.hpp"

#include "reconet/errors.hpp"

namespace reconet {

namespace {

// Empty string when enabled, otherwise the first blocking place.
std::string blocking_place(const Net& net, const Marking& marking,
                           const std::string& t) {
  const auto& guard = net.transition(t).guard;
  for (const auto& [place, weight] : net.inputs_of(t)) {
    int available =
        guard ? marking.count(place, *guard) : marking.count(place);
    if (available < weight) return place;
  }
  return {};
}

}  // namespace

bool enabled(const Net& net, const Marking& marking, const std::string& t) {
  return blocking_place(net, marking, t).empty();
}

Marking fire(const Net& net, const Marking& marking, const std::string& t) {
  std::string blocked = blocking_place(net, marking, t);
  if (!blocked.empty()) throw NotEnabled(t, blocked);

  const auto& guard = net.transition(t).guard;
  Marking next = marking;
  for (const auto& [place, weight] : net.inputs_of(t)) {
    if (guard) {
      next.remove(place, *guard, weight);
    } else {
      next.remove_any(place, weight);
    }
  }
  for (const auto& [place, weight] : net.outputs_of(t)) {
    next.add(place, guard ? *guard : kPlainLabel, weight);
  }
  return next;
}

Marking fire_sequence(const Net& net, const Marking& marking,
                      std::span<const std::string> sequence) {
  Marking current = marking;
  for (std::size_t i = 0; i < sequence.size(); ++i) {
    try {
      current = fire(net, current, sequence[i]);
    } catch (const NotEnabled& e) {
      throw NotEnabled(e.transition, e.blocking_place, i);
    }
  }
  return current;
}

std::vector<std::string> enabled_transitions(const Net& net,
                                             const Marking& marking) {
  std::vector<std::string> result;
  for (const auto& [id, t] : net.transitions()) {
    if (enabled(net, marking, id)) result.push_back(id);
  }
  return result;
}

}  // namespace reconet
