#include "reconet/errors.hpp"

namespace reconet {

namespace {

std::string not_enabled_message(const std::string& transition,
                                const std::string& blocking_place,
                                std::size_t step) {
  std::string msg = "transition '" + transition + "' is not enabled";
  if (!blocking_place.empty()) {
    msg += " (blocked at place '" + blocking_place + "')";
  }
  if (step != NotEnabled::kNoStep) {
    msg += " at sequence index " + std::to_string(step);
  }
  return msg;
}

}  // namespace

NotEnabled::NotEnabled(const std::string& transition,
                       const std::string& blocking_place, std::size_t step)
    : EngineError(not_enabled_message(transition, blocking_place, step)),
      transition(transition),
      blocking_place(blocking_place),
      step(step) {}

OrphanedTokens::OrphanedTokens(const std::string& rule_id,
                               const std::string& place)
    : EngineError("rule '" + rule_id + "' deletes marked place '" + place +
                  "' without a token transfer target"),
      rule_id(rule_id),
      place(place) {}

}  // namespace reconet
