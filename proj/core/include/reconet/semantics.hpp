#pragma once

#include <span>
#include <string>
#include <vector>

#include "reconet/marking.hpp"
#include "reconet/net.hpp"

namespace reconet {

// True iff every input place of t holds enough tokens: of the guard label for
// a guarded transition, of any labels combined for an unguarded one.
bool enabled(const Net& net, const Marking& marking, const std::string& t);

// Pure firing step: consumes per input arc weight (guard label, or smallest
// labels first when unguarded), produces per output arc weight (guard label,
// or plain). Throws NotEnabled carrying the blocking place.
Marking fire(const Net& net, const Marking& marking, const std::string& t);

// Left fold of fire. NotEnabled carries the failing step index.
Marking fire_sequence(const Net& net, const Marking& marking,
                      std::span<const std::string> sequence);

// Enabled transitions in lexicographic id order.
std::vector<std::string> enabled_transitions(const Net& net,
                                             const Marking& marking);

}  // namespace reconet
