#pragma once

#include <string>

#include "reconet/change_model.hpp"
#include "reconet/hierarchy.hpp"
#include "reconet/marking.hpp"
#include "reconet/net.hpp"
#include "reconet/reconfig.hpp"

namespace reconet {

// JSON shapes: nets keep places/transitions as objects keyed by id, markings
// are {place: {label: count}}. Parsers are strict: unknown keys raise
// ParseError with the offending path.

std::string net_to_json(const Net& net);
Net net_from_json(const std::string& text);

std::string marking_to_json(const Marking& marking);
Marking marking_from_json(const std::string& text);

std::string hierarchical_to_json(const HierarchicalNet& hnet);
HierarchicalNet hierarchical_from_json(const std::string& text);

std::string rule_to_json(const RewriteRule& rule);
RewriteRule rule_from_json(const std::string& text);

std::string descriptor_to_json(const ServiceDescriptor& descriptor);
ServiceDescriptor descriptor_from_json(const std::string& text);

}  // namespace reconet
