#pragma once

// Internal nlohmann-level converters shared by json_io.cpp and simenv.cpp.

#include <set>
#include <string>

#include <json.hpp>

#include "reconet/change_model.hpp"
#include "reconet/hierarchy.hpp"
#include "reconet/marking.hpp"
#include "reconet/net.hpp"
#include "reconet/reconfig.hpp"

namespace reconet::json_detail {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& what);
void expect_object(const json& value, const std::string& path);
void expect_keys(const json& object, const std::set<std::string>& allowed,
                 const std::string& path);
const json& require(const json& object, const std::string& key,
                    const std::string& path);
std::string as_string(const json& value, const std::string& path);
bool as_bool(const json& value, const std::string& path);
double as_number(const json& value, const std::string& path);
long as_integer(const json& value, const std::string& path);

json parse_document(const std::string& text);

json net_to(const Net& net);
Net net_from(const json& value, const std::string& path);

json marking_to(const Marking& marking);
Marking marking_from(const json& value, const std::string& path);

json hierarchical_to(const HierarchicalNet& hnet);
HierarchicalNet hierarchical_from(const json& value, const std::string& path);

json rule_to(const RewriteRule& rule);
RewriteRule rule_from(const json& value, const std::string& path);

json operation_to(const OperationSignature& op);
OperationSignature operation_from(const json& value, const std::string& path);

json descriptor_to(const ServiceDescriptor& descriptor);
ServiceDescriptor descriptor_from(const json& value, const std::string& path);

}  // namespace reconet::json_detail
