#include "reconet/json_io.hpp"

#include "json_detail.hpp"
#include "reconet/errors.hpp"

namespace reconet {

namespace json_detail {

void fail(const std::string& path, const std::string& what) {
  throw ParseError(path.empty() ? what : path + ": " + what);
}

void expect_object(const json& value, const std::string& path) {
  if (!value.is_object()) fail(path, "expected an object");
}

void expect_keys(const json& object, const std::set<std::string>& allowed,
                 const std::string& path) {
  expect_object(object, path);
  for (const auto& [key, value] : object.items()) {
    if (!allowed.count(key)) fail(path + "." + key, "unknown key");
  }
}

const json& require(const json& object, const std::string& key,
                    const std::string& path) {
  auto it = object.find(key);
  if (it == object.end()) fail(path, "missing key '" + key + "'");
  return *it;
}

std::string as_string(const json& value, const std::string& path) {
  if (!value.is_string()) fail(path, "expected a string");
  return value.get<std::string>();
}

bool as_bool(const json& value, const std::string& path) {
  if (!value.is_boolean()) fail(path, "expected a boolean");
  return value.get<bool>();
}

double as_number(const json& value, const std::string& path) {
  if (!value.is_number()) fail(path, "expected a number");
  return value.get<double>();
}

long as_integer(const json& value, const std::string& path) {
  if (!value.is_number_integer()) fail(path, "expected an integer");
  return value.get<long>();
}

json parse_document(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
}

json net_to(const Net& net) {
  json places = json::object();
  for (const auto& [id, p] : net.places()) {
    json entry = json::object();
    if (p.name != id) entry["name"] = p.name;
    places[id] = entry;
  }
  json transitions = json::object();
  for (const auto& [id, t] : net.transitions()) {
    json entry = json::object();
    if (t.name != id) entry["name"] = t.name;
    if (t.guard) entry["guard"] = *t.guard;
    transitions[id] = entry;
  }
  json arcs = json::array();
  for (const Arc& a : net.arcs()) {
    json arc = {{"from", a.source}, {"to", a.target}};
    if (a.weight != 1) arc["weight"] = a.weight;
    arcs.push_back(arc);
  }
  json alphabet = json::array();
  for (const auto& l : net.alphabet()) alphabet.push_back(l);
  return json{{"places", places},
              {"transitions", transitions},
              {"arcs", arcs},
              {"alphabet", alphabet},
              {"input", net.input_place()},
              {"output", net.output_place()}};
}

Net net_from(const json& value, const std::string& path) {
  expect_keys(value,
              {"places", "transitions", "arcs", "alphabet", "input", "output"},
              path);
  NetBuilder b;
  const json& places = require(value, "places", path);
  expect_object(places, path + ".places");
  for (const auto& [id, entry] : places.items()) {
    expect_keys(entry, {"name"}, path + ".places." + id);
    std::string name;
    if (entry.contains("name")) {
      name = as_string(entry["name"], path + ".places." + id + ".name");
    }
    b.place(id, name);
  }
  const json& transitions = require(value, "transitions", path);
  expect_object(transitions, path + ".transitions");
  for (const auto& [id, entry] : transitions.items()) {
    expect_keys(entry, {"name", "guard"}, path + ".transitions." + id);
    std::string name;
    if (entry.contains("name")) {
      name = as_string(entry["name"], path + ".transitions." + id + ".name");
    }
    std::optional<TokenLabel> guard;
    if (entry.contains("guard")) {
      guard = as_string(entry["guard"], path + ".transitions." + id + ".guard");
    }
    b.transition(id, guard, name);
  }
  const json& arcs = require(value, "arcs", path);
  if (!arcs.is_array()) fail(path + ".arcs", "expected an array");
  for (std::size_t i = 0; i < arcs.size(); ++i) {
    const std::string arc_path = path + ".arcs[" + std::to_string(i) + "]";
    expect_keys(arcs[i], {"from", "to", "weight"}, arc_path);
    int weight = 1;
    if (arcs[i].contains("weight")) {
      weight = static_cast<int>(as_integer(arcs[i]["weight"],
                                           arc_path + ".weight"));
    }
    b.arc(as_string(require(arcs[i], "from", arc_path), arc_path + ".from"),
          as_string(require(arcs[i], "to", arc_path), arc_path + ".to"),
          weight);
  }
  if (value.contains("alphabet")) {
    const json& alphabet = value["alphabet"];
    if (!alphabet.is_array()) fail(path + ".alphabet", "expected an array");
    for (const auto& l : alphabet) b.label(as_string(l, path + ".alphabet"));
  }
  b.input(as_string(require(value, "input", path), path + ".input"));
  b.output(as_string(require(value, "output", path), path + ".output"));
  try {
    return b.build();
  } catch (const StructuralError& e) {
    throw ValidationError(path + ": " + e.what());
  }
}

json marking_to(const Marking& marking) {
  json out = json::object();
  for (const auto& [place, bag] : marking.bags()) {
    json labels = json::object();
    for (const auto& [label, n] : bag) labels[label] = n;
    out[place] = labels;
  }
  return out;
}

Marking marking_from(const json& value, const std::string& path) {
  expect_object(value, path);
  Marking m;
  for (const auto& [place, bag] : value.items()) {
    expect_object(bag, path + "." + place);
    for (const auto& [label, count] : bag.items()) {
      long n = as_integer(count, path + "." + place + "." + label);
      if (n < 0) fail(path + "." + place + "." + label, "negative count");
      if (n > 0) m.add(place, label, static_cast<int>(n));
    }
  }
  return m;
}

json hierarchical_to(const HierarchicalNet& hnet) {
  json refinements = json::array();
  for (const auto& [path, subnet] : hnet.refinements()) {
    refinements.push_back({{"path", path}, {"subnet", net_to(subnet)}});
  }
  return json{{"root", net_to(hnet.root())}, {"refinements", refinements}};
}

HierarchicalNet hierarchical_from(const json& value, const std::string& path) {
  expect_keys(value, {"root", "refinements"}, path);
  HierarchicalNet hnet(net_from(require(value, "root", path), path + ".root"));
  if (value.contains("refinements")) {
    const json& refinements = value["refinements"];
    if (!refinements.is_array()) {
      fail(path + ".refinements", "expected an array");
    }
    for (std::size_t i = 0; i < refinements.size(); ++i) {
      const std::string rpath =
          path + ".refinements[" + std::to_string(i) + "]";
      expect_keys(refinements[i], {"path", "subnet"}, rpath);
      std::string tpath = as_string(require(refinements[i], "path", rpath),
                                    rpath + ".path");
      Net subnet =
          net_from(require(refinements[i], "subnet", rpath), rpath + ".subnet");
      try {
        hnet = refine(hnet, tpath, subnet);
      } catch (const EngineError& e) {
        throw ValidationError(rpath + ": " + e.what());
      }
    }
  }
  return hnet;
}

namespace {

json fragment_to(const Fragment& fragment) {
  json places = json::object();
  for (const auto& p : fragment.places) {
    json entry = json::object();
    if (!p.name.empty() && p.name != p.id) entry["name"] = p.name;
    places[p.id] = entry;
  }
  json transitions = json::object();
  for (const auto& t : fragment.transitions) {
    json entry = json::object();
    if (!t.name.empty() && t.name != t.id) entry["name"] = t.name;
    if (t.guard) entry["guard"] = *t.guard;
    transitions[t.id] = entry;
  }
  json arcs = json::array();
  for (const Arc& a : fragment.arcs) {
    json arc = {{"from", a.source}, {"to", a.target}};
    if (a.weight != 1) arc["weight"] = a.weight;
    arcs.push_back(arc);
  }
  return json{{"places", places}, {"transitions", transitions},
              {"arcs", arcs}};
}

Fragment fragment_from(const json& value, const std::string& path) {
  expect_keys(value, {"places", "transitions", "arcs"}, path);
  Fragment fragment;
  if (value.contains("places")) {
    expect_object(value["places"], path + ".places");
    for (const auto& [id, entry] : value["places"].items()) {
      expect_keys(entry, {"name"}, path + ".places." + id);
      std::string name = id;
      if (entry.contains("name")) {
        name = as_string(entry["name"], path + ".places." + id + ".name");
      }
      fragment.places.push_back({id, name});
    }
  }
  if (value.contains("transitions")) {
    expect_object(value["transitions"], path + ".transitions");
    for (const auto& [id, entry] : value["transitions"].items()) {
      expect_keys(entry, {"name", "guard"}, path + ".transitions." + id);
      std::string name = id;
      if (entry.contains("name")) {
        name = as_string(entry["name"], path + ".transitions." + id + ".name");
      }
      std::optional<TokenLabel> guard;
      if (entry.contains("guard")) {
        guard =
            as_string(entry["guard"], path + ".transitions." + id + ".guard");
      }
      fragment.transitions.push_back({id, name, guard});
    }
  }
  if (value.contains("arcs")) {
    const json& arcs = value["arcs"];
    if (!arcs.is_array()) fail(path + ".arcs", "expected an array");
    for (std::size_t i = 0; i < arcs.size(); ++i) {
      const std::string arc_path = path + ".arcs[" + std::to_string(i) + "]";
      expect_keys(arcs[i], {"from", "to", "weight"}, arc_path);
      int weight = 1;
      if (arcs[i].contains("weight")) {
        weight = static_cast<int>(as_integer(arcs[i]["weight"],
                                             arc_path + ".weight"));
      }
      fragment.arcs.push_back(
          {as_string(require(arcs[i], "from", arc_path), arc_path + ".from"),
           as_string(require(arcs[i], "to", arc_path), arc_path + ".to"),
           weight});
    }
  }
  return fragment;
}

AdaptiveChangeKind omega_from(const std::string& text,
                              const std::string& path) {
  if (text == "alterState") return AdaptiveChangeKind::AlterState;
  if (text == "alterServiceInstance") {
    return AdaptiveChangeKind::AlterServiceInstance;
  }
  if (text == "alterOrder") return AdaptiveChangeKind::AlterOrder;
  fail(path, "unknown adaptive change kind '" + text + "'");
}

}  // namespace

json rule_to(const RewriteRule& rule) {
  json ports = json::array();
  for (const PortArc& p : rule.port_map) {
    json port = {{"host", p.host_node},
                 {"node", p.fragment_node},
                 {"direction", p.into_fragment ? "in" : "out"}};
    if (p.weight != 1) port["weight"] = p.weight;
    ports.push_back(port);
  }
  json transfer = json::object();
  for (const auto& [from, to] : rule.token_transfer) transfer[from] = to;
  return json{{"id", rule.id},
              {"omega_kind", to_string(rule.omega)},
              {"match", fragment_to(rule.match)},
              {"replacement", fragment_to(rule.replacement)},
              {"token_transfer", transfer},
              {"port_map", ports}};
}

RewriteRule rule_from(const json& value, const std::string& path) {
  expect_keys(value,
              {"id", "omega_kind", "match", "replacement", "token_transfer",
               "port_map"},
              path);
  RewriteRule rule;
  rule.id = as_string(require(value, "id", path), path + ".id");
  rule.omega = omega_from(
      as_string(require(value, "omega_kind", path), path + ".omega_kind"),
      path + ".omega_kind");
  if (value.contains("match")) {
    rule.match = fragment_from(value["match"], path + ".match");
  }
  if (value.contains("replacement")) {
    rule.replacement = fragment_from(value["replacement"], path + ".replacement");
  }
  if (value.contains("token_transfer")) {
    expect_object(value["token_transfer"], path + ".token_transfer");
    for (const auto& [from, to] : value["token_transfer"].items()) {
      rule.token_transfer[from] =
          as_string(to, path + ".token_transfer." + from);
    }
  }
  if (value.contains("port_map")) {
    const json& ports = value["port_map"];
    if (!ports.is_array()) fail(path + ".port_map", "expected an array");
    for (std::size_t i = 0; i < ports.size(); ++i) {
      const std::string ppath = path + ".port_map[" + std::to_string(i) + "]";
      expect_keys(ports[i], {"host", "node", "weight", "direction"}, ppath);
      PortArc port;
      port.host_node =
          as_string(require(ports[i], "host", ppath), ppath + ".host");
      port.fragment_node =
          as_string(require(ports[i], "node", ppath), ppath + ".node");
      if (ports[i].contains("weight")) {
        port.weight = static_cast<int>(as_integer(ports[i]["weight"],
                                                  ppath + ".weight"));
      }
      std::string direction = as_string(
          require(ports[i], "direction", ppath), ppath + ".direction");
      if (direction == "in") {
        port.into_fragment = true;
      } else if (direction == "out") {
        port.into_fragment = false;
      } else {
        fail(ppath + ".direction", "expected \"in\" or \"out\"");
      }
      rule.port_map.push_back(port);
    }
  }
  try {
    validate_rule(rule);
  } catch (const RuleError& e) {
    throw ValidationError(path + ": " + e.what());
  }
  return rule;
}

json operation_to(const OperationSignature& op) {
  return json{{"name", op.name}, {"inputs", op.inputs},
              {"outputs", op.outputs}};
}

OperationSignature operation_from(const json& value, const std::string& path) {
  expect_keys(value, {"name", "inputs", "outputs"}, path);
  OperationSignature op;
  op.name = as_string(require(value, "name", path), path + ".name");
  for (const auto& key : {"inputs", "outputs"}) {
    if (!value.contains(key)) continue;
    if (!value[key].is_array()) {
      fail(path + "." + key, "expected an array");
    }
    auto& target = std::string(key) == "inputs" ? op.inputs : op.outputs;
    for (const auto& item : value[key]) {
      target.push_back(as_string(item, path + "." + key));
    }
  }
  return op;
}

json descriptor_to(const ServiceDescriptor& d) {
  json operations = json::array();
  for (const auto& op : d.operations) operations.push_back(operation_to(op));
  return json{{"id", d.id},
              {"role", d.role_name},
              {"operations", operations},
              {"available", d.available},
              {"reliable", d.reliable},
              {"cost", d.cost},
              {"responsiveness_ms", d.responsiveness_ms},
              {"critical", d.critical},
              {"substitutes", d.substitutes}};
}

ServiceDescriptor descriptor_from(const json& value, const std::string& path) {
  expect_keys(value,
              {"id", "role", "operations", "available", "reliable", "cost",
               "responsiveness_ms", "critical", "substitutes"},
              path);
  ServiceDescriptor d;
  d.id = as_string(require(value, "id", path), path + ".id");
  if (value.contains("role")) {
    d.role_name = as_string(value["role"], path + ".role");
  }
  if (value.contains("operations")) {
    if (!value["operations"].is_array()) {
      fail(path + ".operations", "expected an array");
    }
    for (std::size_t i = 0; i < value["operations"].size(); ++i) {
      d.operations.push_back(
          operation_from(value["operations"][i],
                         path + ".operations[" + std::to_string(i) + "]"));
    }
  }
  if (value.contains("available")) {
    d.available = as_bool(value["available"], path + ".available");
  }
  if (value.contains("reliable")) {
    d.reliable = as_bool(value["reliable"], path + ".reliable");
  }
  if (value.contains("cost")) {
    d.cost = as_number(value["cost"], path + ".cost");
  }
  if (value.contains("responsiveness_ms")) {
    d.responsiveness_ms =
        as_number(value["responsiveness_ms"], path + ".responsiveness_ms");
  }
  if (value.contains("critical")) {
    d.critical = as_bool(value["critical"], path + ".critical");
  }
  if (value.contains("substitutes")) {
    if (!value["substitutes"].is_array()) {
      fail(path + ".substitutes", "expected an array");
    }
    for (const auto& s : value["substitutes"]) {
      d.substitutes.push_back(as_string(s, path + ".substitutes"));
    }
  }
  try {
    validate_descriptor(d);
  } catch (const ValidationError& e) {
    throw ValidationError(path + ": " + e.what());
  }
  return d;
}

}  // namespace json_detail

namespace {
constexpr int kIndent = 2;
}

std::string net_to_json(const Net& net) {
  return json_detail::net_to(net).dump(kIndent);
}

Net net_from_json(const std::string& text) {
  return json_detail::net_from(json_detail::parse_document(text), "net");
}

std::string marking_to_json(const Marking& marking) {
  return json_detail::marking_to(marking).dump(kIndent);
}

Marking marking_from_json(const std::string& text) {
  return json_detail::marking_from(json_detail::parse_document(text),
                                   "marking");
}

std::string hierarchical_to_json(const HierarchicalNet& hnet) {
  return json_detail::hierarchical_to(hnet).dump(kIndent);
}

HierarchicalNet hierarchical_from_json(const std::string& text) {
  return json_detail::hierarchical_from(json_detail::parse_document(text),
                                        "process");
}

std::string rule_to_json(const RewriteRule& rule) {
  return json_detail::rule_to(rule).dump(kIndent);
}

RewriteRule rule_from_json(const std::string& text) {
  return json_detail::rule_from(json_detail::parse_document(text), "rule");
}

std::string descriptor_to_json(const ServiceDescriptor& descriptor) {
  return json_detail::descriptor_to(descriptor).dump(kIndent);
}

ServiceDescriptor descriptor_from_json(const std::string& text) {
  return json_detail::descriptor_from(json_detail::parse_document(text),
                                      "service");
}

}  // namespace reconet
