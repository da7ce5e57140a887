#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "reconet/analysis.hpp"
#include "reconet/errors.hpp"
#include "reconet/reaction.hpp"
#include "reconet/semantics.hpp"

using namespace reconet;

namespace {

// start -> go -> SS.in -> SS -> FS.in -> FS -> done
Net mini_orchestration() {
  NetBuilder b;
  b.place("start").place("SS.in").place("FS.in").place("done");
  b.transition("go").transition("SS").transition("FS");
  b.arc("start", "go").arc("go", "SS.in");
  b.arc("SS.in", "SS").arc("SS", "FS.in");
  b.arc("FS.in", "FS").arc("FS", "done");
  b.input("start").output("done");
  return b.build();
}

ServiceDescriptor descriptor(const std::string& id, const std::string& role,
                             double cost = 10, bool critical = false) {
  ServiceDescriptor d;
  d.id = id;
  d.role_name = role;
  d.operations = {{"call", {"x"}, {"y"}}};
  d.cost = cost;
  d.critical = critical;
  return d;
}

OrchestrationState make_state(std::vector<RewriteRule> rules = {}) {
  Marking initial;
  initial.add("start", kPlainLabel);
  OrchestrationBindings bindings;
  bindings.fragments["SS"] = {{"SS.in"}, {"SS"}};
  bindings.fragments["FS"] = {{"FS.in"}, {"FS"}};
  bindings.invoked_operations["SS"] = {"call"};
  bindings.invoked_operations["FS"] = {"call"};
  return OrchestrationState{
      .pnac = ReconfigurableNet(mini_orchestration(), std::move(rules), initial),
      .marking = initial,
      .status = RunStatus::Running,
      .paused = std::nullopt,
      .trace = {},
      .backups = {},
      .bindings = std::move(bindings)};
}

DetectionRecord availability_record(const std::string& id,
                                    const ServiceDescriptor& before,
                                    long tick = 10) {
  HandlingEvent e;
  e.kind = HandlingChangeKind::AlterAvailability;
  e.service_id = id;
  e.pre_snapshot = before;
  ServiceDescriptor after = before;
  after.available = false;
  e.post_snapshot = after;
  e.tick = tick;
  DetectionRecord r;
  r.event = std::move(e);
  r.template_transition = "TA";
  r.tick = tick;
  return r;
}

DetectionRecord advertisement_record(const ServiceDescriptor& fresh,
                                     long tick = 5) {
  HandlingEvent e;
  e.kind = HandlingChangeKind::StructuralAdd;
  e.service_id = fresh.id;
  e.post_snapshot = fresh;
  e.tick = tick;
  DetectionRecord r;
  r.event = std::move(e);
  r.template_transition = "TStruct";
  r.tick = tick;
  return r;
}

DetectionRecord cost_record(const std::string& id,
                            const ServiceDescriptor& before, double new_cost,
                            long tick = 10) {
  HandlingEvent e;
  e.kind = HandlingChangeKind::AlterCost;
  e.service_id = id;
  e.pre_snapshot = before;
  ServiceDescriptor after = before;
  after.cost = new_cost;
  e.post_snapshot = after;
  e.tick = tick;
  DetectionRecord r;
  r.event = std::move(e);
  r.template_transition = "TC";
  r.tick = tick;
  return r;
}

struct FakeDirectory : MemberDirectory {
  std::map<std::string, bool> alive_map;
  bool alive(const std::string& id) const override {
    auto it = alive_map.find(id);
    return it != alive_map.end() && it->second;
  }
  std::optional<ServiceDescriptor> refresh(
      const std::string&) const override {
    return std::nullopt;
  }
  std::vector<std::string> roster() const override { return {}; }
};

bool consistent(const OrchestrationState& state) {
  return check_consistency(state.pnac.net(), state.marking).consistent;
}

int count_lines(const OrchestrationState& state, const std::string& needle) {
  int n = 0;
  for (const auto& line : state.trace) {
    if (line.find(needle) != std::string::npos) ++n;
  }
  return n;
}

}  // namespace

TEST_CASE("synthesized substitution rule swaps the fragment in place") {
  Net net = mini_orchestration();
  ServiceBinding binding{{"SS.in"}, {"SS"}};
  RewriteRule rule =
      synthesize_substitution_rule(net, binding, "SS", descriptor("SS2", "x"));
  CHECK(rule.match.places.size() == 1);
  CHECK(rule.match.transitions.size() == 1);
  CHECK(rule.token_transfer.at("SS.in") == "SS2.in");
  CHECK(rule.omega == AdaptiveChangeKind::AlterServiceInstance);

  Marking mid;
  mid.add("SS.in", kPlainLabel);
  ReconfigurableNet pnac(net, {}, Marking{});
  auto [after, marking] = apply_rule(pnac, rule, mid);
  CHECK(marking.count("SS2.in", kPlainLabel) == 1);
  CHECK(marking.total() == mid.total());
  CHECK(after.net().arc_weight("go", "SS2.in") == 1);
  CHECK(after.net().arc_weight("SS2", "FS.in") == 1);
  CHECK_FALSE(after.net().has_transition("SS"));
  Marking done = fire_sequence(after.net(), marking,
                               std::vector<std::string>{"SS2", "FS"});
  CHECK(done.marked("done"));
}

TEST_CASE("synthesize_substitution_rule needs the fragment present") {
  Net net = mini_orchestration();
  ServiceBinding ghost{{"GS.in"}, {"GS"}};
  CHECK_THROWS_AS(
      synthesize_substitution_rule(net, ghost, "GS", descriptor("X", "r")),
      FragmentNotFound);
}

TEST_CASE("synthesized removal rule bridges with a bypass") {
  Net net = mini_orchestration();
  RewriteRule rule = synthesize_removal_rule(net, {{"SS.in"}, {"SS"}}, "SS");
  Marking mid;
  mid.add("SS.in", kPlainLabel);
  auto [after, marking] = apply_rule(ReconfigurableNet(net, {}, Marking{}),
                                     rule, mid);
  CHECK(marking.count("SS.bypass", kPlainLabel) == 1);
  Marking done = fire_sequence(after.net(), marking,
                               std::vector<std::string>{"SS.skip", "FS"});
  CHECK(done.marked("done"));
}

TEST_CASE("react substitutes a failed service when an equivalent exists") {
  OrchestrationState state = make_state();
  ServiceDescriptor ss = descriptor("SS", "SpecialistService");
  ss.substitutes = {"SS2"};
  Catalog catalog{{"SS", ss},
                  {"SS2", descriptor("SS2", "SpecialistService")},
                  {"FS", descriptor("FS", "FinancialService")}};

  OrchestrationState after =
      react(state, availability_record("SS", ss), {}, catalog, 10);
  CHECK(after.status == RunStatus::Running);
  CHECK(after.pnac.generation() == 1);
  CHECK(after.pnac.net().has_transition("SS2"));
  CHECK(after.bindings.fragments.count("SS2") == 1);
  CHECK(after.bindings.fragments.count("SS") == 0);
  CHECK(after.bindings.invoked_operations.at("SS2") ==
        std::set<std::string>{"call"});
  CHECK(consistent(after));
  REQUIRE(after.trace.size() == 1);
  CHECK(after.trace[0].find("action=substitute") != std::string::npos);
  CHECK(after.trace[0].find("service=SS") != std::string::npos);
  CHECK(after.trace[0].find("with=SS2") != std::string::npos);
  CHECK(after.trace[0].find("cause=SS/alterAvailability@10") !=
        std::string::npos);
}

TEST_CASE("substitution skips non-equivalent candidates") {
  OrchestrationState state = make_state();
  ServiceDescriptor ss = descriptor("SS", "SpecialistService");
  ss.substitutes = {"WrongRole", "MissingOp", "Good"};

  ServiceDescriptor wrong_role = descriptor("WrongRole", "OtherRole");
  ServiceDescriptor missing_op = descriptor("MissingOp", "SpecialistService");
  missing_op.operations = {{"other", {}, {}}};
  ServiceDescriptor good = descriptor("Good", "SpecialistService");

  Catalog catalog{{"SS", ss},
                  {"WrongRole", wrong_role},
                  {"MissingOp", missing_op},
                  {"Good", good}};
  OrchestrationState after =
      react(state, availability_record("SS", ss), {}, catalog, 10);
  CHECK(after.trace[0].find("with=Good") != std::string::npos);
}

TEST_CASE("substitution strategies order the equivalent candidates") {
  ServiceDescriptor ss = descriptor("SS", "SpecialistService");
  ss.substitutes = {"Pricey", "Cheap"};
  Catalog catalog{{"SS", ss},
                  {"Pricey", descriptor("Pricey", "SpecialistService", 90)},
                  {"Cheap", descriptor("Cheap", "SpecialistService", 2)}};

  ReactionPolicy first{3, SubstitutionStrategy::FirstListed};
  OrchestrationState a =
      react(make_state(), availability_record("SS", ss), first, catalog, 10);
  CHECK(a.trace[0].find("with=Pricey") != std::string::npos);

  ReactionPolicy cheapest{3, SubstitutionStrategy::LowestCost};
  OrchestrationState b = react(make_state(), availability_record("SS", ss),
                               cheapest, catalog, 10);
  CHECK(b.trace[0].find("with=Cheap") != std::string::npos);
}

TEST_CASE("an unavailable substitute is not considered") {
  OrchestrationState state = make_state();
  ServiceDescriptor ss = descriptor("SS", "SpecialistService");
  ss.substitutes = {"SS2"};
  ServiceDescriptor ss2 = descriptor("SS2", "SpecialistService");
  ss2.available = false;
  Catalog catalog{{"SS", ss}, {"SS2", ss2}};
  OrchestrationState after =
      react(state, availability_record("SS", ss), {}, catalog, 10);
  // non-critical and no substitute: the fragment is bypassed
  CHECK(after.trace[0].find("action=remove") != std::string::npos);
}

TEST_CASE("react pauses on a critical service with no substitute") {
  OrchestrationState state = make_state();
  ServiceDescriptor ss = descriptor("SS", "SpecialistService", 10, true);
  Catalog catalog{{"SS", ss}};
  OrchestrationState after =
      react(state, availability_record("SS", ss), {}, catalog, 10);
  CHECK(after.status == RunStatus::Paused);
  REQUIRE(after.paused);
  CHECK(after.paused->service == "SS");
  CHECK(after.paused->heartbeats_used == 0);
  CHECK(after.paused->paused_at_tick == 10);
  CHECK(count_lines(after, "action=pause") == 1);
  CHECK(after.pnac.generation() == 0);
}

TEST_CASE("react bypasses a non-critical service with no substitute") {
  OrchestrationState state = make_state();
  ServiceDescriptor ss = descriptor("SS", "SpecialistService");
  Catalog catalog{{"SS", ss}};
  OrchestrationState after =
      react(state, availability_record("SS", ss), {}, catalog, 10);
  CHECK(after.status == RunStatus::Running);
  CHECK(after.pnac.net().has_transition("SS.skip"));
  CHECK(after.bindings.fragments.count("SS") == 0);
  CHECK(consistent(after));
  CHECK(count_lines(after, "action=remove") == 1);
}

TEST_CASE("react registers advertised services as backups") {
  OrchestrationState state = make_state();
  ServiceDescriptor fresh = descriptor("GS2", "GuideService");
  Catalog catalog{{"GS2", fresh}};
  OrchestrationState after =
      react(state, advertisement_record(fresh), {}, catalog, 5);
  CHECK(after.backups.at("GuideService") == std::vector<std::string>{"GS2"});
  CHECK(after.pnac.generation() == 0);  // no net change
  CHECK(count_lines(after, "action=backup") == 1);

  // a repeat advertisement neither duplicates nor re-traces
  OrchestrationState again =
      react(after, advertisement_record(fresh), {}, catalog, 6);
  CHECK(again.backups.at("GuideService").size() == 1);
  CHECK(count_lines(again, "action=backup") == 1);
}

TEST_CASE("backups participate in substitution searches") {
  OrchestrationState state = make_state();
  ServiceDescriptor ss = descriptor("SS", "SpecialistService");  // no substitutes
  ServiceDescriptor backup = descriptor("Spare", "SpecialistService");
  Catalog catalog{{"SS", ss}, {"Spare", backup}};

  state = react(state, advertisement_record(backup), {}, catalog, 5);
  OrchestrationState after =
      react(state, availability_record("SS", ss), {}, catalog, 10);
  CHECK(after.trace.back().find("with=Spare") != std::string::npos);
  CHECK(consistent(after));
}

TEST_CASE("state-level changes are recorded without touching the net") {
  OrchestrationState state = make_state();
  ServiceDescriptor fs = descriptor("FS", "FinancialService");
  Catalog catalog{{"FS", fs}};
  OrchestrationState after =
      react(state, cost_record("FS", fs, 12), {}, catalog, 10);
  CHECK(after.status == RunStatus::Running);
  CHECK(after.pnac.generation() == 0);
  CHECK(after.pnac.net() == state.pnac.net());
  REQUIRE(after.trace.size() == 1);
  CHECK(after.trace[0].find("omega=alterState") != std::string::npos);
  CHECK(after.trace[0].find("action=record") != std::string::npos);
}

TEST_CASE("a registered state rule is enacted when it matches") {
  RewriteRule rename_buffer;
  rename_buffer.id = "fs-state";
  rename_buffer.omega = AdaptiveChangeKind::AlterState;
  rename_buffer.match.places.push_back({"FS.in", "FS.in"});
  rename_buffer.replacement.places.push_back({"FS.alt", "FS.alt"});
  rename_buffer.token_transfer["FS.in"] = "FS.alt";
  rename_buffer.port_map.push_back({"SS", "FS.alt", 1, true});
  rename_buffer.port_map.push_back({"FS", "FS.alt", 1, false});

  OrchestrationState state = make_state({rename_buffer});
  ServiceDescriptor fs = descriptor("FS", "FinancialService");
  Catalog catalog{{"FS", fs}};
  OrchestrationState after =
      react(state, cost_record("FS", fs, 12), {}, catalog, 10);
  CHECK(after.pnac.generation() == 1);
  CHECK(after.pnac.net().has_place("FS.alt"));
  CHECK(after.trace[0].find("rule=fs-state") != std::string::npos);
  CHECK(consistent(after));
}

TEST_CASE("events about unbound services only update knowledge") {
  OrchestrationState state = make_state();
  ServiceDescriptor standby = descriptor("SS2", "SpecialistService");
  Catalog catalog{{"SS2", standby}};
  OrchestrationState after =
      react(state, cost_record("SS2", standby, 42), {}, catalog, 10);
  CHECK(after.trace.empty());  // no status change, no rule: nothing to log
  CHECK(after.pnac.net() == state.pnac.net());
}

TEST_CASE("react refuses terminal states") {
  OrchestrationState state = make_state();
  ServiceDescriptor ss = descriptor("SS", "SpecialistService");
  Catalog catalog{{"SS", ss}};
  state.status = RunStatus::Exited;
  CHECK_THROWS_AS(react(state, availability_record("SS", ss), {}, catalog, 1),
                  InvalidStatus);
  state.status = RunStatus::Completed;
  CHECK_THROWS_AS(react(state, availability_record("SS", ss), {}, catalog, 1),
                  InvalidStatus);
}

TEST_CASE("heartbeat resumes on recovery") {
  OrchestrationState state = make_state();
  state.status = RunStatus::Paused;
  state.paused = PausedInfo{"SS", 1, 10};
  FakeDirectory directory;
  directory.alive_map["SS"] = true;
  OrchestrationState after = heartbeat_tick(state, directory, {}, 12);
  CHECK(after.status == RunStatus::Running);
  CHECK_FALSE(after.paused);
  CHECK(after.trace.back().find("action=resume") != std::string::npos);
  CHECK(after.trace.back().find("heartbeats=1") != std::string::npos);
}

TEST_CASE("heartbeat exits after exactly the configured number of probes") {
  OrchestrationState state = make_state();
  state.status = RunStatus::Paused;
  state.paused = PausedInfo{"SS", 0, 10};
  FakeDirectory directory;  // SS never answers
  ReactionPolicy policy{3, SubstitutionStrategy::FirstListed};

  OrchestrationState s = state;
  int probes = 0;
  while (s.status == RunStatus::Paused) {
    s = heartbeat_tick(s, directory, policy, 11 + probes);
    ++probes;
  }
  CHECK(probes == 3);
  CHECK(s.status == RunStatus::Exited);
  CHECK(s.trace.back().find("action=exit") != std::string::npos);
  CHECK(s.trace.back().find("heartbeats=3") != std::string::npos);
}

TEST_CASE("heartbeat requires a paused orchestration") {
  OrchestrationState state = make_state();
  FakeDirectory directory;
  CHECK_THROWS_AS(heartbeat_tick(state, directory, {}, 1), InvalidStatus);
}

TEST_CASE("actor buffers records while paused and replays them on resume") {
  OrchestrationState state = make_state();
  ServiceDescriptor ss = descriptor("SS", "SpecialistService", 10, true);
  ServiceDescriptor fs = descriptor("FS", "FinancialService");
  Catalog catalog{{"SS", ss}, {"FS", fs}};

  ReactionActor actor(state, {});
  actor.consume(availability_record("SS", ss, 10), catalog, 10);
  CHECK(actor.state().status == RunStatus::Paused);

  actor.consume(cost_record("FS", fs, 12, 11), catalog, 11);
  CHECK(actor.pending() == 1);
  CHECK(count_lines(actor.state(), "FS") == 0);  // not yet processed

  FakeDirectory directory;
  directory.alive_map["SS"] = true;
  actor.heartbeat(directory, catalog, 12);
  CHECK(actor.state().status == RunStatus::Running);
  CHECK(actor.pending() == 0);
  CHECK(count_lines(actor.state(), "action=record") == 1);  // drained in order
}

TEST_CASE("actor reports rule failures instead of aborting") {
  // a registered rule that orphans FS.in tokens when it fires
  RewriteRule lossy;
  lossy.id = "lossy";
  lossy.omega = AdaptiveChangeKind::AlterState;
  lossy.match.places.push_back({"FS.in", "FS.in"});
  lossy.replacement.places.push_back({"FS.alt", "FS.alt"});
  lossy.port_map.push_back({"SS", "FS.alt", 1, true});
  lossy.port_map.push_back({"FS", "FS.alt", 1, false});
  // no token_transfer entry on purpose

  OrchestrationState state = make_state({lossy});
  state.marking = Marking{};
  state.marking.add("FS.in", kPlainLabel);  // the doomed place is marked

  ServiceDescriptor fs = descriptor("FS", "FinancialService");
  Catalog catalog{{"FS", fs}};
  ReactionActor actor(state, {});
  std::string failure;
  actor.on_rule_failure = [&](const std::string& message, long) {
    failure = message;
  };
  actor.consume(cost_record("FS", fs, 12), catalog, 10);
  CHECK(failure.find("lossy") != std::string::npos);
  CHECK(actor.state().status == RunStatus::Running);
  CHECK(actor.state().pnac.generation() == 0);
  CHECK(count_lines(actor.state(), "rule-application-failed") == 1);
}
