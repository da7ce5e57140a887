// Acceptance suite: one test case per release criterion, each printing a
// PASS line when its checks hold. Run via `ctest -R acceptance` or directly.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <map>
#include <random>
#include <sstream>

#include "reconet/analysis.hpp"
#include "reconet/change_model.hpp"
#include "reconet/errors.hpp"
#include "reconet/fuzz.hpp"
#include "reconet/hierarchy.hpp"
#include "reconet/matrix.hpp"
#include "reconet/reconfig.hpp"
#include "reconet/semantics.hpp"
#include "reconet/simenv.hpp"
#include "test_support.hpp"

using namespace reconet;
using test_support::Counts;

namespace {

const std::string kScenarioDir = RECONET_SCENARIO_DIR;
const std::string kGoldenDir = RECONET_GOLDEN_DIR;

struct Stopwatch {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
        .count();
  }
};

void report(const char* criterion, const Stopwatch& watch) {
  std::printf("[acceptance] %s: PASS (%.2fs)\n", criterion, watch.seconds());
  std::fflush(stdout);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

ScenarioConfig load(const std::string& name) {
  return load_scenario_file(kScenarioDir + "/" + name);
}

int count_lines(const SimTrace& trace, const std::string& needle) {
  int n = 0;
  for (const auto& line : trace.lines) {
    if (line.find(needle) != std::string::npos) ++n;
  }
  return n;
}

}  // namespace

TEST_CASE("criterion 1: non-functional change template reproduction") {
  Stopwatch watch;
  const ChangeTemplate& t = nonfunctional_template();
  CHECK(t.net.places().size() == 5);
  CHECK(t.net.transitions().size() == 4);
  CHECK(t.net.arcs().size() == 8);
  CHECK(t.initial.count("PS") == 4);
  for (const auto& label : {"A", "C", "R", "Re"}) {
    CHECK(t.initial.count("PS", label) == 1);  // four distinct labels
  }
  Marking after = fire(t.net, t.initial, "TA");
  CHECK(after.count("PS'A", "A") == 1);
  CHECK(after.count("PS", "A") == 0);
  CHECK(after.count("PS") == 3);
  CHECK(watch.seconds() < 1.0);
  report("criterion 1 (template reproduction)", watch);
}

TEST_CASE("criterion 2: all four non-functional kinds record independently") {
  Stopwatch watch;
  const HandlingChangeKind kinds[] = {
      HandlingChangeKind::AlterAvailability,
      HandlingChangeKind::AlterReliability,
      HandlingChangeKind::AlterCost,
      HandlingChangeKind::AlterResponsiveness,
  };
  const char* posts[] = {"PS'A", "PS'R", "PS'C", "PS'Re"};

  ServiceDescriptor base;
  base.id = "S";
  base.operations = {{"op", {}, {}}};
  base.cost = 10;
  base.responsiveness_ms = 100;

  for (int k = 0; k < 4; ++k) {
    ServiceDescriptor changed = base;
    switch (kinds[k]) {
      case HandlingChangeKind::AlterAvailability:
        changed.available = false;
        break;
      case HandlingChangeKind::AlterReliability:
        changed.reliable = false;
        break;
      case HandlingChangeKind::AlterCost:
        changed.cost = 11;
        break;
      default:
        changed.responsiveness_ms = 150;
        break;
    }
    auto events = classify(base, changed, 0);
    REQUIRE(events.size() == 1);
    CHECK(events[0].kind == kinds[k]);

    const ChangeTemplate& t = nonfunctional_template();
    Marking m = fire_theta(t.net, t.initial, events[0]);
    CHECK(m.count(posts[k]) == 1);  // recorded in its own place

    DetectionRecord record;
    record.event = events[0];
    record.template_transition = template_transition(events[0].kind);
    record.matrix_column =
        incidence_matrix(t.net).column(record.template_transition);
    CHECK(record.matrix_column ==
          incidence_matrix(t.net).column(template_transition(kinds[k])));
  }

  // 1-safety per label over 1000 random event streams with suppression
  std::mt19937_64 rng(2024);
  for (int stream = 0; stream < 1000; ++stream) {
    Marking state = nonfunctional_template().initial;
    int length = 1 + static_cast<int>(test_support::pick(rng, 10));
    for (int i = 0; i < length; ++i) {
      HandlingEvent e;
      e.kind = kinds[test_support::pick(rng, 4)];
      try {
        state = fire_theta(nonfunctional_template().net, state, e);
      } catch (const NotEnabled&) {
        // duplicate kind suppressed
      }
      for (const auto& [place, bag] : state.bags()) {
        for (const auto& [label, count] : bag) {
          REQUIRE(count == 1);
        }
      }
    }
  }
  CHECK(watch.seconds() < 5.0);
  report("criterion 2 (four change kinds, 1-safety x1000)", watch);
}

TEST_CASE("criterion 3: state equation agrees with simulation") {
  Stopwatch watch;
  std::mt19937_64 rng(303);
  int nets = 0;
  for (; nets < 100; ++nets) {
    Net net = test_support::random_plain_net(rng, 6, 6);
    Counts initial = test_support::random_counts(rng, net);
    auto sequence =
        test_support::random_admissible_sequence(rng, net, initial, 8);
    std::map<std::string, int> firing_counts;
    for (const auto& t : sequence) firing_counts[t] += 1;

    Marking m0 = test_support::to_plain_marking(initial);
    Marking simulated = fire_sequence(net, m0, sequence);
    Marking predicted =
        state_equation(m0, incidence_matrix(net), firing_counts);
    REQUIRE(simulated == predicted);
  }
  CHECK(nets == 100);
  CHECK(watch.seconds() < 10.0);
  report("criterion 3 (state-equation oracle, 100 nets)", watch);
}

TEST_CASE("criterion 4: rewriting conserves tokens on 200 applications") {
  Stopwatch watch;
  std::mt19937_64 rng(404);
  int applications = 0;
  while (applications < 200) {
    Net net = test_support::random_plain_net(rng, 6, 6);

    // one-place match with a fresh replacement, random boundary rebinding
    std::vector<std::string> candidates;
    for (const auto& [id, p] : net.places()) {
      if (id != net.input_place() && id != net.output_place()) {
        candidates.push_back(id);
      }
    }
    if (candidates.empty()) continue;
    const std::string victim =
        candidates[test_support::pick(rng, candidates.size())];

    RewriteRule rule;
    rule.id = "acc-" + std::to_string(applications);
    rule.omega = AdaptiveChangeKind::AlterState;
    rule.match.places.push_back({victim, victim});
    std::string fresh = "fresh" + std::to_string(applications);
    rule.replacement.places.push_back({fresh, fresh});
    rule.token_transfer[victim] = fresh;
    for (const Arc& a : net.arcs()) {
      if (a.source == victim) {
        rule.port_map.push_back({a.target, fresh, a.weight, false});
      } else if (a.target == victim) {
        rule.port_map.push_back({a.source, fresh, a.weight, true});
      }
    }

    Marking marking;
    for (const auto& [id, p] : net.places()) {
      long n = test_support::pick(rng, 3);
      if (n > 0) {
        marking.add(id, test_support::pick(rng, 2) ? "A" : kPlainLabel,
                    static_cast<int>(n));
      }
    }

    ReconfigurableNet pnac(net, {}, Marking{});
    auto [after, next] = apply_rule(pnac, rule, marking);
    REQUIRE(next.label_totals() == marking.label_totals());
    REQUIRE(after.net().has_place(fresh));
    // the rebuilt net passed full structural validation inside apply_rule;
    // confirm the interface places survived
    REQUIRE(after.net().input_place() == net.input_place());
    REQUIRE(after.net().output_place() == net.output_place());
    ++applications;
  }
  CHECK(watch.seconds() < 10.0);
  report("criterion 4 (rewriting conservation, 200 applications)", watch);
}

TEST_CASE("criterion 5: flattening equivalence") {
  Stopwatch watch;
  std::mt19937_64 rng(505);
  int nets = 0;
  for (; nets < 50; ++nets) {
    Net root = test_support::random_plain_net(rng, 5, 5);
    HierarchicalNet hnet(root);
    std::vector<std::string> ids;
    for (const auto& [id, t] : root.transitions()) ids.push_back(id);
    const std::string& chosen = ids[test_support::pick(rng, ids.size())];

    NetBuilder sub;
    sub.place("in").place("mid").place("out");
    sub.transition("u1").transition("u2");
    sub.arc("in", "u1").arc("u1", "mid").arc("mid", "u2").arc("u2", "out");
    sub.input("in").output("out");
    hnet = refine(hnet, chosen, sub.build());

    Net flat = flatten(hnet);
    Marking m = test_support::to_plain_marking(
        test_support::random_counts(rng, root, 2));
    Marking hierarchical = m;
    Marking flat_side = m;
    for (int step = 0; step < 10; ++step) {
      auto choices = hierarchical_enabled_transitions(hnet, hierarchical);
      if (choices.empty()) break;
      const std::string& t = choices[test_support::pick(rng, choices.size())];
      hierarchical =
          execute_hierarchical(hnet, hierarchical, std::vector<std::string>{t});
      flat_side = fire(flat, flat_side, t);
      REQUIRE(hierarchical == flat_side);  // marking-for-marking agreement
    }
  }
  CHECK(nets == 50);

  // shipped healthcare net: both routes agree on output reachability
  HierarchicalNet healthcare = builtin_healthcare_process();
  Net flat = flatten(healthcare);
  Marking start;
  start.add(flat.input_place(), kPlainLabel);
  bool flat_reaches = check_consistency(flat, start).consistent;

  Marking m = start;
  bool hierarchical_reaches = m.marked(healthcare.root().output_place());
  for (int step = 0; step < 64 && !hierarchical_reaches; ++step) {
    auto choices = hierarchical_enabled_transitions(healthcare, m);
    if (choices.empty()) break;
    m = execute_hierarchical(healthcare, m,
                             std::vector<std::string>{choices.front()});
    hierarchical_reaches = m.marked(healthcare.root().output_place());
  }
  CHECK(flat_reaches == hierarchical_reaches);
  CHECK(flat_reaches);
  CHECK(watch.seconds() < 10.0);
  report("criterion 5 (flattening equivalence, 50 nets + healthcare)", watch);
}

TEST_CASE("criterion 6: end-to-end specialist failover") {
  Stopwatch watch;
  ScenarioConfig config = load("ss-outage-with-substitute.json");
  SimTrace trace = run(config);

  // detection latency: the tick-10 fault is seen at the tick-10 poll, within
  // one polling interval plus the alive timeout
  int detect_tick = -1;
  for (const auto& line : trace.lines) {
    if (line.find(" DETECT service=SS theta=alterAvailability") !=
        std::string::npos) {
      detect_tick = static_cast<int>(std::stol(line.substr(5)));
      break;
    }
  }
  REQUIRE(detect_tick >= 10);
  CHECK(detect_tick <= 10 + config.polling.interval_ticks +
                           config.polling.alive_timeout_ticks);

  CHECK(count_lines(trace, "action=substitute") == 1);
  CHECK(trace.final_status == RunStatus::Completed);
  REQUIRE(trace.final_state);
  CHECK(check_consistency(trace.final_state->pnac.net(),
                          trace.final_state->marking)
            .consistent);

  std::string golden = read_file(kGoldenDir + "/ss-outage-with-substitute.trace");
  CHECK(trace.rendered() == golden);
  CHECK(watch.seconds() < 1.0);
  report("criterion 6 (end-to-end failover, golden trace)", watch);
}

TEST_CASE("criterion 7: heartbeat-bounded pause and exit") {
  Stopwatch watch;
  ScenarioConfig config = load("ss-outage-critical-no-substitute.json");
  REQUIRE(config.policy.heartbeat_limit == 3);
  SimTrace trace = run(config);
  CHECK(trace.final_status == RunStatus::Exited);
  CHECK(count_lines(trace, "action=pause service=SS") == 1);
  int pause_tick = -1;
  int exit_tick = -1;
  for (const auto& line : trace.lines) {
    if (line.find("action=pause") != std::string::npos) {
      pause_tick = static_cast<int>(std::stol(line.substr(5)));
    }
    if (line.find("action=exit") != std::string::npos) {
      exit_tick = static_cast<int>(std::stol(line.substr(5)));
      CHECK(line.find("heartbeats=3") != std::string::npos);
    }
  }
  REQUIRE(pause_tick >= 0);
  REQUIRE(exit_tick >= 0);
  CHECK(exit_tick - pause_tick == 3);  // exactly three heartbeat ticks

  // recovery at the fourth heartbeat resumes and completes
  ScenarioConfig recovery = load("ss-outage-critical-no-substitute.json");
  recovery.policy.heartbeat_limit = 10;
  recovery.fault_schedule.push_back({14, "SS", "available", true});
  SimTrace resumed = run(recovery);
  CHECK(count_lines(resumed, "action=resume service=SS heartbeats=3") == 1);
  CHECK(resumed.final_status == RunStatus::Completed);
  CHECK(watch.seconds() < 1.0);
  report("criterion 7 (heartbeat-bounded exit and resume)", watch);
}

TEST_CASE("criterion 8: template reachability set has 16 markings") {
  Stopwatch watch;
  const ChangeTemplate& t = nonfunctional_template();
  ReachabilitySet set = reachable(t.net, t.initial);
  CHECK(set.markings.size() == 16);
  CHECK_FALSE(set.truncated);
  CHECK(watch.seconds() < 1.0);
  report("criterion 8 (16 reachable template markings)", watch);
}

TEST_CASE("criterion 9: repeated runs emit byte-identical traces") {
  Stopwatch watch;
  for (const auto& name :
       {"healthcare-nominal.json", "ss-outage-with-substitute.json",
        "ss-outage-critical-no-substitute.json"}) {
    ScenarioConfig config = load(name);
    SimTrace first = run(config);
    SimTrace second = run(config);
    REQUIRE(first.rendered() == second.rendered());
  }
  CHECK(watch.seconds() < 5.0);
  report("criterion 9 (determinism across the scenario set)", watch);
}

TEST_CASE("criterion 10: 50 fuzzed fault schedules violate no invariant") {
  Stopwatch watch;
  FuzzReport report_nominal =
      fuzz_scenario(load("ss-outage-with-substitute.json"), 50, 42);
  CHECK(report_nominal.runs == 50);
  for (const auto& v : report_nominal.violations) {
    MESSAGE("violation: ", v.message);
  }
  CHECK(report_nominal.ok());
  CHECK(watch.seconds() < 60.0);
  report("criterion 10 (fuzz suite, 50 seeds)", watch);
}
