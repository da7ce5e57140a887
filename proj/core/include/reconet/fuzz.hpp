#pragma once

#include <optional>
#include <string>
#include <vector>

#include "reconet/simenv.hpp"

namespace reconet {

struct FuzzViolation {
  int schedule_index = 0;
  std::string message;
  std::vector<FaultInjection> schedule;  // minimized reproducer
};

struct FuzzReport {
  int runs = 0;
  std::vector<FuzzViolation> violations;

  bool ok() const { return violations.empty(); }
};

// Runs the base scenario under `count` generated fault schedules (each
// appended to the scenario's own schedule) and checks the cross-module
// invariants on each run: per-label token conservation across
// reconfigurations, output-place reachability (or an explicit pause/exit
// escalation) after every reaction, the heartbeat pause bound, and
// byte-identical traces on re-run. Violating schedules are greedily
// minimized.
FuzzReport fuzz_scenario(const ScenarioConfig& base, int count,
                         unsigned long long seed);

// One run under full invariant observation; the first violation found, if
// any.
std::optional<std::string> check_run_invariants(const ScenarioConfig& config);

std::string describe_schedule(const std::vector<FaultInjection>& schedule);

}  // namespace reconet
