#include "reconet/fuzz.hpp"

#include <random>
#include <sstream>

#include "reconet/analysis.hpp"
#include "reconet/errors.hpp"

namespace reconet {

namespace {

std::vector<FaultInjection> generate_schedule(std::mt19937_64& rng,
                                              const std::vector<std::string>& services,
                                              long horizon) {
  // Raw engine output with modulo keeps schedules identical across
  // platforms; std::uniform_int_distribution is implementation-defined.
  auto pick = [&](unsigned long long n) {
    return static_cast<long>(rng() % n);
  };
  std::vector<FaultInjection> schedule;
  long count = 1 + pick(5);
  for (long i = 0; i < count; ++i) {
    FaultInjection fault;
    fault.tick = pick(horizon);
    fault.service = services[pick(services.size())];
    switch (pick(4)) {
      case 0:
        fault.field = "available";
        fault.value = pick(2) == 0;
        break;
      case 1:
        fault.field = "reliable";
        fault.value = pick(2) == 0;
        break;
      case 2:
        fault.field = "cost";
        fault.value = static_cast<double>(1 + pick(50));
        break;
      default:
        fault.field = "responsiveness_ms";
        fault.value = static_cast<double>(1 + pick(500));
        break;
    }
    schedule.push_back(std::move(fault));
  }
  return schedule;
}

}  // namespace

std::optional<std::string> check_run_invariants(const ScenarioConfig& config) {
  std::optional<std::string> violation;
  auto record = [&](const std::string& message) {
    if (!violation) violation = message;
  };

  RunObserver observer;
  observer.on_reconfigured = [&](const Marking& before, const Marking& after,
                                 const Net& net_after) {
    if (before.label_totals() != after.label_totals()) {
      record("token conservation violated by a reconfiguration");
    }
    for (const auto& [place, bag] : after.bags()) {
      if (!net_after.has_place(place)) {
        record("marking references place '" + place +
               "' missing from the reconfigured net");
      }
    }
  };
  observer.on_reaction_settled = [&](const OrchestrationState& state,
                                     long tick) {
    if (state.status != RunStatus::Running) return;  // escalation is valid
    try {
      if (!check_consistency(state.pnac.net(), state.marking).consistent) {
        record("output place unreachable after reaction at tick " +
               std::to_string(tick));
      }
    } catch (const BoundExceeded&) {
      record("consistency exploration truncated at tick " +
             std::to_string(tick));
    }
  };
  observer.on_heartbeat = [&](int used, int limit) {
    if (used > limit) record("heartbeat pause bound exceeded");
  };
  observer.on_rule_failure = [&](const std::string& message, long tick) {
    record("rule application failed at tick " + std::to_string(tick) + ": " +
           message);
  };

  SimTrace first = run(config, &observer);
  if (violation) return violation;

  SimTrace second = run(config);
  if (first.rendered() != second.rendered()) {
    return std::optional<std::string>("nondeterministic trace on re-run");
  }
  return std::nullopt;
}

std::string describe_schedule(const std::vector<FaultInjection>& schedule) {
  std::ostringstream out;
  for (const auto& fault : schedule) {
    out << "  tick=" << fault.tick << " service=" << fault.service
        << " field=" << fault.field << " value=";
    if (std::holds_alternative<bool>(fault.value)) {
      out << (std::get<bool>(fault.value) ? "true" : "false");
    } else if (std::holds_alternative<double>(fault.value)) {
      out << std::get<double>(fault.value);
    } else if (std::holds_alternative<std::string>(fault.value)) {
      out << std::get<std::string>(fault.value);
    } else {
      out << std::get<OperationSignature>(fault.value).name;
    }
    out << "\n";
  }
  return out.str();
}

FuzzReport fuzz_scenario(const ScenarioConfig& base, int count,
                         unsigned long long seed) {
  FuzzReport report;
  std::vector<std::string> services;
  for (const auto& entry : base.services) {
    services.push_back(entry.descriptor.id);
  }
  if (services.empty()) return report;
  long horizon = std::max<long>(1, base.max_ticks / 2);

  for (int i = 0; i < count; ++i) {
    std::mt19937_64 rng(seed + static_cast<unsigned long long>(i) * 0x9e3779b9ull);
    ScenarioConfig config = base;
    // Generated faults extend the scenario's own schedule, so declared
    // failure behaviors stay exercised in every run.
    auto generated = generate_schedule(rng, services, horizon);
    config.fault_schedule.insert(config.fault_schedule.end(),
                                 generated.begin(), generated.end());
    ++report.runs;

    auto violation = check_run_invariants(config);
    if (!violation) continue;

    // Greedy shrink: drop faults one at a time while the failure persists.
    std::vector<FaultInjection> minimized = config.fault_schedule;
    bool shrunk = true;
    while (shrunk && minimized.size() > 1) {
      shrunk = false;
      for (std::size_t k = 0; k < minimized.size(); ++k) {
        std::vector<FaultInjection> candidate = minimized;
        candidate.erase(candidate.begin() + static_cast<long>(k));
        ScenarioConfig reduced = base;
        reduced.fault_schedule = candidate;
        if (check_run_invariants(reduced)) {
          minimized = std::move(candidate);
          shrunk = true;
          break;
        }
      }
    }
    report.violations.push_back({i, *violation, std::move(minimized)});
  }
  return report;
}

}  // namespace reconet
