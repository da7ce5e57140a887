#include "reconet/detection.hpp"

#include <algorithm>

#include "reconet/errors.hpp"
#include "reconet/matrix.hpp"
#include "reconet/semantics.hpp"

namespace reconet {

void validate_polling(const PollingConfig& config) {
  if (config.interval_ticks < 1 || config.alive_timeout_ticks < 1) {
    throw ValidationError("polling intervals must be >= 1 tick");
  }
}

void DetectionChannel::push(DetectionRecord record) {
  if (closed_) throw ChannelClosed("detection channel is closed");
  queue_.push_back(std::move(record));
}

std::optional<DetectionRecord> DetectionChannel::pop() {
  if (queue_.empty()) return std::nullopt;
  DetectionRecord record = std::move(queue_.front());
  queue_.pop_front();
  return record;
}

void forward(const std::vector<DetectionRecord>& records,
             DetectionChannel& channel) {
  for (const auto& record : records) channel.push(record);
}

DetectionAgent::DetectionAgent(
    std::map<std::string, ServiceDescriptor> initial_snapshots,
    PollingConfig config)
    : config_(config), snapshots_(std::move(initial_snapshots)) {
  validate_polling(config_);
  for (const auto& [id, d] : snapshots_) {
    validate_descriptor(d);
    nonfunctional_.emplace(id, nonfunctional_template().initial);
    functional_.emplace(id, functional_template().initial);
    last_alive_.emplace(id, 0);
  }
}

DetectionRecord DetectionAgent::make_record(const HandlingEvent& event,
                                            const Marking& after,
                                            long tick) const {
  DetectionRecord record;
  record.event = event;
  record.template_transition = template_transition(event.kind);
  record.matrix_column = incidence_matrix(template_for(event.kind).net)
                             .column(record.template_transition);
  record.template_marking_after = after;
  record.tick = tick;
  return record;
}

std::vector<DetectionRecord> DetectionAgent::poll_cycle(
    const MemberDirectory& directory, long tick) {
  std::vector<DetectionRecord> records;
  if (tick % config_.interval_ticks != 0) return records;
  last_poll_tick_ = tick;

  // Known services first, then newly advertised ones, each in id order.
  std::set<std::string> advertised;
  for (const auto& id : directory.roster()) advertised.insert(id);

  for (auto& [id, previous] : snapshots_) {
    ServiceDescriptor observed = previous;
    if (advertised.count(id) && directory.alive(id)) {
      last_alive_[id] = tick;
      if (auto fresh = directory.refresh(id)) observed = *fresh;
    } else if (tick - last_alive_[id] >= config_.alive_timeout_ticks) {
      // Silent past the timeout window: presumed unavailable.
      observed.available = false;
    }
    for (const auto& event : classify(previous, observed, tick)) {
      Marking& state = is_nonfunctional(event.kind) ? nonfunctional_[id]
                                                    : functional_[id];
      try {
        state = fire_theta(template_for(event.kind).net, state, event);
      } catch (const NotEnabled&) {
        continue;  // change kind already recorded; duplicate suppressed
      }
      records.push_back(make_record(event, state, tick));
    }
    previous = observed;
  }

  for (const auto& id : advertised) {
    if (snapshots_.count(id)) continue;
    if (!directory.alive(id)) continue;
    auto descriptor = directory.refresh(id);
    if (!descriptor) continue;
    // A service with no prior snapshot advertises itself whole.
    HandlingEvent event;
    event.kind = HandlingChangeKind::StructuralAdd;
    event.service_id = id;
    event.post_snapshot = *descriptor;
    event.tick = tick;

    Marking state = functional_template().initial;
    state = fire_theta(functional_template().net, state, event);
    functional_[id] = state;
    nonfunctional_[id] = nonfunctional_template().initial;
    snapshots_[id] = *descriptor;
    last_alive_[id] = tick;
    records.push_back(make_record(event, state, tick));
  }

  std::stable_sort(records.begin(), records.end(),
                   [](const DetectionRecord& a, const DetectionRecord& b) {
                     return a.event.service_id < b.event.service_id;
                   });
  return records;
}

std::set<std::string> DetectionAgent::membership() const {
  std::set<std::string> members;
  for (const auto& [id, seen] : last_alive_) {
    if (last_poll_tick_ < 0 ||
        last_poll_tick_ - seen < config_.alive_timeout_ticks) {
      members.insert(id);
    }
  }
  return members;
}

const Marking& DetectionAgent::nonfunctional_state(
    const std::string& service_id) const {
  auto it = nonfunctional_.find(service_id);
  if (it == nonfunctional_.end()) {
    throw UnknownService("no change-state for service '" + service_id + "'");
  }
  return it->second;
}

const Marking& DetectionAgent::functional_state(
    const std::string& service_id) const {
  auto it = functional_.find(service_id);
  if (it == functional_.end()) {
    throw UnknownService("no change-state for service '" + service_id + "'");
  }
  return it->second;
}

}  // namespace reconet
