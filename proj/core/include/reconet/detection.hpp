#pragma once

#include <deque>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "reconet/change_model.hpp"
#include "reconet/marking.hpp"

namespace reconet {

struct PollingConfig {
  int interval_ticks = 5;       // ticks between poll cycles
  int alive_timeout_ticks = 5;  // missed-response window before presumed down
};

void validate_polling(const PollingConfig& config);

// What the Refresh/Alive probes talk to. The simulation environment
// implements this; tests substitute scripted fakes.
class MemberDirectory {
 public:
  virtual ~MemberDirectory() = default;
  // Alive probe: true iff the service answers right now.
  virtual bool alive(const std::string& service_id) const = 0;
  // Refresh pull: the current descriptor, or nothing when unreachable.
  virtual std::optional<ServiceDescriptor> refresh(
      const std::string& service_id) const = 0;
  // Advertised service ids.
  virtual std::vector<std::string> roster() const = 0;
};

// One detected change: the event, the fired template transition with its
// incidence-matrix column, and the template marking after firing.
struct DetectionRecord {
  HandlingEvent event;
  std::string template_transition;
  std::vector<int> matrix_column;  // C column, rows per template place order
  Marking template_marking_after;
  long tick = 0;
};

// Ordered, reliable detection -> reaction channel.
class DetectionChannel {
 public:
  void push(DetectionRecord record);  // ChannelClosed after close()
  std::optional<DetectionRecord> pop();
  void close() { closed_ = true; }
  bool closed() const { return closed_; }
  std::size_t size() const { return queue_.size(); }

 private:
  std::deque<DetectionRecord> queue_;
  bool closed_ = false;
};

void forward(const std::vector<DetectionRecord>& records,
             DetectionChannel& channel);

// The service agent: polls the directory, diffs descriptor snapshots,
// records each first-seen change kind in the service's change-state
// templates and emits DetectionRecords. Repeat changes of an already
// recorded kind are suppressed (the templates are one-shot recorders), which
// keeps them 1-safe per label.
class DetectionAgent {
 public:
  DetectionAgent(std::map<std::string, ServiceDescriptor> initial_snapshots,
                 PollingConfig config);

  // No-op off the polling grid (tick % interval != 0). Otherwise probes every
  // known and advertised service, classifies snapshot diffs, fires templates
  // and returns the records in deterministic order. Never throws: failures
  // are data.
  std::vector<DetectionRecord> poll_cycle(const MemberDirectory& directory,
                                          long tick);

  // Services that answered Alive within the timeout as of the last cycle;
  // the configured set before the first poll.
  std::set<std::string> membership() const;

  // Latest observed descriptors; the catalog the reaction side consults.
  const std::map<std::string, ServiceDescriptor>& snapshots() const {
    return snapshots_;
  }

  const Marking& nonfunctional_state(const std::string& service_id) const;
  const Marking& functional_state(const std::string& service_id) const;

  const PollingConfig& config() const { return config_; }

 private:
  DetectionRecord make_record(const HandlingEvent& event,
                              const Marking& after, long tick) const;

  PollingConfig config_;
  std::map<std::string, ServiceDescriptor> snapshots_;
  std::map<std::string, Marking> nonfunctional_;
  std::map<std::string, Marking> functional_;
  std::map<std::string, long> last_alive_;
  long last_poll_tick_ = -1;
};

}  // namespace reconet
