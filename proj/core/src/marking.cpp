#include "reconet/marking.hpp"

#include "reconet/errors.hpp"

namespace reconet {

namespace {
const Marking::Bag kEmptyBag;
}

int Marking::count(const std::string& place) const {
  auto it = bags_.find(place);
  if (it == bags_.end()) return 0;
  int sum = 0;
  for (const auto& [label, n] : it->second) sum += n;
  return sum;
}

int Marking::count(const std::string& place, const TokenLabel& label) const {
  auto it = bags_.find(place);
  if (it == bags_.end()) return 0;
  auto jt = it->second.find(label);
  return jt == it->second.end() ? 0 : jt->second;
}

const Marking::Bag& Marking::bag(const std::string& place) const {
  auto it = bags_.find(place);
  return it == bags_.end() ? kEmptyBag : it->second;
}

void Marking::add(const std::string& place, const TokenLabel& label, int n) {
  if (n <= 0) return;
  bags_[place][label] += n;
}

void Marking::remove(const std::string& place, const TokenLabel& label,
                     int n) {
  if (n <= 0) return;
  auto it = bags_.find(place);
  if (it == bags_.end() || it->second[label] < n) {
    throw NegativeResult("cannot remove " + std::to_string(n) + " '" + label +
                         "' tokens from place '" + place + "'");
  }
  int& c = it->second[label];
  c -= n;
  if (c == 0) it->second.erase(label);
  if (it->second.empty()) bags_.erase(it);
}

Marking::Bag Marking::remove_any(const std::string& place, int n) {
  Bag removed;
  if (n <= 0) return removed;
  auto it = bags_.find(place);
  if (it == bags_.end() || count(place) < n) {
    throw NegativeResult("cannot remove " + std::to_string(n) +
                         " tokens from place '" + place + "'");
  }
  // Smallest labels first keeps firing deterministic.
  int remaining = n;
  auto& bag = it->second;
  for (auto jt = bag.begin(); remaining > 0 && jt != bag.end();) {
    int take = jt->second < remaining ? jt->second : remaining;
    removed[jt->first] += take;
    remaining -= take;
    jt->second -= take;
    if (jt->second == 0) {
      jt = bag.erase(jt);
    } else {
      ++jt;
    }
  }
  if (bag.empty()) bags_.erase(it);
  return removed;
}

void Marking::set(const std::string& place, const TokenLabel& label, int n) {
  if (n < 0) throw NegativeResult("negative token count for '" + place + "'");
  if (n == 0) {
    auto it = bags_.find(place);
    if (it != bags_.end()) {
      it->second.erase(label);
      if (it->second.empty()) bags_.erase(it);
    }
    return;
  }
  bags_[place][label] = n;
}

void Marking::clear(const std::string& place) { bags_.erase(place); }

void Marking::transfer_all(const std::string& from, const std::string& to) {
  auto it = bags_.find(from);
  if (it == bags_.end()) return;
  Bag moved = std::move(it->second);
  bags_.erase(it);
  for (const auto& [label, n] : moved) bags_[to][label] += n;
}

int Marking::total() const {
  int sum = 0;
  for (const auto& [place, bag] : bags_) {
    for (const auto& [label, n] : bag) sum += n;
  }
  return sum;
}

int Marking::total(const TokenLabel& label) const {
  int sum = 0;
  for (const auto& [place, bag] : bags_) {
    auto it = bag.find(label);
    if (it != bag.end()) sum += it->second;
  }
  return sum;
}

Marking::Bag Marking::label_totals() const {
  Bag totals;
  for (const auto& [place, bag] : bags_) {
    for (const auto& [label, n] : bag) totals[label] += n;
  }
  return totals;
}

}  // namespace reconet
