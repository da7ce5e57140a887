#include "reconet/matrix.hpp"

#include <algorithm>

#include "reconet/errors.hpp"

namespace reconet {

int IncidenceMatrix::pre(std::size_t place, std::size_t transition) const {
  return pre_[place * transition_ids_.size() + transition];
}

int IncidenceMatrix::post(std::size_t place, std::size_t transition) const {
  return post_[place * transition_ids_.size() + transition];
}

int IncidenceMatrix::delta(std::size_t place, std::size_t transition) const {
  return post(place, transition) - pre(place, transition);
}

std::optional<std::size_t> IncidenceMatrix::place_index(
    const std::string& id) const {
  auto it = std::lower_bound(place_ids_.begin(), place_ids_.end(), id);
  if (it == place_ids_.end() || *it != id) return std::nullopt;
  return static_cast<std::size_t>(it - place_ids_.begin());
}

std::optional<std::size_t> IncidenceMatrix::transition_index(
    const std::string& id) const {
  auto it =
      std::lower_bound(transition_ids_.begin(), transition_ids_.end(), id);
  if (it == transition_ids_.end() || *it != id) return std::nullopt;
  return static_cast<std::size_t>(it - transition_ids_.begin());
}

std::vector<int> IncidenceMatrix::column(const std::string& transition) const {
  auto t = transition_index(transition);
  if (!t) throw UnknownTransition("unknown transition '" + transition + "'");
  std::vector<int> col(place_ids_.size());
  for (std::size_t p = 0; p < place_ids_.size(); ++p) col[p] = delta(p, *t);
  return col;
}

IncidenceMatrix incidence_matrix(const Net& net) {
  IncidenceMatrix m;
  for (const auto& [id, p] : net.places()) m.place_ids_.push_back(id);
  for (const auto& [id, t] : net.transitions()) m.transition_ids_.push_back(id);
  m.pre_.assign(m.place_ids_.size() * m.transition_ids_.size(), 0);
  m.post_.assign(m.pre_.size(), 0);
  for (const Arc& a : net.arcs()) {
    if (net.has_transition(a.target)) {
      std::size_t p = *m.place_index(a.source);
      std::size_t t = *m.transition_index(a.target);
      m.pre_[p * m.transition_ids_.size() + t] = a.weight;
    } else {
      std::size_t p = *m.place_index(a.target);
      std::size_t t = *m.transition_index(a.source);
      m.post_[p * m.transition_ids_.size() + t] = a.weight;
    }
  }
  return m;
}

Marking state_equation(const Marking& marking, const IncidenceMatrix& matrix,
                       const std::map<std::string, int>& firing_counts) {
  for (const auto& [place, bag] : marking.bags()) {
    if (!matrix.place_index(place)) {
      throw DimensionMismatch("marking mentions unknown place '" + place +
                              "'");
    }
  }
  std::vector<int> sigma(matrix.transition_ids().size(), 0);
  for (const auto& [transition, n] : firing_counts) {
    auto t = matrix.transition_index(transition);
    if (!t) {
      throw DimensionMismatch("firing count for unknown transition '" +
                              transition + "'");
    }
    if (n < 0) {
      throw DimensionMismatch("negative firing count for '" + transition +
                              "'");
    }
    sigma[*t] = n;
  }

  Marking result;
  const auto& places = matrix.place_ids();
  for (std::size_t p = 0; p < places.size(); ++p) {
    long long count = marking.count(places[p]);
    for (std::size_t t = 0; t < sigma.size(); ++t) {
      count += static_cast<long long>(matrix.delta(p, t)) * sigma[t];
    }
    if (count < 0) {
      throw NegativeResult("state equation drives place '" + places[p] +
                           "' to " + std::to_string(count));
    }
    if (count > 0) {
      result.add(places[p], kPlainLabel, static_cast<int>(count));
    }
  }
  return result;
}

}  // namespace reconet
