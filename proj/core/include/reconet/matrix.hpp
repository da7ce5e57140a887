#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "reconet/marking.hpp"
#include "reconet/net.hpp"

namespace reconet {

// Pre, Post and C = Post - Pre of a net, rows and columns in lexicographic
// id order.
class IncidenceMatrix {
 public:
  const std::vector<std::string>& place_ids() const { return place_ids_; }
  const std::vector<std::string>& transition_ids() const {
    return transition_ids_;
  }

  int pre(std::size_t place, std::size_t transition) const;
  int post(std::size_t place, std::size_t transition) const;
  int delta(std::size_t place, std::size_t transition) const;

  std::optional<std::size_t> place_index(const std::string& id) const;
  std::optional<std::size_t> transition_index(const std::string& id) const;

  // The C column of one transition, ordered like place_ids(). Throws
  // UnknownTransition.
  std::vector<int> column(const std::string& transition) const;

 private:
  friend IncidenceMatrix incidence_matrix(const Net&);
  std::vector<std::string> place_ids_;
  std::vector<std::string> transition_ids_;
  std::vector<int> pre_;   // row-major, place * n_transitions + transition
  std::vector<int> post_;
};

IncidenceMatrix incidence_matrix(const Net& net);

// M' = M + C * sigma on plain markings (labels collapse to counts). No
// enabledness check: the result may not be reachable. Throws
// DimensionMismatch for unknown places/transitions or negative counts,
// NegativeResult if some place count would drop below zero.
Marking state_equation(const Marking& marking, const IncidenceMatrix& matrix,
                       const std::map<std::string, int>& firing_counts);

}  // namespace reconet
