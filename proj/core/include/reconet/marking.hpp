#pragma once

#include <compare>
#include <map>
#include <string>

namespace reconet {

// Tokens carry a label from the net's alphabet. The distinguished label
// "plain" is the classical uncolored token.
using TokenLabel = std::string;

inline const TokenLabel kPlainLabel = "plain";

// Per-place bag of labeled tokens. Places and labels absent from the map are
// implicitly empty; the representation is kept canonical (no zero counts), so
// structural equality is marking equality.
class Marking {
 public:
  using Bag = std::map<TokenLabel, int>;

  Marking() = default;

  int count(const std::string& place) const;
  int count(const std::string& place, const TokenLabel& label) const;
  const Bag& bag(const std::string& place) const;  // empty bag if unmarked
  bool marked(const std::string& place) const { return count(place) > 0; }

  void add(const std::string& place, const TokenLabel& label, int n = 1);
  // Throws NegativeResult if the place holds fewer than n tokens of label.
  void remove(const std::string& place, const TokenLabel& label, int n = 1);
  // Removes n tokens from the lexicographically smallest labels first.
  // Returns the bag actually removed.
  Bag remove_any(const std::string& place, int n);
  void set(const std::string& place, const TokenLabel& label, int n);
  void clear(const std::string& place);

  // Moves the whole bag of `from` into `to`.
  void transfer_all(const std::string& from, const std::string& to);

  int total() const;
  int total(const TokenLabel& label) const;
  // Per-label totals across all places.
  Bag label_totals() const;

  const std::map<std::string, Bag>& bags() const { return bags_; }
  bool empty() const { return bags_.empty(); }

  friend bool operator==(const Marking&, const Marking&) = default;
  friend auto operator<=>(const Marking& a, const Marking& b) {
    return a.bags_ <=> b.bags_;
  }

 private:
  std::map<std::string, Bag> bags_;
};

}  // namespace reconet
