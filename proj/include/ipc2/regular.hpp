#ifndef IPC2_REGULAR_HPP
#define IPC2_REGULAR_HPP

#include <array>
#include <string>
#include <vector>

#include <json.hpp>

#include "ipc2/numbers.hpp"

namespace ipc2 {

// A complete DFA over {0,1}; its language is read as a set of tree nodes
// (finite bit strings). Node sets need not be prefix closed.
class RegularNodeSet {
 public:
  RegularNodeSet(int start, std::vector<bool> accepting, std::vector<std::array<int, 2>> delta);

  static RegularNodeSet none();  // empty language
  static RegularNodeSet all();   // every node

  int state_count() const { return static_cast<int>(delta_.size()); }
  int start() const { return start_; }
  bool accepting(int q) const { return accepting_[q]; }
  int next(int q, int bit) const { return delta_[q][bit]; }

  bool accepts(const std::string& word) const;

  // Minimized with states renumbered in BFS order from the start (0-edge
  // first); equal canonical forms means equal languages.
  RegularNodeSet canonical() const;

  static RegularNodeSet from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;

 private:
  int start_;
  std::vector<bool> accepting_;
  std::vector<std::array<int, 2>> delta_;
};

RegularNodeSet dfa_union(const RegularNodeSet& a, const RegularNodeSet& b);
RegularNodeSet dfa_intersect(const RegularNodeSet& a, const RegularNodeSet& b);
RegularNodeSet dfa_complement(const RegularNodeSet& a);
bool dfa_equivalent(const RegularNodeSet& a, const RegularNodeSet& b);
bool dfa_empty(const RegularNodeSet& a);

// The branch u v v v ..., seen as the node set of its finite prefixes.
struct UltimatelyPeriodicPath {
  std::string prefix;
  std::string period;  // nonempty

  UltimatelyPeriodicPath(std::string u, std::string v);

  // Same branch with minimal period, then minimal prefix.
  UltimatelyPeriodicPath canonical() const;

  friend bool operator==(const UltimatelyPeriodicPath& a, const UltimatelyPeriodicPath& b) {
    return a.prefix == b.prefix && a.period == b.period;
  }
};

// True iff every finite prefix of u v^omega (including the empty one) is
// accepted by S. Terminates after at most |u| + |v| * |states| steps.
bool path_subset(const UltimatelyPeriodicPath& p, const RegularNodeSet& s);

// True iff the branch word has infinitely many 0s and at least one 1,
// i.e. it represents a real in (0,1).
bool sat_u(const UltimatelyPeriodicPath& p);

// Exact value of the binary expansion 0.u v v v ...
Rational r_of(const UltimatelyPeriodicPath& p);

// Decides whether every path of the form u 0 1^omega contained in S has its
// companion u 1 0^omega contained in S as well. Works on the live states
// (states reachable through words all of whose prefixes are accepted): a
// live state q triggers when the all-1s tail from delta(q,0) stays inside
// accepting states, and then the all-0s tail from delta(q,1) must too.
bool decide_closed(const RegularNodeSet& s);

// A finite union of closed intervals [lo, hi] (points when lo == hi) with
// dyadic endpoints strictly inside (0,1). Normalized on construction.
class ClosedDyadicSet {
 public:
  explicit ClosedDyadicSet(std::vector<std::pair<Dyadic, Dyadic>> parts);
  static ClosedDyadicSet empty() { return ClosedDyadicSet({}); }

  const std::vector<std::pair<Dyadic, Dyadic>>& parts() const { return parts_; }
  bool contains(const Rational& x) const;
  // Whether C meets the half-open cell [lo, lo + width) — the membership
  // test behind the node encoding.
  bool meets_cell(const Rational& lo, const Rational& width) const;

  // Parses "1/4..1/2;3/4" style interval lists.
  static ClosedDyadicSet parse_spec(const std::string& spec);

 private:
  std::vector<std::pair<Dyadic, Dyadic>> parts_;
};

// The node set of all U-paths whose value lies in C: a node u of depth k is
// accepted iff C meets [0.u, 0.u + 2^-k). States track the position of the
// current cell relative to C, rescaled to the unit interval, which takes
// finitely many values.
RegularNodeSet encode_closed_set(const ClosedDyadicSet& c);

// True iff some binary expansion of q that has infinitely many 0s and a 1
// is a path inside S. q has at most one such expansion.
bool member_r(const RegularNodeSet& s, const Rational& q);

// The expansion path used by member_r: the terminating expansion for
// dyadics, the unique one otherwise.
UltimatelyPeriodicPath expansion_path(const Rational& q);

}  // namespace ipc2

#endif
