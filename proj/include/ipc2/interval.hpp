#ifndef IPC2_INTERVAL_HPP
#define IPC2_INTERVAL_HPP

#include <map>
#include <string>
#include <vector>

#include "ipc2/numbers.hpp"
#include "ipc2/syntax.hpp"

namespace ipc2 {

// An open interval (lo, hi) with dyadic endpoints, 0 <= lo < hi <= 1.
struct DyInterval {
  Dyadic lo;
  Dyadic hi;

  friend bool operator==(const DyInterval& a, const DyInterval& b) {
    return a.lo == b.lo && a.hi == b.hi;
  }
};

// A finite union of open intervals inside (0,1), kept in canonical form:
// the maximal open intervals of the set, sorted ascending. Two stored
// intervals may share an endpoint only when that point is not in the set,
// e.g. (0,1/2) u (1/2,1).
class DyadicOpenSet {
 public:
  DyadicOpenSet() = default;  // empty set
  static DyadicOpenSet empty() { return DyadicOpenSet(); }
  static DyadicOpenSet full();
  // Normalizes: drops empty intervals, sorts, merges overlaps.
  static DyadicOpenSet of(std::vector<DyInterval> intervals);
  static DyadicOpenSet interval(const Dyadic& lo, const Dyadic& hi);

  const std::vector<DyInterval>& intervals() const { return parts_; }
  bool is_empty() const { return parts_.empty(); }
  bool is_full() const;
  bool contains(const Dyadic& x) const;

  friend bool operator==(const DyadicOpenSet& a, const DyadicOpenSet& b) {
    return a.parts_ == b.parts_;
  }
  friend bool operator!=(const DyadicOpenSet& a, const DyadicOpenSet& b) { return !(a == b); }
  friend bool operator<(const DyadicOpenSet& a, const DyadicOpenSet& b);

  std::string str() const;  // e.g. "(0,1/2) U (1/2,1)", "{}" for the empty set

 private:
  std::vector<DyInterval> parts_;
};

DyadicOpenSet set_union(const DyadicOpenSet& a, const DyadicOpenSet& b);
DyadicOpenSet set_intersect(const DyadicOpenSet& a, const DyadicOpenSet& b);
bool set_subset(const DyadicOpenSet& a, const DyadicOpenSet& b);

// Interior, within (0,1), of (complement of a) union b — the value of an
// implication. Exact: the sweep over the finitely many endpoints decides
// every cell and boundary point.
DyadicOpenSet impl_interior(const DyadicOpenSet& a, const DyadicOpenSet& b);

struct QuantifierEncountered : std::runtime_error {
  QuantifierEncountered() : std::runtime_error("eval_exact requires a quantifier-free formula") {}
};

struct UndersugaredFormula : std::runtime_error {
  UndersugaredFormula()
      : std::runtime_error("eval_sandwich requires a desugared formula (Var/Bottom/Implies/Forall only)") {}
};

using IntervalValuation = std::map<Proposition, DyadicOpenSet>;

// Exact topological value of a quantifier-free formula in (0,1).
DyadicOpenSet eval_exact(const FormulaPtr& phi, const IntervalValuation& v);

// Finite stand-in for the open sets of (0,1) used by the universal
// quantifier: every union of the elementary opens (i/2^k, j/2^k), plus all
// punctured sets (0,d) u (d,1) for dyadic d of denominator <= 2^k.
class QuantifierPool {
 public:
  static QuantifierPool generate(int depth, int max_depth = kDefaultMaxDepth);

  int depth() const { return depth_; }
  const std::vector<DyadicOpenSet>& opens() const { return opens_; }

  static constexpr int kDefaultMaxDepth = 3;

 private:
  int depth_ = 0;
  std::vector<DyadicOpenSet> opens_;
};

struct Sandwich {
  DyadicOpenSet lower;
  DyadicOpenSet upper;
};

// Two-sided approximation with lower <= value <= upper:
//   Var/Bottom: both sides exact;
//   Implies:    upper = impl_interior(lower(lhs), upper(rhs)),
//               lower = impl_interior(upper(lhs), lower(rhs));
//   Forall:     upper = intersection of upper values over the pool,
//               lower = empty (a finite pool cannot certify the full
//               intersection).
// If upper != (0,1) the formula is not true in (0,1); the converse is
// never concluded.
Sandwich eval_sandwich(const FormulaPtr& phi, const IntervalValuation& v,
                       const QuantifierPool& pool);

}  // namespace ipc2

#endif
