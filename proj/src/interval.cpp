#include "ipc2/interval.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <set>

namespace ipc2 {

namespace {
const Dyadic kZero(0, 0);
const Dyadic kOne(1, 0);
}  // namespace

DyadicOpenSet DyadicOpenSet::full() { return interval(kZero, kOne); }

DyadicOpenSet DyadicOpenSet::interval(const Dyadic& lo, const Dyadic& hi) {
  return of({DyInterval{lo, hi}});
}

DyadicOpenSet DyadicOpenSet::of(std::vector<DyInterval> intervals) {
  for (const auto& iv : intervals) {
    if (iv.lo < kZero || kOne < iv.hi)
      throw std::invalid_argument("dyadic open set: interval outside [0,1]");
    if (!(iv.lo < iv.hi)) throw std::invalid_argument("dyadic open set: empty or inverted interval");
  }
  std::sort(intervals.begin(), intervals.end(),
            [](const DyInterval& a, const DyInterval& b) { return a.lo < b.lo; });
  DyadicOpenSet out;
  for (const auto& iv : intervals) {
    if (!out.parts_.empty() && iv.lo < out.parts_.back().hi) {
      // Overlap: merge. A shared endpoint does not merge (the point is
      // missing from the union of two open intervals).
      out.parts_.back().hi = dyadic_max(out.parts_.back().hi, iv.hi);
    } else {
      out.parts_.push_back(iv);
    }
  }
  return out;
}

bool DyadicOpenSet::is_full() const {
  return parts_.size() == 1 && parts_[0].lo == kZero && parts_[0].hi == kOne;
}

bool DyadicOpenSet::contains(const Dyadic& x) const {
  for (const auto& iv : parts_)
    if (iv.lo < x && x < iv.hi) return true;
  return false;
}

bool operator<(const DyadicOpenSet& a, const DyadicOpenSet& b) {
  auto key = [](const DyInterval& iv) {
    return std::array<long long, 4>{iv.lo.num, iv.lo.exp, iv.hi.num, iv.hi.exp};
  };
  return std::lexicographical_compare(
      a.parts_.begin(), a.parts_.end(), b.parts_.begin(), b.parts_.end(),
      [&](const DyInterval& x, const DyInterval& y) { return key(x) < key(y); });
}

std::string DyadicOpenSet::str() const {
  if (parts_.empty()) return "{}";
  std::string out;
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (i) out += " U ";
    out += "(" + to_string(parts_[i].lo) + "," + to_string(parts_[i].hi) + ")";
  }
  return out;
}

DyadicOpenSet set_union(const DyadicOpenSet& a, const DyadicOpenSet& b) {
  std::vector<DyInterval> all = a.intervals();
  all.insert(all.end(), b.intervals().begin(), b.intervals().end());
  return DyadicOpenSet::of(std::move(all));
}

DyadicOpenSet set_intersect(const DyadicOpenSet& a, const DyadicOpenSet& b) {
  std::vector<DyInterval> out;
  for (const auto& x : a.intervals())
    for (const auto& y : b.intervals()) {
      Dyadic lo = dyadic_max(x.lo, y.lo);
      Dyadic hi = dyadic_min(x.hi, y.hi);
      if (lo < hi) out.push_back({lo, hi});
    }
  return DyadicOpenSet::of(std::move(out));
}

bool set_subset(const DyadicOpenSet& a, const DyadicOpenSet& b) {
  // Each component of a, being connected, must fit inside one component of b.
  for (const auto& x : a.intervals()) {
    bool covered = false;
    for (const auto& y : b.intervals())
      if (y.lo <= x.lo && x.hi <= y.hi) {
        covered = true;
        break;
      }
    if (!covered) return false;
  }
  return true;
}

DyadicOpenSet impl_interior(const DyadicOpenSet& a, const DyadicOpenSet& b) {
  // int((0,1) \ a  u  b) = (0,1) \ closure(a \ b). Sweep the endpoint grid:
  // between consecutive endpoints membership in a and b is constant, so the
  // difference, its closure and the final complement are all decidable
  // cell by cell and point by point.
  std::set<Dyadic> grid{kZero, kOne};
  for (const auto& iv : a.intervals()) {
    grid.insert(iv.lo);
    grid.insert(iv.hi);
  }
  for (const auto& iv : b.intervals()) {
    grid.insert(iv.lo);
    grid.insert(iv.hi);
  }
  std::vector<Dyadic> e(grid.begin(), grid.end());
  std::size_t cells = e.size() - 1;

  auto covers_cell = [&](const DyadicOpenSet& s, std::size_t i) {
    for (const auto& iv : s.intervals())
      if (iv.lo <= e[i] && e[i + 1] <= iv.hi) return true;
    return false;
  };

  // a \ b on cells and interior grid points.
  std::vector<bool> diff_cell(cells);
  for (std::size_t i = 0; i < cells; ++i) diff_cell[i] = covers_cell(a, i) && !covers_cell(b, i);
  std::vector<bool> diff_pt(e.size(), false);
  for (std::size_t i = 1; i + 1 < e.size(); ++i) diff_pt[i] = a.contains(e[i]) && !b.contains(e[i]);

  // Closure within (0,1): each selected cell pulls in its finite endpoints.
  std::vector<bool> cl_pt = diff_pt;
  for (std::size_t i = 0; i < cells; ++i)
    if (diff_cell[i]) {
      if (i > 0) cl_pt[i] = true;
      if (i + 1 < e.size() - 1) cl_pt[i + 1] = true;
    }

  // Complement: kept cells and kept interior points, merged into intervals.
  std::vector<DyInterval> out;
  std::size_t i = 0;
  while (i < cells) {
    if (diff_cell[i]) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j + 1 < cells && !cl_pt[j + 1] && !diff_cell[j + 1]) ++j;
    out.push_back({e[i], e[j + 1]});
    i = j + 1;
  }
  return DyadicOpenSet::of(std::move(out));
}

DyadicOpenSet eval_exact(const FormulaPtr& phi, const IntervalValuation& v) {
  switch (phi->kind()) {
    case Conn::Bottom:
      return DyadicOpenSet::empty();
    case Conn::Var: {
      auto it = v.find(phi->prop());
      if (it == v.end())
        throw std::invalid_argument("eval_exact: unbound proposition '" + phi->prop().str() + "'");
      return it->second;
    }
    case Conn::And:
      return set_intersect(eval_exact(phi->lhs(), v), eval_exact(phi->rhs(), v));
    case Conn::Or:
      return set_union(eval_exact(phi->lhs(), v), eval_exact(phi->rhs(), v));
    case Conn::Implies:
      return impl_interior(eval_exact(phi->lhs(), v), eval_exact(phi->rhs(), v));
    case Conn::Forall:
    case Conn::Exists:
      throw QuantifierEncountered();
  }
  throw std::logic_error("eval_exact: unreachable");
}

QuantifierPool QuantifierPool::generate(int depth, int max_depth) {
  if (depth < 1) throw std::invalid_argument("pool depth must be >= 1");
  if (depth > max_depth)
    throw std::invalid_argument("pool depth " + std::to_string(depth) + " exceeds the bound " +
                                std::to_string(max_depth));

  int cells = 1 << depth;
  auto grid_point = [&](int i) { return Dyadic(i, depth); };

  // A union of elementary opens is determined by which grid cells it covers
  // and which internal grid points it contains; a point can be included only
  // when both neighbouring cells are covered.
  std::set<DyadicOpenSet> seen;
  std::vector<DyadicOpenSet> opens;
  auto add = [&](const DyadicOpenSet& s) {
    if (seen.insert(s).second) opens.push_back(s);
  };

  for (std::uint32_t cellmask = 0; cellmask < (1u << cells); ++cellmask) {
    std::uint32_t allowed = 0;
    for (int i = 1; i < cells; ++i)
      if (((cellmask >> (i - 1)) & 1u) && ((cellmask >> i) & 1u)) allowed |= 1u << i;
    std::uint32_t sub = allowed;
    for (;;) {
      // Assemble intervals from covered cells, splitting at excluded points.
      std::vector<DyInterval> parts;
      int i = 0;
      while (i < cells) {
        if (!((cellmask >> i) & 1u)) {
          ++i;
          continue;
        }
        int j = i;
        while (j + 1 < cells && ((cellmask >> (j + 1)) & 1u) && ((sub >> (j + 1)) & 1u)) ++j;
        parts.push_back({grid_point(i), grid_point(j + 1)});
        i = j + 1;
      }
      add(DyadicOpenSet::of(std::move(parts)));
      if (sub == 0) break;
      sub = (sub - 1) & allowed;
    }
  }

  // Punctured sets (0,d) u (d,1) are required members; the enumeration above
  // already yields them, but they are asserted in rather than assumed.
  for (int i = 1; i < cells; ++i) {
    Dyadic d = grid_point(i);
    add(set_union(DyadicOpenSet::interval(kZero, d), DyadicOpenSet::interval(d, kOne)));
  }

  std::sort(opens.begin(), opens.end());
  QuantifierPool pool;
  pool.depth_ = depth;
  pool.opens_ = std::move(opens);
  return pool;
}

namespace {

Sandwich sandwich_rec(const FormulaPtr& phi, IntervalValuation& v, const QuantifierPool& pool) {
  switch (phi->kind()) {
    case Conn::Bottom:
      return {DyadicOpenSet::empty(), DyadicOpenSet::empty()};
    case Conn::Var: {
      auto it = v.find(phi->prop());
      if (it == v.end())
        throw std::invalid_argument("eval_sandwich: unbound proposition '" + phi->prop().str() +
                                    "'");
      return {it->second, it->second};
    }
    case Conn::Implies: {
      Sandwich a = sandwich_rec(phi->lhs(), v, pool);
      Sandwich b = sandwich_rec(phi->rhs(), v, pool);
      return {impl_interior(a.upper, b.lower), impl_interior(a.lower, b.upper)};
    }
    case Conn::Forall: {
      DyadicOpenSet upper = DyadicOpenSet::full();
      auto saved = v.find(phi->prop());
      DyadicOpenSet saved_value;
      bool had = saved != v.end();
      if (had) saved_value = saved->second;
      for (const auto& open : pool.opens()) {
        v.insert_or_assign(phi->prop(), open);
        upper = set_intersect(upper, sandwich_rec(phi->body(), v, pool).upper);
      }
      if (had)
        v.insert_or_assign(phi->prop(), saved_value);
      else
        v.erase(phi->prop());
      return {DyadicOpenSet::empty(), upper};
    }
    case Conn::And:
    case Conn::Or:
    case Conn::Exists:
      throw UndersugaredFormula();
  }
  throw std::logic_error("eval_sandwich: unreachable");
}

}  // namespace

Sandwich eval_sandwich(const FormulaPtr& phi, const IntervalValuation& v,
                       const QuantifierPool& pool) {
  IntervalValuation env = v;
  return sandwich_rec(phi, env, pool);
}

}  // namespace ipc2
