#include "ipc2/regular.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

namespace ipc2 {

RegularNodeSet::RegularNodeSet(int start, std::vector<bool> accepting,
                               std::vector<std::array<int, 2>> delta)
    : start_(start), accepting_(std::move(accepting)), delta_(std::move(delta)) {
  int n = static_cast<int>(delta_.size());
  if (n == 0) throw std::invalid_argument("dfa: at least one state required");
  if (static_cast<int>(accepting_.size()) != n)
    throw std::invalid_argument("dfa: accepting vector size mismatch");
  if (start_ < 0 || start_ >= n) throw std::invalid_argument("dfa: start state out of range");
  for (const auto& row : delta_)
    for (int b = 0; b < 2; ++b)
      if (row[b] < 0 || row[b] >= n)
        throw std::invalid_argument("dfa: transition target out of range");
}

RegularNodeSet RegularNodeSet::none() { return RegularNodeSet(0, {false}, {{0, 0}}); }
RegularNodeSet RegularNodeSet::all() { return RegularNodeSet(0, {true}, {{0, 0}}); }

bool RegularNodeSet::accepts(const std::string& word) const {
  int q = start_;
  for (char c : word) {
    if (c != '0' && c != '1') throw std::invalid_argument("dfa: word must be over {0,1}");
    q = next(q, c - '0');
  }
  return accepting(q);
}

RegularNodeSet RegularNodeSet::canonical() const {
  int n = state_count();
  // Restrict to the reachable part.
  std::vector<int> order;
  std::vector<int> id(n, -1);
  order.push_back(start_);
  id[start_] = 0;
  for (std::size_t i = 0; i < order.size(); ++i)
    for (int b = 0; b < 2; ++b) {
      int t = next(order[i], b);
      if (id[t] < 0) {
        id[t] = static_cast<int>(order.size());
        order.push_back(t);
      }
    }

  // Moore refinement on the reachable states.
  int m = static_cast<int>(order.size());
  std::vector<int> cls(m);
  for (int i = 0; i < m; ++i) cls[i] = accepting(order[i]) ? 1 : 0;
  for (;;) {
    std::map<std::array<int, 3>, int> sig;
    std::vector<int> next_cls(m);
    for (int i = 0; i < m; ++i) {
      std::array<int, 3> key = {cls[i], cls[id[next(order[i], 0)]], cls[id[next(order[i], 1)]]};
      auto [it, inserted] = sig.emplace(key, static_cast<int>(sig.size()));
      next_cls[i] = it->second;
    }
    if (next_cls == cls) break;
    cls = next_cls;
  }

  // Renumber classes in BFS order from the start class, 0-edge first.
  int classes = *std::max_element(cls.begin(), cls.end()) + 1;
  std::vector<int> repr(classes, -1);
  for (int i = 0; i < m; ++i)
    if (repr[cls[i]] < 0) repr[cls[i]] = i;
  std::vector<int> rename(classes, -1);
  std::vector<int> bfs;
  rename[cls[0]] = 0;
  bfs.push_back(cls[0]);
  for (std::size_t i = 0; i < bfs.size(); ++i) {
    int c = bfs[i];
    for (int b = 0; b < 2; ++b) {
      int t = cls[id[next(order[repr[c]], b)]];
      if (rename[t] < 0) {
        rename[t] = static_cast<int>(bfs.size());
        bfs.push_back(t);
      }
    }
  }

  int k = static_cast<int>(bfs.size());
  std::vector<bool> acc(k);
  std::vector<std::array<int, 2>> delta(k);
  for (int c = 0; c < classes; ++c) {
    if (rename[c] < 0) continue;  // unreachable class cannot occur
    int i = repr[c];
    acc[rename[c]] = accepting(order[i]);
    for (int b = 0; b < 2; ++b) delta[rename[c]][b] = rename[cls[id[next(order[i], b)]]];
  }
  return RegularNodeSet(0, std::move(acc), std::move(delta));
}

namespace {

RegularNodeSet product(const RegularNodeSet& a, const RegularNodeSet& b, bool conj) {
  int na = a.state_count(), nb = b.state_count();
  auto pack = [&](int qa, int qb) { return qa * nb + qb; };
  std::vector<bool> acc(na * nb);
  std::vector<std::array<int, 2>> delta(na * nb);
  for (int qa = 0; qa < na; ++qa)
    for (int qb = 0; qb < nb; ++qb) {
      acc[pack(qa, qb)] = conj ? (a.accepting(qa) && b.accepting(qb))
                               : (a.accepting(qa) || b.accepting(qb));
      for (int bit = 0; bit < 2; ++bit)
        delta[pack(qa, qb)][bit] = pack(a.next(qa, bit), b.next(qb, bit));
    }
  return RegularNodeSet(pack(a.start(), b.start()), std::move(acc), std::move(delta));
}

}  // namespace

RegularNodeSet dfa_union(const RegularNodeSet& a, const RegularNodeSet& b) {
  return product(a, b, false);
}

RegularNodeSet dfa_intersect(const RegularNodeSet& a, const RegularNodeSet& b) {
  return product(a, b, true);
}

RegularNodeSet dfa_complement(const RegularNodeSet& a) {
  std::vector<bool> acc(a.state_count());
  std::vector<std::array<int, 2>> delta(a.state_count());
  for (int q = 0; q < a.state_count(); ++q) {
    acc[q] = !a.accepting(q);
    delta[q] = {a.next(q, 0), a.next(q, 1)};
  }
  return RegularNodeSet(a.start(), std::move(acc), std::move(delta));
}

bool dfa_empty(const RegularNodeSet& a) {
  std::vector<bool> seen(a.state_count(), false);
  std::deque<int> queue{a.start()};
  seen[a.start()] = true;
  while (!queue.empty()) {
    int q = queue.front();
    queue.pop_front();
    if (a.accepting(q)) return false;
    for (int b = 0; b < 2; ++b)
      if (!seen[a.next(q, b)]) {
        seen[a.next(q, b)] = true;
        queue.push_back(a.next(q, b));
      }
  }
  return true;
}

bool dfa_equivalent(const RegularNodeSet& a, const RegularNodeSet& b) {
  return dfa_empty(dfa_intersect(a, dfa_complement(b))) &&
         dfa_empty(dfa_intersect(b, dfa_complement(a)));
}

RegularNodeSet RegularNodeSet::from_json(const nlohmann::json& j) {
  int n = j.at("states").get<int>();
  int start = j.at("start").get<int>();
  std::vector<bool> acc(n, false);
  for (int q : j.at("accepting")) {
    if (q < 0 || q >= n) throw std::invalid_argument("dfa json: accepting state out of range");
    acc[q] = true;
  }
  std::vector<std::array<int, 2>> delta;
  for (const auto& row : j.at("delta")) {
    if (!row.is_array() || row.size() != 2)
      throw std::invalid_argument("dfa json: each delta row needs two targets");
    delta.push_back({row[0].get<int>(), row[1].get<int>()});
  }
  if (static_cast<int>(delta.size()) != n)
    throw std::invalid_argument("dfa json: delta size differs from state count");
  return RegularNodeSet(start, std::move(acc), std::move(delta));
}

nlohmann::json RegularNodeSet::to_json() const {
  nlohmann::json j;
  j["states"] = state_count();
  j["start"] = start();
  nlohmann::json acc = nlohmann::json::array();
  for (int q = 0; q < state_count(); ++q)
    if (accepting(q)) acc.push_back(q);
  j["accepting"] = acc;
  nlohmann::json delta = nlohmann::json::array();
  for (int q = 0; q < state_count(); ++q) delta.push_back({next(q, 0), next(q, 1)});
  j["delta"] = delta;
  return j;
}

// ---------------------------------------------------------------------------
// Ultimately periodic paths
// ---------------------------------------------------------------------------

UltimatelyPeriodicPath::UltimatelyPeriodicPath(std::string u, std::string v)
    : prefix(std::move(u)), period(std::move(v)) {
  if (period.empty()) throw std::invalid_argument("path: period must be nonempty");
  for (char c : prefix + period)
    if (c != '0' && c != '1') throw std::invalid_argument("path: bits must be 0 or 1");
}

UltimatelyPeriodicPath UltimatelyPeriodicPath::canonical() const {
  std::string u = prefix, v = period;
  // Minimal period: the shortest divisor-length block repeating through v.
  for (std::size_t d = 1; d < v.size(); ++d) {
    if (v.size() % d) continue;
    bool repeats = true;
    for (std::size_t i = d; i < v.size() && repeats; ++i)
      if (v[i] != v[i % d]) repeats = false;
    if (repeats) {
      v = v.substr(0, d);
      break;
    }
  }
  // Minimal prefix: rotate the period backwards through the prefix.
  while (!u.empty() && u.back() == v.back()) {
    v = std::string(1, v.back()) + v.substr(0, v.size() - 1);
    u.pop_back();
  }
  return UltimatelyPeriodicPath(u, v);
}

bool path_subset(const UltimatelyPeriodicPath& p, const RegularNodeSet& s) {
  int q = s.start();
  if (!s.accepting(q)) return false;  // the root is a node of every path
  for (char c : p.prefix) {
    q = s.next(q, c - '0');
    if (!s.accepting(q)) return false;
  }
  std::set<int> seen;
  while (!seen.count(q)) {
    seen.insert(q);
    for (char c : p.period) {
      q = s.next(q, c - '0');
      if (!s.accepting(q)) return false;
    }
  }
  return true;
}

bool sat_u(const UltimatelyPeriodicPath& p) {
  bool zero_in_period = p.period.find('0') != std::string::npos;
  bool one_somewhere = p.prefix.find('1') != std::string::npos ||
                       p.period.find('1') != std::string::npos;
  return zero_in_period && one_somewhere;
}

namespace {

long long bits_value(const std::string& bits) {
  long long v = 0;
  for (char c : bits) v = v * 2 + (c - '0');
  return v;
}

}  // namespace

Rational r_of(const UltimatelyPeriodicPath& p) {
  if (p.prefix.size() + p.period.size() > 62)
    throw std::overflow_error("r_of: path representation too long for exact arithmetic");
  long long u = bits_value(p.prefix);
  long long v = bits_value(p.period);
  long long pu = 1LL << p.prefix.size();
  long long pv = (1LL << p.period.size()) - 1;
  // 0.u v v v ... = u/2^|u| + v / (2^|u| (2^|v|-1)); the length guard keeps
  // both sides within 62 bits.
  return Rational(u * pv + v, pu * pv);
}

bool decide_closed(const RegularNodeSet& s) {
  int n = s.state_count();
  // Live states: reachable through words all of whose prefixes are accepted.
  std::vector<bool> live(n, false);
  if (!s.accepting(s.start())) return true;  // no path is contained in S at all
  std::deque<int> queue{s.start()};
  live[s.start()] = true;
  while (!queue.empty()) {
    int q = queue.front();
    queue.pop_front();
    for (int b = 0; b < 2; ++b) {
      int t = s.next(q, b);
      if (s.accepting(t) && !live[t]) {
        live[t] = true;
        queue.push_back(t);
      }
    }
  }

  auto all_accepting_tail = [&](int q, int bit) {
    std::vector<bool> seen(n, false);
    while (!seen[q]) {
      if (!s.accepting(q)) return false;
      seen[q] = true;
      q = s.next(q, bit);
    }
    return true;
  };

  for (int q = 0; q < n; ++q) {
    if (!live[q]) continue;
    bool trigger = all_accepting_tail(s.next(q, 0), 1);   // some u01^omega inside S
    if (trigger && !all_accepting_tail(s.next(q, 1), 0))  // companion u10^omega
      return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Closed sets and their encodings
// ---------------------------------------------------------------------------

ClosedDyadicSet::ClosedDyadicSet(std::vector<std::pair<Dyadic, Dyadic>> parts)
    : parts_(std::move(parts)) {
  const Dyadic zero(0, 0), one(1, 0);
  for (const auto& [lo, hi] : parts_) {
    if (!(zero < lo) || !(hi < one))
      throw std::invalid_argument("closed set: endpoints must lie strictly inside (0,1)");
    if (hi < lo) throw std::invalid_argument("closed set: inverted interval");
  }
  std::sort(parts_.begin(), parts_.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<std::pair<Dyadic, Dyadic>> merged;
  for (const auto& part : parts_) {
    if (!merged.empty() && part.first <= merged.back().second) {
      merged.back().second = dyadic_max(merged.back().second, part.second);
    } else {
      merged.push_back(part);
    }
  }
  parts_ = std::move(merged);
}

bool ClosedDyadicSet::contains(const Rational& x) const {
  for (const auto& [lo, hi] : parts_)
    if (Rational::of(lo) <= x && x <= Rational::of(hi)) return true;
  return false;
}

bool ClosedDyadicSet::meets_cell(const Rational& lo, const Rational& width) const {
  Rational hi(lo.num * width.den + width.num * lo.den, lo.den * width.den);  // lo + width
  for (const auto& [a, b] : parts_)
    if (Rational::of(a) < hi && lo <= Rational::of(b)) return true;
  return false;
}

ClosedDyadicSet ClosedDyadicSet::parse_spec(const std::string& spec) {
  std::vector<std::pair<Dyadic, Dyadic>> parts;
  auto parse_dyadic = [](const std::string& s) {
    auto slash = s.find('/');
    long long num = std::stoll(s.substr(0, slash));
    long long den = slash == std::string::npos ? 1 : std::stoll(s.substr(slash + 1));
    return Dyadic::from_fraction(num, den);
  };
  std::size_t pos = 0;
  while (pos < spec.size()) {
    auto semi = spec.find(';', pos);
    std::string item = spec.substr(pos, semi == std::string::npos ? std::string::npos : semi - pos);
    pos = semi == std::string::npos ? spec.size() : semi + 1;
    if (item.empty()) continue;
    auto dots = item.find("..");
    if (dots == std::string::npos) {
      Dyadic d = parse_dyadic(item);
      parts.emplace_back(d, d);
    } else {
      parts.emplace_back(parse_dyadic(item.substr(0, dots)), parse_dyadic(item.substr(dots + 2)));
    }
  }
  return ClosedDyadicSet(std::move(parts));
}

namespace {

// A state of the cell-tracking construction: the intersection of C with the
// current cell, rescaled to [0,1). Components are closed on the left; the
// right end is open exactly when it was clipped at the cell boundary.
struct RelPiece {
  Dyadic lo;
  Dyadic hi;
  bool hi_closed;

  friend bool operator==(const RelPiece& a, const RelPiece& b) {
    return a.lo == b.lo && a.hi == b.hi && a.hi_closed == b.hi_closed;
  }
  friend bool operator<(const RelPiece& a, const RelPiece& b) {
    if (a.lo != b.lo) return a.lo < b.lo;
    if (a.hi != b.hi) return a.hi < b.hi;
    return a.hi_closed < b.hi_closed;
  }
};

using RelState = std::vector<RelPiece>;

// Clip to the half [w0, w1) and rescale x -> 2x - bit.
RelState half_state(const RelState& s, int bit) {
  const Dyadic half(1, 1), one(1, 0), zero(0, 0);
  Dyadic w0 = bit ? half : zero;
  Dyadic w1 = bit ? one : half;
  RelState out;
  for (const auto& piece : s) {
    Dyadic lo = dyadic_max(piece.lo, w0);
    Dyadic hi = piece.hi;
    bool hi_closed = piece.hi_closed;
    if (w1 < hi || hi == w1) {
      hi = w1;
      hi_closed = false;
    }
    bool nonempty = lo < hi || (lo == hi && hi_closed);
    if (!nonempty) continue;
    Dyadic rlo = dyadic_double(lo), rhi = dyadic_double(hi);
    if (bit) {
      rlo = dyadic_sub_one(rlo);
      rhi = dyadic_sub_one(rhi);
    }
    out.push_back({rlo, rhi, hi_closed});
  }
  return out;
}

}  // namespace

RegularNodeSet encode_closed_set(const ClosedDyadicSet& c) {
  RelState root;
  for (const auto& [lo, hi] : c.parts()) root.push_back({lo, hi, true});

  std::map<RelState, int> index;
  std::vector<RelState> states;
  auto intern = [&](const RelState& s) {
    auto [it, inserted] = index.emplace(s, static_cast<int>(states.size()));
    if (inserted) states.push_back(s);
    return it->second;
  };

  intern(root);
  std::vector<std::array<int, 2>> delta;
  for (std::size_t q = 0; q < states.size(); ++q) {
    RelState cur = states[q];  // copy: states may reallocate below
    std::array<int, 2> row{};
    for (int bit = 0; bit < 2; ++bit) row[bit] = intern(half_state(cur, bit));
    delta.push_back(row);
    if (states.size() > 4096)
      throw std::runtime_error("encode_closed_set: state bound exceeded");
  }
  std::vector<bool> acc(states.size());
  for (std::size_t q = 0; q < states.size(); ++q) acc[q] = !states[q].empty();
  return RegularNodeSet(0, std::move(acc), std::move(delta));
}

UltimatelyPeriodicPath expansion_path(const Rational& q) {
  if (!(Rational(0, 1) < q && q < Rational(1, 1)))
    throw std::domain_error("expansion_path: value must lie in (0,1)");
  if (q.is_dyadic()) {
    // Terminating expansion u 0^omega where u are the bits of the numerator.
    int k = 0;
    while ((1LL << k) != q.den) ++k;
    std::string bits;
    for (int i = k - 1; i >= 0; --i) bits += ((q.num >> i) & 1) ? '1' : '0';
    return UltimatelyPeriodicPath(bits, "0");
  }
  // Long division: residues repeat, giving prefix and period.
  std::map<std::pair<long long, long long>, std::size_t> seen;
  std::string bits;
  Rational x = q;
  for (;;) {
    auto key = std::make_pair(x.num, x.den);
    auto it = seen.find(key);
    if (it != seen.end())
      return UltimatelyPeriodicPath(bits.substr(0, it->second), bits.substr(it->second));
    seen.emplace(key, bits.size());
    Rational doubled(2 * x.num, x.den);
    int bit = doubled >= Rational(1, 1) ? 1 : 0;
    bits += static_cast<char>('0' + bit);
    x = bit ? Rational(doubled.num - doubled.den, doubled.den) : doubled;
  }
}

bool member_r(const RegularNodeSet& s, const Rational& q) {
  UltimatelyPeriodicPath p = expansion_path(q);
  return sat_u(p) && path_subset(p, s);
}

}  // namespace ipc2
