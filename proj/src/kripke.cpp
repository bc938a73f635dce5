#include "ipc2/kripke.hpp"

#include <algorithm>
#include <stdexcept>

namespace ipc2 {

namespace {

std::vector<WorldMask> closure_of_pairs(const std::vector<std::string>& names,
                                        const std::vector<std::pair<std::string, std::string>>& pairs) {
  std::map<std::string, int> idx;
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (!idx.emplace(names[i], static_cast<int>(i)).second)
      throw std::invalid_argument("frame: duplicate world '" + names[i] + "'");
  }
  std::size_t n = names.size();
  std::vector<WorldMask> up(n, 0);
  for (std::size_t i = 0; i < n; ++i) up[i] |= 1u << i;
  for (const auto& [a, b] : pairs) {
    auto ia = idx.find(a), ib = idx.find(b);
    if (ia == idx.end()) throw std::invalid_argument("frame: unknown world '" + a + "'");
    if (ib == idx.end()) throw std::invalid_argument("frame: unknown world '" + b + "'");
    up[ia->second] |= 1u << ib->second;
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      if ((up[i] >> k) & 1u) up[i] |= up[k];
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j && ((up[i] >> j) & 1u) && ((up[j] >> i) & 1u))
        throw std::invalid_argument("frame: order is not antisymmetric ('" + names[i] + "' and '" +
                                    names[j] + "' form a cycle)");
  return up;
}

std::vector<WorldMask> all_upsets(const std::vector<WorldMask>& up, WorldMask full) {
  std::vector<WorldMask> out;
  std::size_t n = up.size();
  for (WorldMask m = 0;; ++m) {
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i)
      if ((m >> i) & 1u)
        if ((up[i] & m) != up[i]) ok = false;
    if (ok) out.push_back(m);
    if (m == full) break;
  }
  return out;
}

}  // namespace

KripkeFrame::KripkeFrame(std::vector<std::string> worlds,
                         const std::vector<std::pair<std::string, std::string>>& leq_pairs,
                         std::vector<std::vector<WorldMask>> domains)
    : names_(std::move(worlds)), domains_(std::move(domains)) {
  if (names_.empty()) throw std::invalid_argument("frame: empty set of worlds");
  if (names_.size() > 32) throw std::invalid_argument("frame: more than 32 worlds");
  up_ = closure_of_pairs(names_, leq_pairs);
  if (domains_.size() != names_.size())
    throw std::invalid_argument("frame: one domain family required per world");

  for (std::size_t c = 0; c < names_.size(); ++c) {
    auto& d = domains_[c];
    std::sort(d.begin(), d.end());
    d.erase(std::unique(d.begin(), d.end()), d.end());
    for (WorldMask m : d) {
      if (m & ~full_mask()) throw std::invalid_argument("frame: domain member out of range");
      if (!is_upward_closed(m))
        throw std::invalid_argument("frame: domain member at world '" + names_[c] +
                                    "' is not upward closed");
    }
  }
  for (std::size_t c = 0; c < names_.size(); ++c)
    for (std::size_t d = 0; d < names_.size(); ++d)
      if (c != d && leq(static_cast<int>(c), static_cast<int>(d)))
        for (WorldMask m : domains_[c])
          if (!std::binary_search(domains_[d].begin(), domains_[d].end(), m))
            throw std::invalid_argument("frame: domains do not grow along the order (D_" +
                                        names_[c] + " is not contained in D_" + names_[d] + ")");

  for (const auto& d : domains_) domain_union_.insert(domain_union_.end(), d.begin(), d.end());
  std::sort(domain_union_.begin(), domain_union_.end());
  domain_union_.erase(std::unique(domain_union_.begin(), domain_union_.end()),
                      domain_union_.end());
}

KripkeFrame KripkeFrame::principal(std::vector<std::string> worlds,
                                   const std::vector<std::pair<std::string, std::string>>& leq_pairs) {
  auto up = closure_of_pairs(worlds, leq_pairs);
  WorldMask full = worlds.size() == 32 ? ~0u : (1u << worlds.size()) - 1;
  auto upsets = all_upsets(up, full);
  std::vector<std::vector<WorldMask>> domains(worlds.size(), upsets);
  return KripkeFrame(std::move(worlds), leq_pairs, std::move(domains));
}

KripkeFrame principal_frame(const FinitePoset& poset) {
  std::vector<std::pair<std::string, std::string>> pairs;
  for (std::size_t a = 0; a < poset.size(); ++a)
    for (std::size_t b = 0; b < poset.size(); ++b)
      if (poset.leq(static_cast<int>(a), static_cast<int>(b)))
        pairs.emplace_back(poset.names()[a], poset.names()[b]);
  return KripkeFrame::principal(poset.names(), pairs);
}

int KripkeFrame::world_index(const std::string& name) const {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return static_cast<int>(i);
  throw std::invalid_argument("frame: unknown world '" + name + "'");
}

bool KripkeFrame::is_upward_closed(WorldMask m) const {
  for (std::size_t i = 0; i < world_count(); ++i)
    if ((m >> i) & 1u)
      if ((up_[i] & m) != up_[i]) return false;
  return true;
}

bool KripkeFrame::is_principal() const {
  auto upsets = all_upsets(up_, full_mask());
  for (const auto& d : domains_)
    if (d != upsets) return false;
  return true;
}

namespace {

struct Env {
  std::vector<std::pair<const std::string*, WorldMask>> frames;

  const WorldMask* lookup(const std::string& name) const {
    for (auto it = frames.rbegin(); it != frames.rend(); ++it)
      if (*it->first == name) return &it->second;
    return nullptr;
  }
};

WorldMask eval_rec(const KripkeFrame& f, Env& env, const FormulaPtr& phi) {
  switch (phi->kind()) {
    case Conn::Bottom:
      return 0;
    case Conn::Var: {
      const WorldMask* m = env.lookup(phi->prop().str());
      if (!m)
        throw std::invalid_argument("eval_kripke: unbound proposition '" + phi->prop().str() + "'");
      return *m;
    }
    case Conn::And:
      return eval_rec(f, env, phi->lhs()) & eval_rec(f, env, phi->rhs());
    case Conn::Or:
      return eval_rec(f, env, phi->lhs()) | eval_rec(f, env, phi->rhs());
    case Conn::Implies: {
      WorldMask a = eval_rec(f, env, phi->lhs());
      WorldMask b = eval_rec(f, env, phi->rhs());
      WorldMask bad = a & ~b;
      WorldMask out = 0;
      for (std::size_t c = 0; c < f.world_count(); ++c)
        if ((f.up(static_cast<int>(c)) & bad) == 0) out |= 1u << c;
      return out;
    }
    case Conn::Exists: {
      const std::string& name = phi->prop().str();
      WorldMask out = 0;
      for (WorldMask a : f.domain_union()) {
        env.frames.emplace_back(&name, a);
        WorldMask sat = eval_rec(f, env, phi->body());
        env.frames.pop_back();
        for (std::size_t c = 0; c < f.world_count(); ++c)
          if (((sat >> c) & 1u) &&
              std::binary_search(f.domain(static_cast<int>(c)).begin(),
                                 f.domain(static_cast<int>(c)).end(), a))
            out |= 1u << c;
      }
      return out;
    }
    case Conn::Forall: {
      const std::string& name = phi->prop().str();
      // forced(c') = psi holds at c' under every a in D_{c'}.
      WorldMask forced = f.full_mask();
      for (WorldMask a : f.domain_union()) {
        env.frames.emplace_back(&name, a);
        WorldMask sat = eval_rec(f, env, phi->body());
        env.frames.pop_back();
        for (std::size_t c = 0; c < f.world_count(); ++c)
          if (!((sat >> c) & 1u) &&
              std::binary_search(f.domain(static_cast<int>(c)).begin(),
                                 f.domain(static_cast<int>(c)).end(), a))
            forced &= ~(1u << c);
      }
      WorldMask out = 0;
      for (std::size_t c = 0; c < f.world_count(); ++c)
        if ((f.up(static_cast<int>(c)) & ~forced) == 0) out |= 1u << c;
      return out;
    }
  }
  throw std::logic_error("eval_kripke: unreachable");
}

}  // namespace

WorldMask eval_kripke(const KripkeFrame& frame, const WorldValuation& v, const FormulaPtr& phi) {
  Env env;
  env.frames.reserve(v.size() + 8);
  for (const auto& [prop, mask] : v) {
    if (!frame.is_upward_closed(mask))
      throw std::invalid_argument("eval_kripke: valuation of '" + prop.str() +
                                  "' is not upward closed");
    env.frames.emplace_back(&prop.str(), mask);
  }
  WorldMask out = eval_rec(frame, env, phi);
  if (!frame.is_upward_closed(out))
    throw std::logic_error("eval_kripke: persistence violated");  // never expected
  return out;
}

bool comprehension_closed(const KripkeFrame& frame, const std::vector<FormulaPtr>& pool,
                          const std::vector<WorldValuation>& vals) {
  for (const auto& phi : pool) {
    for (const auto& v : vals) {
      WorldMask sat = eval_kripke(frame, v, phi);
      for (std::size_t c = 0; c < frame.world_count(); ++c) {
        WorldMask restricted = sat & frame.up(static_cast<int>(c));
        const auto& d = frame.domain(static_cast<int>(c));
        if (!std::binary_search(d.begin(), d.end(), restricted)) return false;
      }
    }
  }
  return true;
}

}  // namespace ipc2
