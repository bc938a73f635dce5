#include "ipc2/topology.hpp"

#include <algorithm>
#include <stdexcept>

namespace ipc2 {

FinitePoset::FinitePoset(std::vector<std::string> names,
                         const std::vector<std::pair<std::string, std::string>>& leq_pairs)
    : names_(std::move(names)), cache_(std::make_shared<Cache>()) {
  if (names_.empty()) throw std::invalid_argument("poset: empty carrier");
  if (names_.size() > 32) throw std::invalid_argument("poset: more than 32 elements");
  std::map<std::string, int> idx;
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (!idx.emplace(names_[i], static_cast<int>(i)).second)
      throw std::invalid_argument("poset: duplicate element '" + names_[i] + "'");
  }
  std::size_t n = names_.size();
  std::vector<ElemMask> above(n, 0);
  for (std::size_t i = 0; i < n; ++i) above[i] |= 1u << i;
  for (const auto& [a, b] : leq_pairs) {
    auto ia = idx.find(a), ib = idx.find(b);
    if (ia == idx.end()) throw std::invalid_argument("poset: unknown element '" + a + "'");
    if (ib == idx.end()) throw std::invalid_argument("poset: unknown element '" + b + "'");
    above[ia->second] |= 1u << ib->second;
  }
  // Warshall transitive closure over the "reaches upward" masks.
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      if ((above[i] >> k) & 1u) above[i] |= above[k];
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j && ((above[i] >> j) & 1u) && ((above[j] >> i) & 1u))
        throw std::invalid_argument("poset: order is not antisymmetric ('" + names_[i] +
                                    "' and '" + names_[j] + "' form a cycle)");
  up_ = std::move(above);
}

int FinitePoset::index(const std::string& name) const {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return static_cast<int>(i);
  throw std::invalid_argument("poset: unknown element '" + name + "'");
}

bool FinitePoset::is_upset(ElemMask m) const {
  for (std::size_t i = 0; i < size(); ++i)
    if ((m >> i) & 1u)
      if ((up_[i] & m) != up_[i]) return false;
  return true;
}

ElemMask FinitePoset::interior(ElemMask m) const {
  ElemMask out = 0;
  for (std::size_t i = 0; i < size(); ++i)
    if ((up_[i] & m) == up_[i]) out |= 1u << i;
  return out;
}

const std::vector<ElemMask>& FinitePoset::upset_masks(std::size_t bound) const {
  if (size() > bound)
    throw BoundExceeded("open-set enumeration bound exceeded: " + std::to_string(size()) +
                        " elements > bound " + std::to_string(bound));
  std::lock_guard<std::mutex> lock(cache_->mutex);
  if (!cache_->opens) {
    std::vector<ElemMask> opens;
    ElemMask full = full_mask();
    for (ElemMask m = 0;; ++m) {
      if (is_upset(m)) opens.push_back(m);
      if (m == full) break;
    }
    cache_->opens = std::move(opens);
  }
  return *cache_->opens;
}

OpenSet::OpenSet(const FinitePoset& poset, ElemMask members) : poset_(&poset), members_(members) {
  if (!poset.is_upset(members)) throw std::invalid_argument("open set is not upward closed");
}

std::vector<std::string> OpenSet::element_names() const {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < poset_->size(); ++i)
    if (contains(static_cast<int>(i))) out.push_back(poset_->names()[i]);
  return out;
}

std::vector<OpenSet> enumerate_opens(const FinitePoset& poset, std::size_t bound) {
  std::vector<OpenSet> out;
  for (ElemMask m : poset.upset_masks(bound)) out.emplace_back(poset, m);
  return out;
}

OpenSet heyting_impl(const OpenSet& a, const OpenSet& b) {
  if (&a.poset() != &b.poset()) throw CarrierMismatch();
  const FinitePoset& p = a.poset();
  ElemMask candidate = (~a.mask() & p.full_mask()) | b.mask();
  return OpenSet(p, p.interior(candidate));
}

namespace {

struct Env {
  std::vector<std::pair<const std::string*, ElemMask>> frames;

  const ElemMask* lookup(const std::string& name) const {
    for (auto it = frames.rbegin(); it != frames.rend(); ++it)
      if (*it->first == name) return &it->second;
    return nullptr;
  }
};

ElemMask eval_rec(const FinitePoset& p, Env& env, const FormulaPtr& phi) {
  switch (phi->kind()) {
    case Conn::Bottom:
      return 0;
    case Conn::Var: {
      const ElemMask* m = env.lookup(phi->prop().str());
      if (!m) throw std::invalid_argument("eval_topo: unbound proposition '" + phi->prop().str() + "'");
      return *m;
    }
    case Conn::And:
      return eval_rec(p, env, phi->lhs()) & eval_rec(p, env, phi->rhs());
    case Conn::Or:
      return eval_rec(p, env, phi->lhs()) | eval_rec(p, env, phi->rhs());
    case Conn::Implies: {
      ElemMask a = eval_rec(p, env, phi->lhs());
      ElemMask b = eval_rec(p, env, phi->rhs());
      return p.interior((~a & p.full_mask()) | b);
    }
    case Conn::Exists: {
      ElemMask acc = 0;
      const std::string& name = phi->prop().str();
      for (ElemMask a : p.upset_masks()) {
        env.frames.emplace_back(&name, a);
        acc |= eval_rec(p, env, phi->body());
        env.frames.pop_back();
      }
      return acc;
    }
    case Conn::Forall: {
      ElemMask acc = p.full_mask();
      const std::string& name = phi->prop().str();
      for (ElemMask a : p.upset_masks()) {
        env.frames.emplace_back(&name, a);
        acc &= eval_rec(p, env, phi->body());
        env.frames.pop_back();
      }
      // Redundant for intersections of upsets, applied for clause fidelity.
      return p.interior(acc);
    }
  }
  throw std::logic_error("eval_topo: unreachable");
}

}  // namespace

OpenSet eval_topo(const FinitePoset& poset, const TopoValuation& v, const FormulaPtr& phi) {
  Env env;
  env.frames.reserve(v.size() + 8);
  for (const auto& [prop, open] : v) {
    if (&open.poset() != &poset) throw CarrierMismatch();
    env.frames.emplace_back(&prop.str(), open.mask());
  }
  return OpenSet(poset, eval_rec(poset, env, phi));
}

}  // namespace ipc2
