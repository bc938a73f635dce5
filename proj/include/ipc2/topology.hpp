#ifndef IPC2_TOPOLOGY_HPP
#define IPC2_TOPOLOGY_HPP

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "ipc2/syntax.hpp"

namespace ipc2 {

using ElemMask = std::uint32_t;

struct CarrierMismatch : std::runtime_error {
  CarrierMismatch() : std::runtime_error("open sets live on different carriers") {}
};

struct BoundExceeded : std::runtime_error {
  explicit BoundExceeded(const std::string& what) : std::runtime_error(what) {}
};

// A finite poset. The order can be given by any generating set of pairs;
// the reflexive-transitive closure is taken on construction and
// antisymmetry is checked.
class FinitePoset {
 public:
  FinitePoset(std::vector<std::string> names,
              const std::vector<std::pair<std::string, std::string>>& leq_pairs);

  std::size_t size() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }
  int index(const std::string& name) const;
  bool leq(int a, int b) const { return (up_[a] >> b) & 1u; }
  // Bitmask of elements >= a.
  ElemMask up(int a) const { return up_[a]; }
  ElemMask full_mask() const { return size() == 32 ? ~0u : (1u << size()) - 1; }

  bool is_upset(ElemMask m) const;
  // Largest upset contained in m.
  ElemMask interior(ElemMask m) const;

  // All upward-closed subsets in ascending bitmask order, memoized behind a
  // shared cache. Throws BoundExceeded if the carrier has more than `bound`
  // elements (default 12).
  const std::vector<ElemMask>& upset_masks(std::size_t bound = kDefaultBound) const;

  static constexpr std::size_t kDefaultBound = 12;

 private:
  std::vector<std::string> names_;
  std::vector<ElemMask> up_;

  struct Cache {
    std::mutex mutex;
    std::optional<std::vector<ElemMask>> opens;
  };
  std::shared_ptr<Cache> cache_;
};

// An upward-closed subset of a FinitePoset.
class OpenSet {
 public:
  OpenSet(const FinitePoset& poset, ElemMask members);

  const FinitePoset& poset() const { return *poset_; }
  ElemMask mask() const { return members_; }
  bool contains(int e) const { return (members_ >> e) & 1u; }

  std::vector<std::string> element_names() const;

  friend bool operator==(const OpenSet& a, const OpenSet& b) {
    return a.poset_ == b.poset_ && a.members_ == b.members_;
  }

 private:
  const FinitePoset* poset_;
  ElemMask members_;
};

// All opens of P in a deterministic order (ascending element bitmask).
std::vector<OpenSet> enumerate_opens(const FinitePoset& poset,
                                     std::size_t bound = FinitePoset::kDefaultBound);

// Relative pseudo-complement: the largest upset c with c /\ a <= b,
// computed as interior(complement(a) | b).
OpenSet heyting_impl(const OpenSet& a, const OpenSet& b);

using TopoValuation = std::map<Proposition, OpenSet>;

// Evaluates phi over the opens of `poset`; quantifiers range over all
// opens. bot -> empty, /\ -> intersection, \/ -> union, -> -> heyting_impl,
// exists -> union over all opens, forall -> interior of the intersection
// over all opens.
OpenSet eval_topo(const FinitePoset& poset, const TopoValuation& v, const FormulaPtr& phi);

}  // namespace ipc2

#endif
