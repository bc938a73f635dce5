#ifndef IPC2_KRIPKE_HPP
#define IPC2_KRIPKE_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ipc2/syntax.hpp"
#include "ipc2/topology.hpp"

namespace ipc2 {

using WorldMask = std::uint32_t;

// A finite frame (C, <=, {D_c}) for second-order Kripke semantics. Every
// member of every D_c must be upward closed, and D_c must grow along the
// order (c <= c' implies D_c a subset of D_c').
class KripkeFrame {
 public:
  KripkeFrame(std::vector<std::string> worlds,
              const std::vector<std::pair<std::string, std::string>>& leq_pairs,
              std::vector<std::vector<WorldMask>> domains);

  // Frame whose every domain is the family of all upward-closed sets.
  static KripkeFrame principal(std::vector<std::string> worlds,
                               const std::vector<std::pair<std::string, std::string>>& leq_pairs);

  std::size_t world_count() const { return names_.size(); }
  const std::vector<std::string>& world_names() const { return names_; }
  int world_index(const std::string& name) const;
  bool leq(int a, int b) const { return (up_[a] >> b) & 1u; }
  WorldMask up(int w) const { return up_[w]; }
  WorldMask full_mask() const { return world_count() == 32 ? ~0u : (1u << world_count()) - 1; }

  const std::vector<WorldMask>& domain(int w) const { return domains_[w]; }
  // Sorted union of all per-world domains.
  const std::vector<WorldMask>& domain_union() const { return domain_union_; }

  bool is_upward_closed(WorldMask m) const;
  // True iff every D_c is the family of all upward-closed subsets.
  bool is_principal() const;

 private:
  std::vector<std::string> names_;
  std::vector<WorldMask> up_;
  std::vector<std::vector<WorldMask>> domains_;  // sorted, deduplicated
  std::vector<WorldMask> domain_union_;
};

// Mirrors a poset as its principal frame (same element order).
KripkeFrame principal_frame(const FinitePoset& poset);

using WorldValuation = std::map<Proposition, WorldMask>;

// Persistent second-order forcing; the result is always upward closed.
// Quantifier clauses: c forces forall p.psi iff psi holds at every c' >= c
// under every a in D_{c'}; c forces exists p.psi iff psi holds at c under
// some a in D_c.
WorldMask eval_kripke(const KripkeFrame& frame, const WorldValuation& v, const FormulaPtr& phi);

// For every formula in `pool`, valuation in `vals` and world c, checks that
// {c' >= c : c' forces phi} is a member of D_c.
bool comprehension_closed(const KripkeFrame& frame, const std::vector<FormulaPtr>& pool,
                          const std::vector<WorldValuation>& vals);

}  // namespace ipc2

#endif
