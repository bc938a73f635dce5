#ifndef IPC2_PROOF_HPP
#define IPC2_PROOF_HPP

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "ipc2/syntax.hpp"

namespace ipc2 {

// Gamma |- phi with Gamma a multiset (duplicates counted, order irrelevant).
struct Sequent {
  std::vector<FormulaPtr> context;
  FormulaPtr goal;
};

enum class Rule {
  Axiom,
  AndI,
  AndEL,
  AndER,
  OrIL,
  OrIR,
  OrE,
  ImplI,
  ImplE,
  BotE,
  ForallI,
  ForallE,
  ExistsI,
  ExistsE,
  CdAxiom,
};

int rule_arity(Rule r);
const char* rule_name(Rule r);
Rule rule_from_name(const std::string& name);
// Rules of the same family differ only in a left/right flavour
// (AndE-L/AndE-R, OrI-L/OrI-R).
int rule_family(Rule r);

// An explicit derivation. Every node carries its full sequent; witnesses
// name the instantiated formula (ForallE/ExistsI) or the eigenvariable
// (ForallI/ExistsE).
//
// Premise order follows the conclusion-first reading of each rule with the
// major premise first. In particular OrE is encoded as
//   [Gamma |- phi \/ psi,  Gamma, phi |- rho,  Gamma, psi |- rho]
// and ExistsE as
//   [Gamma |- exists p. phi,  Gamma, phi[p] |- psi].
// Presentations that list the minor premises first are the same rule with
// the premises permuted; this encoding fixes one order for the JSON format.
struct ProofTree {
  Rule rule;
  Sequent conclusion;
  std::vector<ProofTree> premises;
  std::optional<FormulaPtr> witness_formula;
  std::optional<Proposition> witness_var;
};

// IPC2Minus restricts ForallE/ExistsI witnesses to atomic formulas; IPC2CD
// additionally accepts CD-Axiom nodes; IPC rejects all quantifier rules.
enum class CalculusVariant { Ipc2, Ipc2Minus, Ipc2Cd, Ipc };

CalculusVariant variant_from_name(const std::string& name);

enum class RejectReason {
  WrongArity,
  ContextMismatch,
  EigenvariableViolation,
  NonAtomicWitness,
  BadSubstitution,
  VariantForbidsRule,
  GoalMismatch,
  MissingWitness,
};

const char* reject_reason_name(RejectReason r);

struct Verdict {
  bool accepted = true;
  std::vector<int> path;  // child indices from the root to the failing node
  RejectReason reason = RejectReason::GoalMismatch;
  std::string detail;

  std::string path_string() const;  // "root" or dotted indices like "0.1.0"
};

// Checks every node locally (its conclusion against its rule and its
// premises' stated conclusions) and reports the first failure in pre-order.
Verdict check_proof(const ProofTree& tree, CalculusVariant variant);

struct SideConditionError : std::runtime_error {
  explicit SideConditionError(const std::string& what) : std::runtime_error(what) {}
};

// forall p.(phi \/ psi) -> (phi \/ forall p.psi); requires p not free in phi.
FormulaPtr cd_instance(const FormulaPtr& phi, const FormulaPtr& psi, const Proposition& p);

// JSON form:
// {"rule": ..., "conclusion": {"context": [...], "goal": ...},
//  "witnessFormula"?: ..., "witnessVar"?: ..., "premises": [...]}
ProofTree proof_from_json(const nlohmann::json& j);
nlohmann::json proof_to_json(const ProofTree& t);

}  // namespace ipc2

#endif
