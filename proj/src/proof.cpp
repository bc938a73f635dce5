#include "ipc2/proof.hpp"

#include <algorithm>
#include <map>

namespace ipc2 {

int rule_arity(Rule r) {
  switch (r) {
    case Rule::Axiom:
    case Rule::CdAxiom:
      return 0;
    case Rule::AndEL:
    case Rule::AndER:
    case Rule::OrIL:
    case Rule::OrIR:
    case Rule::ImplI:
    case Rule::BotE:
    case Rule::ForallI:
    case Rule::ForallE:
    case Rule::ExistsI:
      return 1;
    case Rule::AndI:
    case Rule::ImplE:
    case Rule::ExistsE:
      return 2;
    case Rule::OrE:
      return 3;
  }
  throw std::logic_error("rule_arity: unreachable");
}

const char* rule_name(Rule r) {
  switch (r) {
    case Rule::Axiom: return "Axiom";
    case Rule::AndI: return "AndI";
    case Rule::AndEL: return "AndE-L";
    case Rule::AndER: return "AndE-R";
    case Rule::OrIL: return "OrI-L";
    case Rule::OrIR: return "OrI-R";
    case Rule::OrE: return "OrE";
    case Rule::ImplI: return "ImplI";
    case Rule::ImplE: return "ImplE";
    case Rule::BotE: return "BotE";
    case Rule::ForallI: return "ForallI";
    case Rule::ForallE: return "ForallE";
    case Rule::ExistsI: return "ExistsI";
    case Rule::ExistsE: return "ExistsE";
    case Rule::CdAxiom: return "CD-Axiom";
  }
  throw std::logic_error("rule_name: unreachable");
}

Rule rule_from_name(const std::string& name) {
  static const std::map<std::string, Rule> table = {
      {"Axiom", Rule::Axiom},     {"AndI", Rule::AndI},       {"AndE-L", Rule::AndEL},
      {"AndE-R", Rule::AndER},    {"OrI-L", Rule::OrIL},      {"OrI-R", Rule::OrIR},
      {"OrE", Rule::OrE},         {"ImplI", Rule::ImplI},     {"ImplE", Rule::ImplE},
      {"BotE", Rule::BotE},       {"ForallI", Rule::ForallI}, {"ForallE", Rule::ForallE},
      {"ExistsI", Rule::ExistsI}, {"ExistsE", Rule::ExistsE}, {"CD-Axiom", Rule::CdAxiom},
  };
  auto it = table.find(name);
  if (it == table.end()) throw std::invalid_argument("unknown rule name '" + name + "'");
  return it->second;
}

int rule_family(Rule r) {
  switch (r) {
    case Rule::Axiom: return 0;
    case Rule::AndI: return 1;
    case Rule::AndEL:
    case Rule::AndER: return 2;
    case Rule::OrIL:
    case Rule::OrIR: return 3;
    case Rule::OrE: return 4;
    case Rule::ImplI: return 5;
    case Rule::ImplE: return 6;
    case Rule::BotE: return 7;
    case Rule::ForallI: return 8;
    case Rule::ForallE: return 9;
    case Rule::ExistsI: return 10;
    case Rule::ExistsE: return 11;
    case Rule::CdAxiom: return 12;
  }
  throw std::logic_error("rule_family: unreachable");
}

CalculusVariant variant_from_name(const std::string& name) {
  if (name == "ipc2") return CalculusVariant::Ipc2;
  if (name == "ipc2-minus") return CalculusVariant::Ipc2Minus;
  if (name == "ipc2-cd") return CalculusVariant::Ipc2Cd;
  if (name == "ipc") return CalculusVariant::Ipc;
  throw std::invalid_argument("unknown calculus variant '" + name + "'");
}

const char* reject_reason_name(RejectReason r) {
  switch (r) {
    case RejectReason::WrongArity: return "wrong-arity";
    case RejectReason::ContextMismatch: return "context-mismatch";
    case RejectReason::EigenvariableViolation: return "eigenvariable-violation";
    case RejectReason::NonAtomicWitness: return "non-atomic-witness";
    case RejectReason::BadSubstitution: return "bad-substitution";
    case RejectReason::VariantForbidsRule: return "variant-forbids-rule";
    case RejectReason::GoalMismatch: return "goal-mismatch";
    case RejectReason::MissingWitness: return "missing-witness";
  }
  throw std::logic_error("reject_reason_name: unreachable");
}

std::string Verdict::path_string() const {
  if (path.empty()) return "root";
  std::string out;
  for (std::size_t i = 0; i < path.size(); ++i) {
    if (i) out += ".";
    out += std::to_string(path[i]);
  }
  return out;
}

namespace {

// Multisets are compared through canonical print strings (print is
// injective because parse . print is the identity).
std::vector<std::string> context_keys(const std::vector<FormulaPtr>& ctx) {
  std::vector<std::string> keys;
  keys.reserve(ctx.size());
  for (const auto& f : ctx) keys.push_back(print(f));
  std::sort(keys.begin(), keys.end());
  return keys;
}

bool context_equal(const std::vector<FormulaPtr>& a, const std::vector<FormulaPtr>& b) {
  return context_keys(a) == context_keys(b);
}

// True iff big = small + {extra} as multisets.
bool context_extends_by(const std::vector<FormulaPtr>& big, const std::vector<FormulaPtr>& small,
                        const FormulaPtr& extra) {
  auto keys = context_keys(small);
  keys.push_back(print(extra));
  std::sort(keys.begin(), keys.end());
  return context_keys(big) == keys;
}

// If big = small + {chi} for exactly one formula chi, returns chi.
FormulaPtr context_difference_one(const std::vector<FormulaPtr>& big,
                                  const std::vector<FormulaPtr>& small) {
  if (big.size() != small.size() + 1) return nullptr;
  std::vector<FormulaPtr> rest = big;
  for (const auto& f : small) {
    auto it = std::find_if(rest.begin(), rest.end(),
                           [&](const FormulaPtr& g) { return equal(f, g); });
    if (it == rest.end()) return nullptr;
    rest.erase(it);
  }
  return rest.size() == 1 ? rest[0] : nullptr;
}

bool contains_formula(const std::vector<FormulaPtr>& ctx, const FormulaPtr& f) {
  return std::any_of(ctx.begin(), ctx.end(), [&](const FormulaPtr& g) { return equal(f, g); });
}

bool free_in_context(const std::vector<FormulaPtr>& ctx, const Proposition& p) {
  return std::any_of(ctx.begin(), ctx.end(),
                     [&](const FormulaPtr& f) { return free_vars(f).count(p) > 0; });
}

struct LocalFailure {
  RejectReason reason;
  std::string detail;
};

std::optional<LocalFailure> check_node(const ProofTree& t, CalculusVariant variant) {
  const Sequent& seq = t.conclusion;
  const auto& prem = t.premises;

  if (static_cast<int>(prem.size()) != rule_arity(t.rule))
    return LocalFailure{RejectReason::WrongArity,
                        std::string(rule_name(t.rule)) + " expects " +
                            std::to_string(rule_arity(t.rule)) + " premise(s), got " +
                            std::to_string(prem.size())};

  bool quantifier_rule = t.rule == Rule::ForallI || t.rule == Rule::ForallE ||
                         t.rule == Rule::ExistsI || t.rule == Rule::ExistsE ||
                         t.rule == Rule::CdAxiom;
  if (variant == CalculusVariant::Ipc && quantifier_rule)
    return LocalFailure{RejectReason::VariantForbidsRule,
                        std::string(rule_name(t.rule)) + " is not part of IPC"};
  if (t.rule == Rule::CdAxiom && variant != CalculusVariant::Ipc2Cd)
    return LocalFailure{RejectReason::VariantForbidsRule,
                        "CD-Axiom is only available under ipc2-cd"};

  auto premise_contexts_match = [&]() -> std::optional<LocalFailure> {
    for (std::size_t i = 0; i < prem.size(); ++i)
      if (!context_equal(prem[i].conclusion.context, seq.context))
        return LocalFailure{RejectReason::ContextMismatch,
                            "premise " + std::to_string(i) + " context differs from conclusion"};
    return std::nullopt;
  };

  switch (t.rule) {
    case Rule::Axiom: {
      if (!contains_formula(seq.context, seq.goal))
        return LocalFailure{RejectReason::ContextMismatch, "goal does not occur in the context"};
      return std::nullopt;
    }

    case Rule::AndI: {
      if (auto f = premise_contexts_match()) return f;
      if (seq.goal->kind() != Conn::And || !equal(seq.goal->lhs(), prem[0].conclusion.goal) ||
          !equal(seq.goal->rhs(), prem[1].conclusion.goal))
        return LocalFailure{RejectReason::GoalMismatch,
                            "conclusion is not the conjunction of the premises"};
      return std::nullopt;
    }

    case Rule::AndEL:
    case Rule::AndER: {
      if (auto f = premise_contexts_match()) return f;
      const FormulaPtr& pgoal = prem[0].conclusion.goal;
      if (pgoal->kind() != Conn::And)
        return LocalFailure{RejectReason::GoalMismatch, "premise is not a conjunction"};
      const FormulaPtr& want = t.rule == Rule::AndEL ? pgoal->lhs() : pgoal->rhs();
      if (!equal(seq.goal, want))
        return LocalFailure{RejectReason::GoalMismatch, "conclusion is not the stated conjunct"};
      return std::nullopt;
    }

    case Rule::OrIL:
    case Rule::OrIR: {
      if (auto f = premise_contexts_match()) return f;
      if (seq.goal->kind() != Conn::Or)
        return LocalFailure{RejectReason::GoalMismatch, "conclusion is not a disjunction"};
      const FormulaPtr& want = t.rule == Rule::OrIL ? seq.goal->lhs() : seq.goal->rhs();
      if (!equal(prem[0].conclusion.goal, want))
        return LocalFailure{RejectReason::GoalMismatch, "premise is not the stated disjunct"};
      return std::nullopt;
    }

    case Rule::OrE: {
      if (!context_equal(prem[0].conclusion.context, seq.context))
        return LocalFailure{RejectReason::ContextMismatch, "major premise context differs"};
      const FormulaPtr& major = prem[0].conclusion.goal;
      if (major->kind() != Conn::Or)
        return LocalFailure{RejectReason::GoalMismatch, "major premise is not a disjunction"};
      if (!equal(prem[1].conclusion.goal, seq.goal) || !equal(prem[2].conclusion.goal, seq.goal))
        return LocalFailure{RejectReason::GoalMismatch, "branch conclusions differ from the goal"};
      if (!context_extends_by(prem[1].conclusion.context, seq.context, major->lhs()))
        return LocalFailure{RejectReason::ContextMismatch,
                            "left branch must assume the left disjunct"};
      if (!context_extends_by(prem[2].conclusion.context, seq.context, major->rhs()))
        return LocalFailure{RejectReason::ContextMismatch,
                            "right branch must assume the right disjunct"};
      return std::nullopt;
    }

    case Rule::ImplI: {
      if (seq.goal->kind() != Conn::Implies)
        return LocalFailure{RejectReason::GoalMismatch, "conclusion is not an implication"};
      if (!equal(prem[0].conclusion.goal, seq.goal->rhs()))
        return LocalFailure{RejectReason::GoalMismatch, "premise goal is not the consequent"};
      if (!context_extends_by(prem[0].conclusion.context, seq.context, seq.goal->lhs()))
        return LocalFailure{RejectReason::ContextMismatch,
                            "premise must assume exactly one extra copy of the antecedent"};
      return std::nullopt;
    }

    case Rule::ImplE: {
      if (auto f = premise_contexts_match()) return f;
      const FormulaPtr& major = prem[0].conclusion.goal;
      if (major->kind() != Conn::Implies)
        return LocalFailure{RejectReason::GoalMismatch, "major premise is not an implication"};
      if (!equal(major->lhs(), prem[1].conclusion.goal))
        return LocalFailure{RejectReason::GoalMismatch, "minor premise does not match the antecedent"};
      if (!equal(major->rhs(), seq.goal))
        return LocalFailure{RejectReason::GoalMismatch, "conclusion is not the consequent"};
      return std::nullopt;
    }

    case Rule::BotE: {
      if (auto f = premise_contexts_match()) return f;
      if (prem[0].conclusion.goal->kind() != Conn::Bottom)
        return LocalFailure{RejectReason::GoalMismatch, "premise is not bot"};
      return std::nullopt;
    }

    case Rule::ForallI: {
      if (!t.witness_var)
        return LocalFailure{RejectReason::MissingWitness, "ForallI requires an eigenvariable"};
      if (auto f = premise_contexts_match()) return f;
      const Proposition& p = *t.witness_var;
      if (free_in_context(seq.context, p))
        return LocalFailure{RejectReason::EigenvariableViolation,
                            "'" + p.str() + "' occurs free in the context"};
      if (seq.goal->kind() != Conn::Forall ||
          !alpha_equal(seq.goal, Formula::forall(p, prem[0].conclusion.goal)))
        return LocalFailure{RejectReason::GoalMismatch,
                            "conclusion is not the universal closure of the premise"};
      return std::nullopt;
    }

    case Rule::ForallE: {
      if (!t.witness_formula)
        return LocalFailure{RejectReason::MissingWitness, "ForallE requires a witness formula"};
      if (auto f = premise_contexts_match()) return f;
      const FormulaPtr& major = prem[0].conclusion.goal;
      if (major->kind() != Conn::Forall)
        return LocalFailure{RejectReason::GoalMismatch, "premise is not universally quantified"};
      const FormulaPtr& w = *t.witness_formula;
      if (variant == CalculusVariant::Ipc2Minus && w->kind() != Conn::Var &&
          w->kind() != Conn::Bottom)
        return LocalFailure{RejectReason::NonAtomicWitness,
                            "ipc2-minus restricts instantiation to atomic formulas"};
      if (!alpha_equal(seq.goal, substitute(major->body(), major->prop(), w)))
        return LocalFailure{RejectReason::BadSubstitution,
                            "conclusion is not the stated substitution instance"};
      return std::nullopt;
    }

    case Rule::ExistsI: {
      if (!t.witness_formula)
        return LocalFailure{RejectReason::MissingWitness, "ExistsI requires a witness formula"};
      if (auto f = premise_contexts_match()) return f;
      if (seq.goal->kind() != Conn::Exists)
        return LocalFailure{RejectReason::GoalMismatch, "conclusion is not existentially quantified"};
      const FormulaPtr& w = *t.witness_formula;
      if (variant == CalculusVariant::Ipc2Minus && w->kind() != Conn::Var &&
          w->kind() != Conn::Bottom)
        return LocalFailure{RejectReason::NonAtomicWitness,
                            "ipc2-minus restricts instantiation to atomic formulas"};
      if (!alpha_equal(prem[0].conclusion.goal, substitute(seq.goal->body(), seq.goal->prop(), w)))
        return LocalFailure{RejectReason::BadSubstitution,
                            "premise is not the stated substitution instance"};
      return std::nullopt;
    }

    case Rule::ExistsE: {
      if (!t.witness_var)
        return LocalFailure{RejectReason::MissingWitness, "ExistsE requires an eigenvariable"};
      const Proposition& p = *t.witness_var;
      if (!context_equal(prem[0].conclusion.context, seq.context))
        return LocalFailure{RejectReason::ContextMismatch, "major premise context differs"};
      const FormulaPtr& major = prem[0].conclusion.goal;
      if (major->kind() != Conn::Exists)
        return LocalFailure{RejectReason::GoalMismatch, "major premise is not existentially quantified"};
      if (!equal(prem[1].conclusion.goal, seq.goal))
        return LocalFailure{RejectReason::GoalMismatch, "minor premise goal differs from the conclusion"};
      if (free_in_context(seq.context, p) || free_vars(seq.goal).count(p))
        return LocalFailure{RejectReason::EigenvariableViolation,
                            "'" + p.str() + "' occurs free in the context or the goal"};
      FormulaPtr chi = context_difference_one(prem[1].conclusion.context, seq.context);
      if (!chi)
        return LocalFailure{RejectReason::ContextMismatch,
                            "minor premise must assume exactly one instance of the body"};
      if (!alpha_equal(chi, substitute(major->body(), major->prop(), Formula::var(p))))
        return LocalFailure{RejectReason::BadSubstitution,
                            "assumed formula is not the body instantiated at the eigenvariable"};
      return std::nullopt;
    }

    case Rule::CdAxiom: {
      const FormulaPtr& g = seq.goal;
      if (g->kind() != Conn::Implies || g->lhs()->kind() != Conn::Forall ||
          g->lhs()->body()->kind() != Conn::Or)
        return LocalFailure{RejectReason::GoalMismatch, "conclusion does not match the CD scheme"};
      const Proposition& p = g->lhs()->prop();
      const FormulaPtr& phi = g->lhs()->body()->lhs();
      const FormulaPtr& psi = g->lhs()->body()->rhs();
      if (free_vars(phi).count(p))
        return LocalFailure{RejectReason::EigenvariableViolation,
                            "'" + p.str() + "' occurs free in the left disjunct"};
      if (!alpha_equal(g, cd_instance(phi, psi, p)))
        return LocalFailure{RejectReason::GoalMismatch, "conclusion does not match the CD scheme"};
      return std::nullopt;
    }
  }
  throw std::logic_error("check_node: unreachable");
}

bool check_rec(const ProofTree& t, CalculusVariant variant, std::vector<int>& path,
               Verdict& verdict) {
  if (auto failure = check_node(t, variant)) {
    verdict.accepted = false;
    verdict.path = path;
    verdict.reason = failure->reason;
    verdict.detail = failure->detail;
    return false;
  }
  for (std::size_t i = 0; i < t.premises.size(); ++i) {
    path.push_back(static_cast<int>(i));
    if (!check_rec(t.premises[i], variant, path, verdict)) return false;
    path.pop_back();
  }
  return true;
}

}  // namespace

Verdict check_proof(const ProofTree& tree, CalculusVariant variant) {
  Verdict verdict;
  std::vector<int> path;
  check_rec(tree, variant, path, verdict);
  return verdict;
}

FormulaPtr cd_instance(const FormulaPtr& phi, const FormulaPtr& psi, const Proposition& p) {
  if (free_vars(phi).count(p))
    throw SideConditionError("cd_instance: '" + p.str() + "' occurs free in the first formula");
  return Formula::implies(Formula::forall(p, Formula::disj(phi, psi)),
                          Formula::disj(phi, Formula::forall(p, psi)));
}

ProofTree proof_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw std::invalid_argument("proof node must be a JSON object");
  ProofTree t;
  t.rule = rule_from_name(j.at("rule").get<std::string>());
  const auto& conc = j.at("conclusion");
  for (const auto& s : conc.at("context")) t.conclusion.context.push_back(parse(s.get<std::string>()));
  t.conclusion.goal = parse(conc.at("goal").get<std::string>());
  if (j.contains("witnessFormula")) t.witness_formula = parse(j.at("witnessFormula").get<std::string>());
  if (j.contains("witnessVar")) t.witness_var = Proposition(j.at("witnessVar").get<std::string>());
  if (j.contains("premises"))
    for (const auto& p : j.at("premises")) t.premises.push_back(proof_from_json(p));
  return t;
}

nlohmann::json proof_to_json(const ProofTree& t) {
  nlohmann::json j;
  j["rule"] = rule_name(t.rule);
  nlohmann::json ctx = nlohmann::json::array();
  for (const auto& f : t.conclusion.context) ctx.push_back(print(f));
  j["conclusion"] = {{"context", ctx}, {"goal", print(t.conclusion.goal)}};
  if (t.witness_formula) j["witnessFormula"] = print(*t.witness_formula);
  if (t.witness_var) j["witnessVar"] = t.witness_var->str();
  nlohmann::json prem = nlohmann::json::array();
  for (const auto& p : t.premises) prem.push_back(proof_to_json(p));
  j["premises"] = prem;
  return j;
}

}  // namespace ipc2
