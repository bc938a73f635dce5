#ifndef IPC2_SYNTAX_HPP
#define IPC2_SYNTAX_HPP

#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace ipc2 {

// A propositional variable. The name must be an identifier: a letter
// followed by letters, digits or underscores.
class Proposition {
 public:
  explicit Proposition(std::string name);
  const std::string& str() const { return name_; }

  friend bool operator==(const Proposition& a, const Proposition& b) { return a.name_ == b.name_; }
  friend bool operator!=(const Proposition& a, const Proposition& b) { return a.name_ != b.name_; }
  friend bool operator<(const Proposition& a, const Proposition& b) { return a.name_ < b.name_; }

  static bool valid_name(const std::string& name);

 private:
  std::string name_;
};

enum class Conn { Bottom, Var, Implies, And, Or, Forall, Exists };

class Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

// Immutable formula tree. Negation and <-> are concrete-syntax sugar only
// and never appear as nodes.
class Formula {
 public:
  static FormulaPtr bottom();
  static FormulaPtr var(Proposition p);
  static FormulaPtr var(const std::string& name) { return var(Proposition(name)); }
  static FormulaPtr implies(FormulaPtr a, FormulaPtr b);
  static FormulaPtr conj(FormulaPtr a, FormulaPtr b);
  static FormulaPtr disj(FormulaPtr a, FormulaPtr b);
  static FormulaPtr forall(Proposition p, FormulaPtr body);
  static FormulaPtr forall(const std::string& p, FormulaPtr body) { return forall(Proposition(p), std::move(body)); }
  static FormulaPtr exists(Proposition p, FormulaPtr body);
  static FormulaPtr exists(const std::string& p, FormulaPtr body) { return exists(Proposition(p), std::move(body)); }

  Conn kind() const { return kind_; }
  // Valid for Var, Forall, Exists.
  const Proposition& prop() const;
  // Left operand (Implies/And/Or) or quantifier body (Forall/Exists).
  const FormulaPtr& lhs() const;
  const FormulaPtr& rhs() const;
  const FormulaPtr& body() const { return lhs(); }

  std::size_t node_count() const;

 private:
  Formula(Conn k, Proposition p, FormulaPtr l, FormulaPtr r)
      : kind_(k), prop_(std::move(p)), lhs_(std::move(l)), rhs_(std::move(r)) {}

  Conn kind_;
  Proposition prop_;
  FormulaPtr lhs_;
  FormulaPtr rhs_;
};

// Syntactic (tree) equality.
bool equal(const FormulaPtr& a, const FormulaPtr& b);
// Equality up to renaming of bound variables.
bool alpha_equal(const FormulaPtr& a, const FormulaPtr& b);

// Propositions with a free occurrence in phi.
std::set<Proposition> free_vars(const FormulaPtr& phi);
// Every proposition name occurring anywhere in phi (free, bound or binder).
std::set<std::string> all_names(const FormulaPtr& phi);

// Capture-avoiding substitution phi[p := psi]. Bound variables that would
// capture free variables of psi are renamed deterministically: the smallest
// numeric suffix >= 1 whose result occurs nowhere in the body, is not free
// in psi and differs from p.
FormulaPtr substitute(const FormulaPtr& phi, const Proposition& p, const FormulaPtr& psi);

enum class BottomMode { Keep, Expand };

// Rewrites /\, \/ and exists into the {->, forall} core:
//   a \/ b      ~>  forall f. (a -> f) -> ((b -> f) -> f)
//   a /\ b      ~>  forall f. (a -> (b -> f)) -> f
//   exists q. a ~>  forall f. (forall q. (a -> f)) -> f
// Bottom stays primitive unless BottomMode::Expand, which rewrites it to
// forall f. f. Fresh quantifier variables are named p0, p1, ... skipping
// any name already occurring in the input.
FormulaPtr desugar(const FormulaPtr& phi, BottomMode mode = BottomMode::Keep);

struct ParseError : std::runtime_error {
  int line;
  int column;
  std::vector<std::string> expected;
  ParseError(std::string msg, int line, int column, std::vector<std::string> expected);
};

// Parses the concrete grammar:
//   bot | identifiers | ~phi | phi /\ phi | phi \/ phi | phi -> phi |
//   phi <-> phi | forall x. phi | exists x. phi | ( phi )
// Precedence: ~ > /\ > \/ > -> > <->; -> and <-> are right-associative,
// /\ and \/ left-associative; quantifiers bind to the end of the
// expression. ~a expands to a -> bot and a <-> b to (a -> b) /\ (b -> a)
// at parse time.
FormulaPtr parse(const std::string& text);

// Canonical rendering; parse(print(phi)) reproduces phi exactly.
std::string print(const FormulaPtr& phi);

// S-expression dump of the tree, e.g. (forall p (implies (var p) bot)).
std::string dump(const FormulaPtr& phi);

}  // namespace ipc2

#endif
