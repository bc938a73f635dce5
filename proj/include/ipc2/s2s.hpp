#ifndef IPC2_S2S_HPP
#define IPC2_S2S_HPP

#include <memory>
#include <set>
#include <string>
#include <vector>

#include "ipc2/syntax.hpp"

namespace ipc2::s2s {

// Terms over the infinite binary tree: eps, node variables, successors.
enum class TermKind { Eps, Var, S0, S1 };

class Term;
using TermPtr = std::shared_ptr<const Term>;

class Term {
 public:
  static TermPtr eps();
  static TermPtr var(std::string name);  // lowercase identifier
  static TermPtr s0(TermPtr arg);
  static TermPtr s1(TermPtr arg);

  TermKind kind() const { return kind_; }
  const std::string& name() const { return name_; }
  const TermPtr& arg() const { return arg_; }

 private:
  Term(TermKind k, std::string n, TermPtr a) : kind_(k), name_(std::move(n)), arg_(std::move(a)) {}
  TermKind kind_;
  std::string name_;
  TermPtr arg_;
};

enum class NodeKind {
  Leq,
  Eq,
  In,
  Subset,
  Not,
  And,
  Or,
  Implies,
  Iff,
  Forall1,
  Exists1,
  Forall2,
  Exists2,
};

class S2SFormula;
using S2SPtr = std::shared_ptr<const S2SFormula>;

// Monadic second-order formulas over (T^omega, s0, s1, <=). First-order
// variables are lowercase, set variables capitalized.
class S2SFormula {
 public:
  static S2SPtr leq(TermPtr a, TermPtr b);
  static S2SPtr eq(TermPtr a, TermPtr b);
  static S2SPtr in(TermPtr t, std::string set_var);
  static S2SPtr subset(std::string a, std::string b);
  static S2SPtr not_(S2SPtr f);
  static S2SPtr and_(S2SPtr a, S2SPtr b);
  static S2SPtr or_(S2SPtr a, S2SPtr b);
  static S2SPtr implies(S2SPtr a, S2SPtr b);
  static S2SPtr iff(S2SPtr a, S2SPtr b);
  static S2SPtr forall1(std::string var, S2SPtr body);
  static S2SPtr exists1(std::string var, S2SPtr body);
  static S2SPtr forall2(std::string var, S2SPtr body);
  static S2SPtr exists2(std::string var, S2SPtr body);

  NodeKind kind() const { return kind_; }
  const TermPtr& term1() const { return t1_; }
  const TermPtr& term2() const { return t2_; }
  // In: target set variable. Subset: the two set variables.
  const std::string& set1() const { return s1_; }
  const std::string& set2() const { return s2_; }
  const std::string& binder() const { return s1_; }
  const S2SPtr& lhs() const { return l_; }
  const S2SPtr& rhs() const { return r_; }
  const S2SPtr& body() const { return l_; }

 private:
  S2SFormula(NodeKind k) : kind_(k) {}
  static S2SPtr and_helper(NodeKind k, S2SPtr a, S2SPtr b);
  static S2SPtr quant_helper(NodeKind k, std::string var, S2SPtr body, bool second_order);

  NodeKind kind_;
  TermPtr t1_, t2_;
  std::string s1_, s2_;
  S2SPtr l_, r_;
};

bool equal(const S2SPtr& a, const S2SPtr& b);

std::set<std::string> free_set_vars(const S2SPtr& f);
std::set<std::string> free_node_vars(const S2SPtr& f);

// Renames free occurrences of set variable `from` to `to`; throws if a free
// occurrence sits under a binder named `to` (capture).
S2SPtr rename_set_var(const S2SPtr& f, const std::string& from, const std::string& to);
// True iff some free occurrence of `name` lies in the scope of a set binder
// called `binder_name`; renaming name -> binder_name would then capture.
bool rename_would_capture(const S2SPtr& f, const std::string& name,
                          const std::string& binder_name);

// Canonical s-expression. With expand_subset, (subset X Y) is emitted as
// (forall1 x (implies (in x X) (in x Y))).
std::string emit(const S2SPtr& f, bool expand_subset = false);

enum class Helper { Path, U, UQ, Closed, ClBelong, ClosedSubset, MinOf };

// Builds the helper formulas over the given set-variable names:
//   Path(X)          X is an infinite path (linear, successor-closed,
//                    containing eps);
//   U(X)             Path(X) with infinitely many 0s and at least one 1 —
//                    X represents a real in (0,1);
//   UQ(X)            Path(X) of the form u 1 0^omega — X represents a
//                    dyadic rational;
//   Closed(S)        every u 0 1^omega path inside S has its u 1 0^omega
//                    companion inside S;
//   ClBelong(X,S)    U(X) and Closed(S) and X subset S;
//   ClosedSubset(S,T) every U-path in S is in T;
//   MinOf(body, X)   body(X) and Closed(X), and X is contained (as a set of
//                    reals) in every closed Y satisfying body(Y). `body`
//                    must have args[0] as a free set variable.
// Internal bound variables are freshened deterministically against the
// argument names (numeric suffixes).
S2SPtr build_helper(Helper h, const std::vector<std::string>& args, S2SPtr body = nullptr);

struct UndersugaredInput : std::runtime_error {
  UndersugaredInput()
      : std::runtime_error("translate requires a desugared formula (Var/Bottom/Implies/Forall only)") {}
};

struct Translation {
  S2SPtr formula;
  // Free propositions in first-occurrence order; proposition i (0-based)
  // is carried by set variable T{i+1}.
  std::vector<Proposition> props;
};

// Compiles a desugared formula into an S2S formula with free set variables
// {T, T1, ..., Tn}; T carries the closed complement of the formula's value,
// the Ti carry the closed complements of the propositions' values.
Translation translate(const FormulaPtr& phi);

// The closed sentence asserting that the value encoded by T is all of
// (0,1): no U-path lies in any closed T satisfying phi*. For n > 0 the
// proposition parameters T1..Tn are universally quantified with Closed
// guards in front.
S2SPtr wrap_truth(const S2SPtr& phistar, int n);

// Replaces every U(X) instance with UQ(X), switching the reading from the
// reals to the (dyadic) rationals.
S2SPtr rational_mode(const S2SPtr& f);

// Number of minimality wrappers in the formula; translate emits one per
// Implies/Forall node of its input.
int count_minof(const S2SPtr& f);

}  // namespace ipc2::s2s

#endif
