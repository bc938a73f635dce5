#include "ipc2/s2s.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <stdexcept>

namespace ipc2::s2s {

namespace {

void require_node_var(const std::string& s) {
  if (s.empty() || !std::islower(static_cast<unsigned char>(s[0])))
    throw std::invalid_argument("first-order variables must start lowercase: '" + s + "'");
}

void require_set_var(const std::string& s) {
  if (s.empty() || !std::isupper(static_cast<unsigned char>(s[0])))
    throw std::invalid_argument("set variables must start uppercase: '" + s + "'");
}

}  // namespace

TermPtr Term::eps() {
  static const TermPtr instance(new Term(TermKind::Eps, "", nullptr));
  return instance;
}

TermPtr Term::var(std::string name) {
  require_node_var(name);
  return TermPtr(new Term(TermKind::Var, std::move(name), nullptr));
}

TermPtr Term::s0(TermPtr arg) {
  if (!arg) throw std::invalid_argument("s0: null argument");
  return TermPtr(new Term(TermKind::S0, "", std::move(arg)));
}

TermPtr Term::s1(TermPtr arg) {
  if (!arg) throw std::invalid_argument("s1: null argument");
  return TermPtr(new Term(TermKind::S1, "", std::move(arg)));
}

S2SPtr S2SFormula::leq(TermPtr a, TermPtr b) {
  auto f = std::shared_ptr<S2SFormula>(new S2SFormula(NodeKind::Leq));
  f->t1_ = std::move(a);
  f->t2_ = std::move(b);
  return f;
}

S2SPtr S2SFormula::eq(TermPtr a, TermPtr b) {
  auto f = std::shared_ptr<S2SFormula>(new S2SFormula(NodeKind::Eq));
  f->t1_ = std::move(a);
  f->t2_ = std::move(b);
  return f;
}

S2SPtr S2SFormula::in(TermPtr t, std::string set_var) {
  require_set_var(set_var);
  auto f = std::shared_ptr<S2SFormula>(new S2SFormula(NodeKind::In));
  f->t1_ = std::move(t);
  f->s1_ = std::move(set_var);
  return f;
}

S2SPtr S2SFormula::subset(std::string a, std::string b) {
  require_set_var(a);
  require_set_var(b);
  auto f = std::shared_ptr<S2SFormula>(new S2SFormula(NodeKind::Subset));
  f->s1_ = std::move(a);
  f->s2_ = std::move(b);
  return f;
}

S2SPtr S2SFormula::not_(S2SPtr x) {
  if (!x) throw std::invalid_argument("s2s: null operand");
  auto f = std::shared_ptr<S2SFormula>(new S2SFormula(NodeKind::Not));
  f->l_ = std::move(x);
  return f;
}

S2SPtr S2SFormula::and_helper(NodeKind k, S2SPtr a, S2SPtr b) {
  if (!a || !b) throw std::invalid_argument("s2s: null operand");
  auto f = std::shared_ptr<S2SFormula>(new S2SFormula(k));
  f->l_ = std::move(a);
  f->r_ = std::move(b);
  return f;
}

S2SPtr S2SFormula::quant_helper(NodeKind k, std::string var, S2SPtr body, bool second_order) {
  if (!body) throw std::invalid_argument("s2s: null body");
  if (second_order)
    require_set_var(var);
  else
    require_node_var(var);
  auto f = std::shared_ptr<S2SFormula>(new S2SFormula(k));
  f->s1_ = std::move(var);
  f->l_ = std::move(body);
  return f;
}

S2SPtr S2SFormula::and_(S2SPtr a, S2SPtr b) { return and_helper(NodeKind::And, std::move(a), std::move(b)); }
S2SPtr S2SFormula::or_(S2SPtr a, S2SPtr b) { return and_helper(NodeKind::Or, std::move(a), std::move(b)); }
S2SPtr S2SFormula::implies(S2SPtr a, S2SPtr b) { return and_helper(NodeKind::Implies, std::move(a), std::move(b)); }
S2SPtr S2SFormula::iff(S2SPtr a, S2SPtr b) { return and_helper(NodeKind::Iff, std::move(a), std::move(b)); }

S2SPtr S2SFormula::forall1(std::string var, S2SPtr body) {
  return quant_helper(NodeKind::Forall1, std::move(var), std::move(body), false);
}
S2SPtr S2SFormula::exists1(std::string var, S2SPtr body) {
  return quant_helper(NodeKind::Exists1, std::move(var), std::move(body), false);
}
S2SPtr S2SFormula::forall2(std::string var, S2SPtr body) {
  return quant_helper(NodeKind::Forall2, std::move(var), std::move(body), true);
}
S2SPtr S2SFormula::exists2(std::string var, S2SPtr body) {
  return quant_helper(NodeKind::Exists2, std::move(var), std::move(body), true);
}

// ---------------------------------------------------------------------------
// Structure
// ---------------------------------------------------------------------------

namespace {

bool term_equal(const TermPtr& a, const TermPtr& b) {
  if (a.get() == b.get()) return true;
  if (!a || !b) return false;
  if (a->kind() != b->kind()) return false;
  switch (a->kind()) {
    case TermKind::Eps:
      return true;
    case TermKind::Var:
      return a->name() == b->name();
    case TermKind::S0:
    case TermKind::S1:
      return term_equal(a->arg(), b->arg());
  }
  return false;
}

void term_node_vars(const TermPtr& t, std::set<std::string>& out) {
  if (!t) return;
  if (t->kind() == TermKind::Var) out.insert(t->name());
  if (t->kind() == TermKind::S0 || t->kind() == TermKind::S1) term_node_vars(t->arg(), out);
}

void free_vars_rec(const S2SPtr& f, std::vector<std::string>& bound_sets,
                   std::vector<std::string>& bound_nodes, std::set<std::string>& sets,
                   std::set<std::string>& nodes) {
  auto node_free = [&](const TermPtr& t) {
    std::set<std::string> vs;
    term_node_vars(t, vs);
    for (const auto& v : vs)
      if (std::find(bound_nodes.begin(), bound_nodes.end(), v) == bound_nodes.end())
        nodes.insert(v);
  };
  auto set_free = [&](const std::string& s) {
    if (std::find(bound_sets.begin(), bound_sets.end(), s) == bound_sets.end()) sets.insert(s);
  };
  switch (f->kind()) {
    case NodeKind::Leq:
    case NodeKind::Eq:
      node_free(f->term1());
      node_free(f->term2());
      return;
    case NodeKind::In:
      node_free(f->term1());
      set_free(f->set1());
      return;
    case NodeKind::Subset:
      set_free(f->set1());
      set_free(f->set2());
      return;
    case NodeKind::Not:
      free_vars_rec(f->body(), bound_sets, bound_nodes, sets, nodes);
      return;
    case NodeKind::And:
    case NodeKind::Or:
    case NodeKind::Implies:
    case NodeKind::Iff:
      free_vars_rec(f->lhs(), bound_sets, bound_nodes, sets, nodes);
      free_vars_rec(f->rhs(), bound_sets, bound_nodes, sets, nodes);
      return;
    case NodeKind::Forall1:
    case NodeKind::Exists1:
      bound_nodes.push_back(f->binder());
      free_vars_rec(f->body(), bound_sets, bound_nodes, sets, nodes);
      bound_nodes.pop_back();
      return;
    case NodeKind::Forall2:
    case NodeKind::Exists2:
      bound_sets.push_back(f->binder());
      free_vars_rec(f->body(), bound_sets, bound_nodes, sets, nodes);
      bound_sets.pop_back();
      return;
  }
}

}  // namespace

bool equal(const S2SPtr& a, const S2SPtr& b) {
  if (a.get() == b.get()) return true;
  if (!a || !b) return false;
  if (a->kind() != b->kind()) return false;
  switch (a->kind()) {
    case NodeKind::Leq:
    case NodeKind::Eq:
      return term_equal(a->term1(), b->term1()) && term_equal(a->term2(), b->term2());
    case NodeKind::In:
      return term_equal(a->term1(), b->term1()) && a->set1() == b->set1();
    case NodeKind::Subset:
      return a->set1() == b->set1() && a->set2() == b->set2();
    case NodeKind::Not:
      return equal(a->body(), b->body());
    case NodeKind::And:
    case NodeKind::Or:
    case NodeKind::Implies:
    case NodeKind::Iff:
      return equal(a->lhs(), b->lhs()) && equal(a->rhs(), b->rhs());
    case NodeKind::Forall1:
    case NodeKind::Exists1:
    case NodeKind::Forall2:
    case NodeKind::Exists2:
      return a->binder() == b->binder() && equal(a->body(), b->body());
  }
  return false;
}

std::set<std::string> free_set_vars(const S2SPtr& f) {
  std::set<std::string> sets, nodes;
  std::vector<std::string> bs, bn;
  free_vars_rec(f, bs, bn, sets, nodes);
  return sets;
}

std::set<std::string> free_node_vars(const S2SPtr& f) {
  std::set<std::string> sets, nodes;
  std::vector<std::string> bs, bn;
  free_vars_rec(f, bs, bn, sets, nodes);
  return nodes;
}

namespace {

S2SPtr rename_rec(const S2SPtr& f, const std::string& from, const std::string& to) {
  switch (f->kind()) {
    case NodeKind::Leq:
    case NodeKind::Eq:
      return f;
    case NodeKind::In:
      return f->set1() == from ? S2SFormula::in(f->term1(), to) : f;
    case NodeKind::Subset: {
      if (f->set1() != from && f->set2() != from) return f;
      return S2SFormula::subset(f->set1() == from ? to : f->set1(),
                                f->set2() == from ? to : f->set2());
    }
    case NodeKind::Not:
      return S2SFormula::not_(rename_rec(f->body(), from, to));
    case NodeKind::And:
      return S2SFormula::and_(rename_rec(f->lhs(), from, to), rename_rec(f->rhs(), from, to));
    case NodeKind::Or:
      return S2SFormula::or_(rename_rec(f->lhs(), from, to), rename_rec(f->rhs(), from, to));
    case NodeKind::Implies:
      return S2SFormula::implies(rename_rec(f->lhs(), from, to), rename_rec(f->rhs(), from, to));
    case NodeKind::Iff:
      return S2SFormula::iff(rename_rec(f->lhs(), from, to), rename_rec(f->rhs(), from, to));
    case NodeKind::Forall1:
      return S2SFormula::forall1(f->binder(), rename_rec(f->body(), from, to));
    case NodeKind::Exists1:
      return S2SFormula::exists1(f->binder(), rename_rec(f->body(), from, to));
    case NodeKind::Forall2:
    case NodeKind::Exists2: {
      if (f->binder() == from) return f;  // occurrences below are bound
      if (f->binder() == to && free_set_vars(f->body()).count(from))
        throw std::logic_error("rename_set_var: capture of '" + from + "' under binder '" + to + "'");
      auto body = rename_rec(f->body(), from, to);
      return f->kind() == NodeKind::Forall2 ? S2SFormula::forall2(f->binder(), body)
                                            : S2SFormula::exists2(f->binder(), body);
    }
  }
  throw std::logic_error("rename_set_var: unreachable");
}

}  // namespace

S2SPtr rename_set_var(const S2SPtr& f, const std::string& from, const std::string& to) {
  if (from == to) return f;
  return rename_rec(f, from, to);
}

bool rename_would_capture(const S2SPtr& f, const std::string& name,
                          const std::string& binder_name) {
  switch (f->kind()) {
    case NodeKind::Leq:
    case NodeKind::Eq:
    case NodeKind::In:
    case NodeKind::Subset:
      return false;
    case NodeKind::Not:
      return rename_would_capture(f->body(), name, binder_name);
    case NodeKind::And:
    case NodeKind::Or:
    case NodeKind::Implies:
    case NodeKind::Iff:
      return rename_would_capture(f->lhs(), name, binder_name) ||
             rename_would_capture(f->rhs(), name, binder_name);
    case NodeKind::Forall1:
    case NodeKind::Exists1:
      return rename_would_capture(f->body(), name, binder_name);
    case NodeKind::Forall2:
    case NodeKind::Exists2:
      if (f->binder() == name) return false;
      if (f->binder() == binder_name) return free_set_vars(f->body()).count(name) > 0;
      return rename_would_capture(f->body(), name, binder_name);
  }
  return false;
}

// ---------------------------------------------------------------------------
// Emission
// ---------------------------------------------------------------------------

namespace {

void emit_term(const TermPtr& t, std::string& out) {
  switch (t->kind()) {
    case TermKind::Eps:
      out += "eps";
      return;
    case TermKind::Var:
      out += t->name();
      return;
    case TermKind::S0:
      out += "(s0 ";
      emit_term(t->arg(), out);
      out += ")";
      return;
    case TermKind::S1:
      out += "(s1 ";
      emit_term(t->arg(), out);
      out += ")";
      return;
  }
}

void emit_rec(const S2SPtr& f, bool expand_subset, std::string& out) {
  switch (f->kind()) {
    case NodeKind::Leq:
    case NodeKind::Eq:
      out += f->kind() == NodeKind::Leq ? "(leq " : "(eq ";
      emit_term(f->term1(), out);
      out += " ";
      emit_term(f->term2(), out);
      out += ")";
      return;
    case NodeKind::In:
      out += "(in ";
      emit_term(f->term1(), out);
      out += " " + f->set1() + ")";
      return;
    case NodeKind::Subset:
      if (expand_subset) {
        out += "(forall1 x (implies (in x " + f->set1() + ") (in x " + f->set2() + ")))";
      } else {
        out += "(subset " + f->set1() + " " + f->set2() + ")";
      }
      return;
    case NodeKind::Not:
      out += "(not ";
      emit_rec(f->body(), expand_subset, out);
      out += ")";
      return;
    case NodeKind::And:
    case NodeKind::Or:
    case NodeKind::Implies:
    case NodeKind::Iff: {
      const char* tag = f->kind() == NodeKind::And       ? "and"
                        : f->kind() == NodeKind::Or      ? "or"
                        : f->kind() == NodeKind::Implies ? "implies"
                                                         : "iff";
      out += "(";
      out += tag;
      out += " ";
      emit_rec(f->lhs(), expand_subset, out);
      out += " ";
      emit_rec(f->rhs(), expand_subset, out);
      out += ")";
      return;
    }
    case NodeKind::Forall1:
    case NodeKind::Exists1:
    case NodeKind::Forall2:
    case NodeKind::Exists2: {
      const char* tag = f->kind() == NodeKind::Forall1   ? "forall1"
                        : f->kind() == NodeKind::Exists1 ? "exists1"
                        : f->kind() == NodeKind::Forall2 ? "forall2"
                                                         : "exists2";
      out += "(";
      out += tag;
      out += " " + f->binder() + " ";
      emit_rec(f->body(), expand_subset, out);
      out += ")";
      return;
    }
  }
}

}  // namespace

std::string emit(const S2SPtr& f, bool expand_subset) {
  std::string out;
  emit_rec(f, expand_subset, out);
  return out;
}

// ---------------------------------------------------------------------------
// Helper formulas
// ---------------------------------------------------------------------------

namespace {

using F = S2SFormula;

S2SPtr fold_and(std::vector<S2SPtr> parts) {
  S2SPtr out = parts.at(0);
  for (std::size_t i = 1; i < parts.size(); ++i) out = F::and_(out, parts[i]);
  return out;
}

// x <= z /\ f, the bounded existential body; forall uses implication.
S2SPtr leq_terms(const TermPtr& a, const TermPtr& b) { return F::leq(a, b); }

struct NameScope {
  std::set<std::string> taken;
  explicit NameScope(const std::vector<std::string>& args) : taken(args.begin(), args.end()) {}
  std::string fresh(const std::string& base) {
    if (taken.insert(base).second) return base;
    for (int k = 1;; ++k) {
      std::string cand = base + std::to_string(k);
      if (taken.insert(cand).second) return cand;
    }
  }
};

S2SPtr build_path(const std::string& x_set) {
  auto x = Term::var("x");
  auto y = Term::var("y");
  auto linear = F::forall1(
      "x", F::forall1("y", F::implies(F::and_(F::in(x, x_set), F::in(y, x_set)),
                                      F::or_(F::leq(x, y), F::leq(y, x)))));
  auto succ = F::forall1(
      "x", F::implies(F::in(x, x_set),
                      F::or_(F::in(Term::s0(x), x_set), F::in(Term::s1(x), x_set))));
  return F::and_(F::and_(linear, succ), F::in(Term::eps(), x_set));
}

S2SPtr build_u(const std::string& x_set) {
  auto x = Term::var("x");
  auto z = Term::var("z");
  auto infinitely_many_zeros = F::forall1(
      "x", F::implies(F::in(x, x_set),
                      F::exists1("z", F::and_(leq_terms(x, z), F::in(Term::s0(z), x_set)))));
  auto at_least_one_one = F::exists1("x", F::in(Term::s1(x), x_set));
  return F::and_(F::and_(build_path(x_set), infinitely_many_zeros), at_least_one_one);
}

S2SPtr build_uq(const std::string& x_set) {
  auto y = Term::var("y");
  auto z = Term::var("z");
  auto tail_of_zeros = F::forall1(
      "z", F::implies(F::and_(F::leq(Term::s1(y), z), F::in(z, x_set)),
                      F::in(Term::s0(z), x_set)));
  auto form = F::exists1("y", F::and_(F::in(Term::s1(y), x_set), tail_of_zeros));
  return F::and_(build_path(x_set), form);
}

S2SPtr build_closed(const std::string& s) {
  NameScope scope({s});
  std::string p = scope.fresh("X");  // the u 0 1^omega path
  std::string q = scope.fresh("Y");  // its u 1 0^omega companion
  auto y = Term::var("y");
  auto z = Term::var("z");

  // X ends in an all-1s tail after some s0(y).
  auto antecedent = F::and_(
      build_path(p),
      F::exists1("y", F::and_(F::in(Term::s0(y), p),
                              F::forall1("z", F::implies(F::leq(Term::s0(y), z),
                                                         F::not_(F::in(Term::s0(z), p)))))));

  auto companion_core = fold_and({
      build_path(q),
      F::in(y, q),
      F::in(y, p),
      F::in(Term::s0(y), p),
      F::forall1("z", F::implies(F::leq(Term::s0(y), z),
                                 F::implies(F::in(z, p), F::in(Term::s1(z), p)))),
      F::in(Term::s1(y), q),
      F::forall1("z", F::implies(F::leq(Term::s1(y), z),
                                 F::implies(F::in(z, q), F::in(Term::s0(z), q)))),
  });
  auto consequent = F::exists2(q, F::and_(F::subset(q, s), F::exists1("y", companion_core)));

  return F::forall2(p, F::implies(F::subset(p, s), F::implies(antecedent, consequent)));
}

S2SPtr build_clbelong(const std::string& x, const std::string& s) {
  return F::and_(F::and_(build_u(x), build_closed(s)), F::subset(x, s));
}

S2SPtr build_closed_subset(const std::string& s, const std::string& t) {
  NameScope scope({s, t});
  std::string x = scope.fresh("X");
  return F::forall2(x, F::implies(build_clbelong(x, s), build_clbelong(x, t)));
}

S2SPtr build_minof(const S2SPtr& body, const std::string& dist) {
  if (!body) throw std::invalid_argument("MinOf requires a body formula");
  auto frees = free_set_vars(body);
  if (!frees.count(dist))
    throw std::invalid_argument("MinOf body has no free occurrence of '" + dist + "'");

  std::string cmp;
  for (int k = 0;; ++k) {
    std::string cand = k == 0 ? "Y" : "Y" + std::to_string(k);
    if (cand == dist || frees.count(cand)) continue;
    if (rename_would_capture(body, dist, cand)) continue;
    cmp = cand;
    break;
  }
  std::string z;
  for (int k = 0;; ++k) {
    std::string cand = k == 0 ? "Z" : "Z" + std::to_string(k);
    if (cand == dist || cand == cmp) continue;
    z = cand;
    break;
  }

  auto body_cmp = rename_set_var(body, dist, cmp);
  auto inner = F::forall2(
      z, F::implies(F::and_(build_u(z), build_clbelong(z, dist)), build_clbelong(z, cmp)));
  return F::and_(F::and_(body, build_closed(dist)),
                 F::forall2(cmp, F::implies(F::and_(build_closed(cmp), body_cmp), inner)));
}

}  // namespace

S2SPtr build_helper(Helper h, const std::vector<std::string>& args, S2SPtr body) {
  auto want = [&](std::size_t n) {
    if (args.size() != n)
      throw std::invalid_argument("helper arity mismatch: expected " + std::to_string(n) +
                                  " set variable(s), got " + std::to_string(args.size()));
  };
  for (const auto& a : args) require_set_var(a);
  switch (h) {
    case Helper::Path:
      want(1);
      return build_path(args[0]);
    case Helper::U:
      want(1);
      return build_u(args[0]);
    case Helper::UQ:
      want(1);
      return build_uq(args[0]);
    case Helper::Closed:
      want(1);
      return build_closed(args[0]);
    case Helper::ClBelong:
      want(2);
      return build_clbelong(args[0], args[1]);
    case Helper::ClosedSubset:
      want(2);
      return build_closed_subset(args[0], args[1]);
    case Helper::MinOf:
      want(1);
      return build_minof(body, args[0]);
  }
  throw std::logic_error("build_helper: unreachable");
}

// ---------------------------------------------------------------------------
// Translation
// ---------------------------------------------------------------------------

namespace {

void collect_free_props(const FormulaPtr& f, std::vector<std::string>& bound,
                        std::vector<Proposition>& out) {
  switch (f->kind()) {
    case Conn::Bottom:
      return;
    case Conn::Var: {
      const std::string& n = f->prop().str();
      if (std::find(bound.begin(), bound.end(), n) != bound.end()) return;
      for (const auto& p : out)
        if (p.str() == n) return;
      out.push_back(f->prop());
      return;
    }
    case Conn::Implies:
    case Conn::And:
    case Conn::Or:
      collect_free_props(f->lhs(), bound, out);
      collect_free_props(f->rhs(), bound, out);
      return;
    case Conn::Forall:
    case Conn::Exists:
      bound.push_back(f->prop().str());
      collect_free_props(f->body(), bound, out);
      bound.pop_back();
      return;
  }
}

struct TranslateCtx {
  std::map<std::string, std::string> env;  // proposition name -> set variable
  int aux_counter = 0;
  int w_counter = 0;
  int prop_counter = 0;

  std::string fresh_aux() { return "Taux" + std::to_string(++aux_counter); }
  std::string fresh_w() {
    ++w_counter;
    return w_counter == 1 ? "W" : "W" + std::to_string(w_counter - 1);
  }
  std::string fresh_prop_var() { return "T" + std::to_string(++prop_counter); }
};

S2SPtr clb(const std::string& x, const std::string& s) { return build_clbelong(x, s); }

S2SPtr translate_rec(const FormulaPtr& f, const std::string& dist, TranslateCtx& ctx) {
  switch (f->kind()) {
    case Conn::Bottom:
      // The complement must be empty, so T is everything.
      return F::forall1("x", F::in(Term::var("x"), dist));

    case Conn::Var: {
      auto it = ctx.env.find(f->prop().str());
      if (it == ctx.env.end())
        throw std::logic_error("translate: proposition '" + f->prop().str() + "' has no index");
      auto y = "Y";
      return F::forall2(y, F::implies(build_u(y), F::iff(clb(y, dist), clb(y, it->second))));
    }

    case Conn::Implies: {
      std::string a1 = ctx.fresh_aux();
      std::string a2 = ctx.fresh_aux();
      auto t1 = translate_rec(f->lhs(), a1, ctx);
      auto t2 = translate_rec(f->rhs(), a2, ctx);
      // The minimal closed set covering (value of lhs) \ (value of rhs),
      // both read through their closed complements.
      auto guard = F::forall2(
          "X", F::implies(fold_and({build_u("X"), F::not_(clb("X", a1)), clb("X", a2)}),
                          clb("X", dist)));
      auto hat = F::exists2(
          a1, F::exists2(a2, fold_and({build_closed(dist), t1, t2, guard})));
      return build_minof(hat, dist);
    }

    case Conn::Forall: {
      std::string w = ctx.fresh_w();
      std::string tn = ctx.fresh_prop_var();
      auto saved = ctx.env.find(f->prop().str());
      std::string saved_value;
      bool had = saved != ctx.env.end();
      if (had) saved_value = saved->second;
      ctx.env[f->prop().str()] = tn;
      auto t = translate_rec(f->body(), w, ctx);
      if (had)
        ctx.env[f->prop().str()] = saved_value;
      else
        ctx.env.erase(f->prop().str());

      auto inner = F::forall2(
          "Y", F::implies(F::and_(build_u("Y"), clb("Y", w)), clb("Y", dist)));
      auto hat = F::and_(
          build_closed(dist),
          F::forall2(w, F::forall2(tn, F::implies(fold_and({build_closed(w), build_closed(tn), t}),
                                                  inner))));
      return build_minof(hat, dist);
    }

    case Conn::And:
    case Conn::Or:
    case Conn::Exists:
      throw UndersugaredInput();
  }
  throw std::logic_error("translate: unreachable");
}

}  // namespace

Translation translate(const FormulaPtr& phi) {
  Translation out;
  std::vector<std::string> bound;
  collect_free_props(phi, bound, out.props);
  TranslateCtx ctx;
  ctx.prop_counter = static_cast<int>(out.props.size());
  for (std::size_t i = 0; i < out.props.size(); ++i)
    ctx.env[out.props[i].str()] = "T" + std::to_string(i + 1);
  out.formula = translate_rec(phi, "T", ctx);
  return out;
}

S2SPtr wrap_truth(const S2SPtr& phistar, int n) {
  if (n < 0) throw std::invalid_argument("wrap_truth: negative arity");
  std::set<std::string> allowed{"T"};
  for (int i = 1; i <= n; ++i) allowed.insert("T" + std::to_string(i));
  for (const auto& v : free_set_vars(phistar))
    if (!allowed.count(v))
      throw std::invalid_argument("wrap_truth: unexpected free set variable '" + v + "'");
  if (!free_node_vars(phistar).empty())
    throw std::invalid_argument("wrap_truth: unexpected free first-order variable");

  std::vector<S2SPtr> conjuncts{build_closed("T")};
  for (int i = 1; i <= n; ++i) conjuncts.push_back(build_closed("T" + std::to_string(i)));
  conjuncts.push_back(phistar);
  conjuncts.push_back(build_u("X"));
  S2SPtr body = F::implies(fold_and(conjuncts), F::not_(clb("X", "T")));
  body = F::forall2("X", body);
  for (int i = n; i >= 1; --i) body = F::forall2("T" + std::to_string(i), body);
  return F::forall2("T", body);
}

namespace {

// Extracts A when f is exactly U(A), via the In(eps, A) leaf of its Path part.
std::optional<std::string> match_u(const S2SPtr& f) {
  if (f->kind() != NodeKind::And) return std::nullopt;
  const auto& l = f->lhs();
  if (l->kind() != NodeKind::And) return std::nullopt;
  const auto& path = l->lhs();
  if (path->kind() != NodeKind::And) return std::nullopt;
  const auto& eps_in = path->rhs();
  if (eps_in->kind() != NodeKind::In || eps_in->term1()->kind() != TermKind::Eps)
    return std::nullopt;
  std::string a = eps_in->set1();
  if (equal(f, build_u(a))) return a;
  return std::nullopt;
}

S2SPtr rational_rec(const S2SPtr& f) {
  if (auto a = match_u(f)) return build_uq(*a);
  switch (f->kind()) {
    case NodeKind::Leq:
    case NodeKind::Eq:
    case NodeKind::In:
    case NodeKind::Subset:
      return f;
    case NodeKind::Not:
      return F::not_(rational_rec(f->body()));
    case NodeKind::And:
      return F::and_(rational_rec(f->lhs()), rational_rec(f->rhs()));
    case NodeKind::Or:
      return F::or_(rational_rec(f->lhs()), rational_rec(f->rhs()));
    case NodeKind::Implies:
      return F::implies(rational_rec(f->lhs()), rational_rec(f->rhs()));
    case NodeKind::Iff:
      return F::iff(rational_rec(f->lhs()), rational_rec(f->rhs()));
    case NodeKind::Forall1:
      return F::forall1(f->binder(), rational_rec(f->body()));
    case NodeKind::Exists1:
      return F::exists1(f->binder(), rational_rec(f->body()));
    case NodeKind::Forall2:
      return F::forall2(f->binder(), rational_rec(f->body()));
    case NodeKind::Exists2:
      return F::exists2(f->binder(), rational_rec(f->body()));
  }
  throw std::logic_error("rational_mode: unreachable");
}

// Extracts the set argument of a ClBelong(X, S) tree from its subset atom.
std::optional<std::pair<std::string, std::string>> match_clbelong(const S2SPtr& f) {
  if (f->kind() != NodeKind::And) return std::nullopt;
  const auto& sub = f->rhs();
  if (sub->kind() != NodeKind::Subset) return std::nullopt;
  if (equal(f, build_clbelong(sub->set1(), sub->set2())))
    return std::make_pair(sub->set1(), sub->set2());
  return std::nullopt;
}

// Matches the minimality comparison
//   forall2 Y ((Closed(Y) /\ _) -> forall2 Z ((U(Z) /\ ClBelong(Z,A)) -> ClBelong(Z,Y)))
bool match_minof_comparison(const S2SPtr& f) {
  if (f->kind() != NodeKind::Forall2) return false;
  const std::string& cmp = f->binder();
  const auto& impl = f->body();
  if (impl->kind() != NodeKind::Implies || impl->lhs()->kind() != NodeKind::And) return false;
  if (!equal(impl->lhs()->lhs(), build_closed(cmp))) return false;
  const auto& inner = impl->rhs();
  if (inner->kind() != NodeKind::Forall2) return false;
  const std::string& z = inner->binder();
  const auto& impl2 = inner->body();
  if (impl2->kind() != NodeKind::Implies || impl2->lhs()->kind() != NodeKind::And) return false;
  if (!equal(impl2->lhs()->lhs(), build_u(z))) return false;
  auto left = match_clbelong(impl2->lhs()->rhs());
  auto right = match_clbelong(impl2->rhs());
  return left && right && left->first == z && right->first == z && right->second == cmp;
}

int count_minof_rec(const S2SPtr& f) {
  int here = match_minof_comparison(f) ? 1 : 0;
  switch (f->kind()) {
    case NodeKind::Leq:
    case NodeKind::Eq:
    case NodeKind::In:
    case NodeKind::Subset:
      return here;
    case NodeKind::Not:
    case NodeKind::Forall1:
    case NodeKind::Exists1:
    case NodeKind::Forall2:
    case NodeKind::Exists2:
      return here + count_minof_rec(f->body());
    default:
      return here + count_minof_rec(f->lhs()) + count_minof_rec(f->rhs());
  }
}

}  // namespace

S2SPtr rational_mode(const S2SPtr& f) { return rational_rec(f); }

int count_minof(const S2SPtr& f) { return count_minof_rec(f); }

}  // namespace ipc2::s2s
