#include "ipc2/syntax.hpp"

#include <algorithm>
#include <cctype>
#include <cstring>
#include <map>
#include <sstream>

namespace ipc2 {

bool Proposition::valid_name(const std::string& name) {
  if (name.empty()) return false;
  if (!std::isalpha(static_cast<unsigned char>(name[0]))) return false;
  for (char c : name)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  return name != "bot" && name != "forall" && name != "exists";
}

Proposition::Proposition(std::string name) : name_(std::move(name)) {
  if (!valid_name(name_)) throw std::invalid_argument("invalid proposition name: '" + name_ + "'");
}

namespace {
const Proposition kDummy("p");
}

FormulaPtr Formula::bottom() {
  static const FormulaPtr instance(new Formula(Conn::Bottom, kDummy, nullptr, nullptr));
  return instance;
}

FormulaPtr Formula::var(Proposition p) {
  return FormulaPtr(new Formula(Conn::Var, std::move(p), nullptr, nullptr));
}

FormulaPtr Formula::implies(FormulaPtr a, FormulaPtr b) {
  if (!a || !b) throw std::invalid_argument("implies: null operand");
  return FormulaPtr(new Formula(Conn::Implies, kDummy, std::move(a), std::move(b)));
}

FormulaPtr Formula::conj(FormulaPtr a, FormulaPtr b) {
  if (!a || !b) throw std::invalid_argument("conj: null operand");
  return FormulaPtr(new Formula(Conn::And, kDummy, std::move(a), std::move(b)));
}

FormulaPtr Formula::disj(FormulaPtr a, FormulaPtr b) {
  if (!a || !b) throw std::invalid_argument("disj: null operand");
  return FormulaPtr(new Formula(Conn::Or, kDummy, std::move(a), std::move(b)));
}

FormulaPtr Formula::forall(Proposition p, FormulaPtr body) {
  if (!body) throw std::invalid_argument("forall: null body");
  return FormulaPtr(new Formula(Conn::Forall, std::move(p), std::move(body), nullptr));
}

FormulaPtr Formula::exists(Proposition p, FormulaPtr body) {
  if (!body) throw std::invalid_argument("exists: null body");
  return FormulaPtr(new Formula(Conn::Exists, std::move(p), std::move(body), nullptr));
}

const Proposition& Formula::prop() const {
  if (kind_ != Conn::Var && kind_ != Conn::Forall && kind_ != Conn::Exists)
    throw std::logic_error("prop() on a node without a proposition");
  return prop_;
}

const FormulaPtr& Formula::lhs() const {
  if (!lhs_) throw std::logic_error("lhs() on a leaf node");
  return lhs_;
}

const FormulaPtr& Formula::rhs() const {
  if (!rhs_) throw std::logic_error("rhs() on a node without a right operand");
  return rhs_;
}

std::size_t Formula::node_count() const {
  switch (kind_) {
    case Conn::Bottom:
    case Conn::Var:
      return 1;
    case Conn::Forall:
    case Conn::Exists:
      return 1 + lhs_->node_count();
    default:
      return 1 + lhs_->node_count() + rhs_->node_count();
  }
}

bool equal(const FormulaPtr& a, const FormulaPtr& b) {
  if (a.get() == b.get()) return true;
  if (!a || !b) return false;
  if (a->kind() != b->kind()) return false;
  switch (a->kind()) {
    case Conn::Bottom:
      return true;
    case Conn::Var:
      return a->prop() == b->prop();
    case Conn::Forall:
    case Conn::Exists:
      return a->prop() == b->prop() && equal(a->body(), b->body());
    default:
      return equal(a->lhs(), b->lhs()) && equal(a->rhs(), b->rhs());
  }
}

namespace {

bool alpha_rec(const FormulaPtr& a, const FormulaPtr& b,
               std::vector<std::pair<std::string, std::string>>& binders) {
  if (a->kind() != b->kind()) return false;
  switch (a->kind()) {
    case Conn::Bottom:
      return true;
    case Conn::Var: {
      const std::string& na = a->prop().str();
      const std::string& nb = b->prop().str();
      for (auto it = binders.rbegin(); it != binders.rend(); ++it) {
        bool la = it->first == na;
        bool lb = it->second == nb;
        if (la || lb) return la && lb;
      }
      return na == nb;
    }
    case Conn::Forall:
    case Conn::Exists: {
      binders.emplace_back(a->prop().str(), b->prop().str());
      bool ok = alpha_rec(a->body(), b->body(), binders);
      binders.pop_back();
      return ok;
    }
    default:
      return alpha_rec(a->lhs(), b->lhs(), binders) && alpha_rec(a->rhs(), b->rhs(), binders);
  }
}

void free_vars_rec(const FormulaPtr& phi, std::vector<std::string>& bound,
                   std::set<Proposition>& out) {
  switch (phi->kind()) {
    case Conn::Bottom:
      return;
    case Conn::Var:
      if (std::find(bound.begin(), bound.end(), phi->prop().str()) == bound.end())
        out.insert(phi->prop());
      return;
    case Conn::Forall:
    case Conn::Exists:
      bound.push_back(phi->prop().str());
      free_vars_rec(phi->body(), bound, out);
      bound.pop_back();
      return;
    default:
      free_vars_rec(phi->lhs(), bound, out);
      free_vars_rec(phi->rhs(), bound, out);
      return;
  }
}

void all_names_rec(const FormulaPtr& phi, std::set<std::string>& out) {
  switch (phi->kind()) {
    case Conn::Bottom:
      return;
    case Conn::Var:
      out.insert(phi->prop().str());
      return;
    case Conn::Forall:
    case Conn::Exists:
      out.insert(phi->prop().str());
      all_names_rec(phi->body(), out);
      return;
    default:
      all_names_rec(phi->lhs(), out);
      all_names_rec(phi->rhs(), out);
      return;
  }
}

}  // namespace

bool alpha_equal(const FormulaPtr& a, const FormulaPtr& b) {
  if (!a || !b) return false;
  std::vector<std::pair<std::string, std::string>> binders;
  return alpha_rec(a, b, binders);
}

std::set<Proposition> free_vars(const FormulaPtr& phi) {
  std::set<Proposition> out;
  std::vector<std::string> bound;
  free_vars_rec(phi, bound, out);
  return out;
}

std::set<std::string> all_names(const FormulaPtr& phi) {
  std::set<std::string> out;
  all_names_rec(phi, out);
  return out;
}

FormulaPtr substitute(const FormulaPtr& phi, const Proposition& p, const FormulaPtr& psi) {
  switch (phi->kind()) {
    case Conn::Bottom:
      return phi;
    case Conn::Var:
      return phi->prop() == p ? psi : phi;
    case Conn::Implies:
      return Formula::implies(substitute(phi->lhs(), p, psi), substitute(phi->rhs(), p, psi));
    case Conn::And:
      return Formula::conj(substitute(phi->lhs(), p, psi), substitute(phi->rhs(), p, psi));
    case Conn::Or:
      return Formula::disj(substitute(phi->lhs(), p, psi), substitute(phi->rhs(), p, psi));
    case Conn::Forall:
    case Conn::Exists: {
      const Proposition& x = phi->prop();
      if (x == p) return phi;
      auto body_free = free_vars(phi->body());
      if (!body_free.count(p)) return phi;
      auto psi_free = free_vars(psi);
      FormulaPtr body = phi->body();
      Proposition binder = x;
      if (psi_free.count(x)) {
        // Rename the binder: smallest numeric suffix avoiding the body's
        // names, psi's free variables and p itself.
        auto body_names = all_names(body);
        for (int k = 1;; ++k) {
          std::string cand = x.str() + std::to_string(k);
          if (body_names.count(cand)) continue;
          if (psi_free.count(Proposition(cand))) continue;
          if (cand == p.str()) continue;
          binder = Proposition(cand);
          break;
        }
        body = substitute(body, x, Formula::var(binder));
      }
      body = substitute(body, p, psi);
      return phi->kind() == Conn::Forall ? Formula::forall(binder, body)
                                         : Formula::exists(binder, body);
    }
  }
  throw std::logic_error("substitute: unreachable");
}

namespace {

class FreshNamer {
 public:
  explicit FreshNamer(std::set<std::string> taken) : taken_(std::move(taken)) {}
  Proposition next() {
    for (;;) {
      std::string cand = "p" + std::to_string(counter_++);
      if (taken_.insert(cand).second) return Proposition(cand);
    }
  }

 private:
  std::set<std::string> taken_;
  int counter_ = 0;
};

FormulaPtr desugar_rec(const FormulaPtr& phi, BottomMode mode, FreshNamer& fresh) {
  switch (phi->kind()) {
    case Conn::Bottom: {
      if (mode == BottomMode::Keep) return phi;
      Proposition f = fresh.next();
      return Formula::forall(f, Formula::var(f));
    }
    case Conn::Var:
      return phi;
    case Conn::Implies:
      return Formula::implies(desugar_rec(phi->lhs(), mode, fresh),
                              desugar_rec(phi->rhs(), mode, fresh));
    case Conn::Forall:
      return Formula::forall(phi->prop(), desugar_rec(phi->body(), mode, fresh));
    case Conn::And: {
      auto a = desugar_rec(phi->lhs(), mode, fresh);
      auto b = desugar_rec(phi->rhs(), mode, fresh);
      Proposition f = fresh.next();
      auto fv = Formula::var(f);
      return Formula::forall(
          f, Formula::implies(Formula::implies(a, Formula::implies(b, fv)), fv));
    }
    case Conn::Or: {
      auto a = desugar_rec(phi->lhs(), mode, fresh);
      auto b = desugar_rec(phi->rhs(), mode, fresh);
      Proposition f = fresh.next();
      auto fv = Formula::var(f);
      return Formula::forall(
          f, Formula::implies(Formula::implies(a, fv),
                              Formula::implies(Formula::implies(b, fv), fv)));
    }
    case Conn::Exists: {
      auto a = desugar_rec(phi->body(), mode, fresh);
      Proposition f = fresh.next();
      auto fv = Formula::var(f);
      return Formula::forall(
          f, Formula::implies(Formula::forall(phi->prop(), Formula::implies(a, fv)), fv));
    }
  }
  throw std::logic_error("desugar: unreachable");
}

}  // namespace

FormulaPtr desugar(const FormulaPtr& phi, BottomMode mode) {
  FreshNamer fresh(all_names(phi));
  return desugar_rec(phi, mode, fresh);
}

// ---------------------------------------------------------------------------
// Parser
// ---------------------------------------------------------------------------

ParseError::ParseError(std::string msg, int line, int column, std::vector<std::string> expected)
    : std::runtime_error(std::move(msg)), line(line), column(column), expected(std::move(expected)) {}

namespace {

enum class Tok { Bot, Ident, Not, AndOp, OrOp, Arrow, Iff, Forall, Exists, Dot, LParen, RParen, End };

struct Token {
  Tok kind;
  std::string text;
  int line;
  int column;
};

const char* tok_name(Tok t) {
  switch (t) {
    case Tok::Bot: return "'bot'";
    case Tok::Ident: return "identifier";
    case Tok::Not: return "'~'";
    case Tok::AndOp: return "'/\\'";
    case Tok::OrOp: return "'\\/'";
    case Tok::Arrow: return "'->'";
    case Tok::Iff: return "'<->'";
    case Tok::Forall: return "'forall'";
    case Tok::Exists: return "'exists'";
    case Tok::Dot: return "'.'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::End: return "end of input";
  }
  return "?";
}

class Lexer {
 public:
  explicit Lexer(const std::string& text) : text_(text) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '\n') {
        ++line_;
        col_ = 1;
        ++pos_;
        continue;
      }
      if (std::isspace(static_cast<unsigned char>(c))) {
        advance(1);
        continue;
      }
      int line = line_, col = col_;
      if (std::isalpha(static_cast<unsigned char>(c))) {
        std::size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
          ++pos_;
          ++col_;
        }
        std::string word = text_.substr(start, pos_ - start);
        Tok kind = word == "bot"      ? Tok::Bot
                   : word == "forall" ? Tok::Forall
                   : word == "exists" ? Tok::Exists
                                      : Tok::Ident;
        out.push_back({kind, word, line, col});
        continue;
      }
      if (starts_with("<->")) {
        out.push_back({Tok::Iff, "<->", line, col});
        advance(3);
        continue;
      }
      if (starts_with("->")) {
        out.push_back({Tok::Arrow, "->", line, col});
        advance(2);
        continue;
      }
      if (starts_with("/\\")) {
        out.push_back({Tok::AndOp, "/\\", line, col});
        advance(2);
        continue;
      }
      if (starts_with("\\/")) {
        out.push_back({Tok::OrOp, "\\/", line, col});
        advance(2);
        continue;
      }
      switch (c) {
        case '~': out.push_back({Tok::Not, "~", line, col}); advance(1); continue;
        case '.': out.push_back({Tok::Dot, ".", line, col}); advance(1); continue;
        case '(': out.push_back({Tok::LParen, "(", line, col}); advance(1); continue;
        case ')': out.push_back({Tok::RParen, ")", line, col}); advance(1); continue;
        default:
          throw ParseError("unexpected character '" + std::string(1, c) + "' at " +
                               std::to_string(line) + ":" + std::to_string(col),
                           line, col, {});
      }
    }
    out.push_back({Tok::End, "", line_, col_});
    return out;
  }

 private:
  bool starts_with(const char* s) const { return text_.compare(pos_, std::strlen(s), s) == 0; }
  void advance(int n) {
    pos_ += n;
    col_ += n;
  }

  const std::string& text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  FormulaPtr run() {
    auto f = parse_iff();
    expect(Tok::End);
    return f;
  }

 private:
  const Token& peek() const { return toks_[idx_]; }
  Token take() { return toks_[idx_++]; }

  [[noreturn]] void fail(std::vector<Tok> expected) {
    std::vector<std::string> names;
    for (Tok t : expected) names.push_back(tok_name(t));
    std::string msg = "syntax error at " + std::to_string(peek().line) + ":" +
                      std::to_string(peek().column) + ": unexpected " + tok_name(peek().kind) +
                      ", expected ";
    for (std::size_t i = 0; i < names.size(); ++i) {
      if (i) msg += i + 1 == names.size() ? " or " : ", ";
      msg += names[i];
    }
    throw ParseError(msg, peek().line, peek().column, names);
  }

  void expect(Tok t) {
    if (peek().kind != t) fail({t});
    take();
  }

  // <-> is sugar with the lowest precedence, right-associative.
  FormulaPtr parse_iff() {
    auto lhs = parse_implies();
    if (peek().kind == Tok::Iff) {
      take();
      auto rhs = parse_iff();
      return Formula::conj(Formula::implies(lhs, rhs), Formula::implies(rhs, lhs));
    }
    return lhs;
  }

  FormulaPtr parse_implies() {
    auto lhs = parse_or();
    if (peek().kind == Tok::Arrow) {
      take();
      return Formula::implies(lhs, parse_implies());
    }
    return lhs;
  }

  FormulaPtr parse_or() {
    auto lhs = parse_and();
    while (peek().kind == Tok::OrOp) {
      take();
      lhs = Formula::disj(lhs, parse_and());
    }
    return lhs;
  }

  FormulaPtr parse_and() {
    auto lhs = parse_unary();
    while (peek().kind == Tok::AndOp) {
      take();
      lhs = Formula::conj(lhs, parse_unary());
    }
    return lhs;
  }

  FormulaPtr parse_unary() {
    switch (peek().kind) {
      case Tok::Not: {
        take();
        return Formula::implies(parse_unary(), Formula::bottom());
      }
      case Tok::Forall:
      case Tok::Exists:
        return parse_quantifier();
      default:
        return parse_atom();
    }
  }

  FormulaPtr parse_quantifier() {
    Token q = take();
    if (peek().kind != Tok::Ident) fail({Tok::Ident});
    Token v = take();
    expect(Tok::Dot);
    auto body = parse_iff();  // binds to the end of the expression
    return q.kind == Tok::Forall ? Formula::forall(Proposition(v.text), body)
                                 : Formula::exists(Proposition(v.text), body);
  }

  FormulaPtr parse_atom() {
    switch (peek().kind) {
      case Tok::Bot:
        take();
        return Formula::bottom();
      case Tok::Ident:
        return Formula::var(Proposition(take().text));
      case Tok::LParen: {
        take();
        auto f = parse_iff();
        expect(Tok::RParen);
        return f;
      }
      default:
        fail({Tok::Bot, Tok::Ident, Tok::Not, Tok::Forall, Tok::Exists, Tok::LParen});
    }
  }

  std::vector<Token> toks_;
  std::size_t idx_ = 0;
};

// Precedence levels for printing: 0 quantifier body, 1 ->, 2 \/, 3 /\, 4 atom.
void print_rec(const FormulaPtr& phi, int min_level, std::string& out) {
  switch (phi->kind()) {
    case Conn::Bottom:
      out += "bot";
      return;
    case Conn::Var:
      out += phi->prop().str();
      return;
    case Conn::Forall:
    case Conn::Exists: {
      bool parens = min_level > 0;
      if (parens) out += "(";
      out += phi->kind() == Conn::Forall ? "forall " : "exists ";
      out += phi->prop().str();
      out += ". ";
      print_rec(phi->body(), 0, out);
      if (parens) out += ")";
      return;
    }
    case Conn::Implies: {
      bool parens = min_level > 1;
      if (parens) out += "(";
      print_rec(phi->lhs(), 2, out);
      out += " -> ";
      print_rec(phi->rhs(), 1, out);
      if (parens) out += ")";
      return;
    }
    case Conn::Or: {
      bool parens = min_level > 2;
      if (parens) out += "(";
      print_rec(phi->lhs(), 2, out);
      out += " \\/ ";
      print_rec(phi->rhs(), 3, out);
      if (parens) out += ")";
      return;
    }
    case Conn::And: {
      bool parens = min_level > 3;
      if (parens) out += "(";
      print_rec(phi->lhs(), 3, out);
      out += " /\\ ";
      print_rec(phi->rhs(), 4, out);
      if (parens) out += ")";
      return;
    }
  }
}

}  // namespace

FormulaPtr parse(const std::string& text) {
  Lexer lex(text);
  Parser p(lex.run());
  return p.run();
}

std::string print(const FormulaPtr& phi) {
  std::string out;
  print_rec(phi, 0, out);
  return out;
}

std::string dump(const FormulaPtr& phi) {
  switch (phi->kind()) {
    case Conn::Bottom:
      return "bot";
    case Conn::Var:
      return "(var " + phi->prop().str() + ")";
    case Conn::Implies:
      return "(implies " + dump(phi->lhs()) + " " + dump(phi->rhs()) + ")";
    case Conn::And:
      return "(and " + dump(phi->lhs()) + " " + dump(phi->rhs()) + ")";
    case Conn::Or:
      return "(or " + dump(phi->lhs()) + " " + dump(phi->rhs()) + ")";
    case Conn::Forall:
      return "(forall " + phi->prop().str() + " " + dump(phi->body()) + ")";
    case Conn::Exists:
      return "(exists " + phi->prop().str() + " " + dump(phi->body()) + ")";
  }
  throw std::logic_error("dump: unreachable");
}

}  // namespace ipc2
