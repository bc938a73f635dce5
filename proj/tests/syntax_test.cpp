#include <doctest.h>

#include <random>

#include "ipc2/syntax.hpp"

using namespace ipc2;

namespace {

FormulaPtr random_formula(std::mt19937& rng, int budget) {
  static const std::vector<std::string> props = {"p", "q", "r"};
  std::uniform_int_distribution<int> leaf(0, 3);
  std::uniform_int_distribution<int> node(0, 5);
  std::uniform_int_distribution<int> pick(0, 2);
  if (budget <= 1) {
    int k = leaf(rng);
    return k == 0 ? Formula::bottom() : Formula::var(props[k - 1]);
  }
  switch (node(rng)) {
    case 0:
      return Formula::implies(random_formula(rng, budget / 2), random_formula(rng, budget / 2));
    case 1:
      return Formula::conj(random_formula(rng, budget / 2), random_formula(rng, budget / 2));
    case 2:
      return Formula::disj(random_formula(rng, budget / 2), random_formula(rng, budget / 2));
    case 3:
      return Formula::forall(props[pick(rng)], random_formula(rng, budget - 1));
    case 4:
      return Formula::exists(props[pick(rng)], random_formula(rng, budget - 1));
    default: {
      int k = leaf(rng);
      return k == 0 ? Formula::bottom() : Formula::var(props[k - 1]);
    }
  }
}

}  // namespace

TEST_CASE("parse basics") {
  CHECK(equal(parse("bot"), Formula::bottom()));
  CHECK(equal(parse("forall p. p -> p"),
              Formula::forall("p", Formula::implies(Formula::var("p"), Formula::var("p")))));
  // ~p is sugar for p -> bot.
  CHECK(equal(parse("~p"), Formula::implies(Formula::var("p"), Formula::bottom())));
}

TEST_CASE("parse precedence and associativity") {
  CHECK(print(parse("a /\\ b \\/ c")) == "a /\\ b \\/ c");
  CHECK(equal(parse("a /\\ b \\/ c"),
              Formula::disj(Formula::conj(Formula::var("a"), Formula::var("b")), Formula::var("c"))));
  CHECK(equal(parse("a -> b -> c"),
              Formula::implies(Formula::var("a"),
                               Formula::implies(Formula::var("b"), Formula::var("c")))));
  CHECK(equal(parse("a /\\ b /\\ c"),
              Formula::conj(Formula::conj(Formula::var("a"), Formula::var("b")), Formula::var("c"))));
  CHECK(equal(parse("~a /\\ b"),
              Formula::conj(Formula::implies(Formula::var("a"), Formula::bottom()), Formula::var("b"))));
  // Quantifiers bind to the end of the expression.
  CHECK(equal(parse("a -> forall p. p /\\ b"),
              Formula::implies(Formula::var("a"),
                               Formula::forall("p", Formula::conj(Formula::var("p"), Formula::var("b"))))));
  // <-> expands to mutual implication.
  CHECK(equal(parse("a <-> b"),
              Formula::conj(Formula::implies(Formula::var("a"), Formula::var("b")),
                            Formula::implies(Formula::var("b"), Formula::var("a")))));
}

TEST_CASE("parse errors carry position and expectations") {
  try {
    parse("forall . p");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line == 1);
    CHECK(e.column == 8);
    CHECK(!e.expected.empty());
  }
  CHECK_THROWS_AS(parse("p -> )"), ParseError);
  CHECK_THROWS_AS(parse("p q"), ParseError);
  CHECK_THROWS_AS(parse(""), ParseError);
}

TEST_CASE("print canonical forms") {
  CHECK(print(Formula::bottom()) == "bot");
  CHECK(print(Formula::implies(Formula::var("p"), Formula::bottom())) == "p -> bot");
  CHECK(print(Formula::forall("p", Formula::var("p"))) == "forall p. p");
  CHECK(print(Formula::implies(Formula::implies(Formula::var("a"), Formula::var("b")),
                               Formula::var("c"))) == "(a -> b) -> c");
  CHECK(print(Formula::conj(Formula::var("a"), Formula::conj(Formula::var("b"), Formula::var("c")))) ==
        "a /\\ (b /\\ c)");
}

TEST_CASE("parse . print is the identity") {
  std::mt19937 rng(20240811);
  for (int i = 0; i < 2000; ++i) {
    auto phi = random_formula(rng, 12);
    auto round = parse(print(phi));
    CHECK(equal(phi, round));
  }
}

TEST_CASE("free variables") {
  CHECK(free_vars(parse("forall p. p")).empty());
  auto fv = free_vars(parse("p -> q"));
  CHECK(fv.size() == 2);
  CHECK(fv.count(Proposition("p")));
  CHECK(fv.count(Proposition("q")));
  auto fv2 = free_vars(parse("forall p. p -> q"));
  CHECK(fv2.size() == 1);
  CHECK(fv2.count(Proposition("q")));
}

TEST_CASE("substitution") {
  Proposition p("p"), q("q");
  CHECK(equal(substitute(Formula::var(p), p, Formula::bottom()), Formula::bottom()));
  // No free occurrence: the tree is untouched.
  auto closed = parse("forall p. p");
  CHECK(equal(substitute(closed, p, Formula::var(q)), closed));

  // Capture forces a rename with the smallest numeric suffix.
  auto phi = parse("forall q. p -> q");
  auto result = substitute(phi, p, Formula::var(q));
  CHECK(equal(result, parse("forall q1. q -> q1")));

  // Oracle: naive substitution after renaming the binder out of the way
  // must be alpha-equivalent to the capture-avoiding result.
  auto prerenamed = parse("forall z. p -> z");
  CHECK(alpha_equal(result, substitute(prerenamed, p, Formula::var(q))));
}

TEST_CASE("substitution free-variable property") {
  std::mt19937 rng(7);
  Proposition p("p");
  for (int i = 0; i < 500; ++i) {
    auto phi = random_formula(rng, 10);
    auto psi = random_formula(rng, 6);
    auto result = substitute(phi, p, psi);
    auto fv_phi = free_vars(phi);
    auto fv_psi = free_vars(psi);
    auto fv_res = free_vars(result);
    std::set<Proposition> bound;  // (free(phi) \ {p}) u free(psi)
    for (const auto& v : fv_phi)
      if (!(v == p)) bound.insert(v);
    bool p_was_free = fv_phi.count(p) > 0;
    if (p_was_free)
      for (const auto& v : fv_psi) bound.insert(v);
    CHECK(std::includes(bound.begin(), bound.end(), fv_res.begin(), fv_res.end()));
    if (p_was_free) CHECK(fv_res == bound);
  }
}

TEST_CASE("alpha equivalence by binder renaming") {
  auto a = parse("forall p. p -> q");
  auto b = parse("forall r. r -> q");
  CHECK(alpha_equal(a, b));
  CHECK(!alpha_equal(a, parse("forall p. p -> p")));
  CHECK(!equal(a, b));
}

TEST_CASE("desugar clauses") {
  CHECK(equal(desugar(Formula::bottom()), Formula::bottom()));
  CHECK(equal(desugar(parse("a \\/ b")), parse("forall p0. (a -> p0) -> ((b -> p0) -> p0)")));
  CHECK(equal(desugar(parse("a /\\ b")), parse("forall p0. (a -> (b -> p0)) -> p0")));
  CHECK(equal(desugar(parse("exists q. q")), parse("forall p0. (forall q. q -> p0) -> p0")));
  CHECK(equal(desugar(Formula::bottom(), BottomMode::Expand), parse("forall p0. p0")));
  // Fresh names skip names already present.
  CHECK(equal(desugar(parse("p0 \\/ b")), parse("forall p1. (p0 -> p1) -> ((b -> p1) -> p1)")));
}

TEST_CASE("desugar is idempotent") {
  std::mt19937 rng(99);
  for (int i = 0; i < 500; ++i) {
    auto phi = random_formula(rng, 10);
    auto once = desugar(phi);
    CHECK(equal(once, desugar(once)));
  }
}

TEST_CASE("desugared output uses only the core connectives") {
  std::mt19937 rng(123);
  for (int i = 0; i < 200; ++i) {
    auto phi = desugar(random_formula(rng, 10));
    std::vector<FormulaPtr> stack{phi};
    while (!stack.empty()) {
      auto f = stack.back();
      stack.pop_back();
      CHECK(f->kind() != Conn::And);
      CHECK(f->kind() != Conn::Or);
      CHECK(f->kind() != Conn::Exists);
      switch (f->kind()) {
        case Conn::Implies:
          stack.push_back(f->lhs());
          stack.push_back(f->rhs());
          break;
        case Conn::Forall:
          stack.push_back(f->body());
          break;
        default:
          break;
      }
    }
  }
}
