#include <doctest.h>

#include <random>

#include "ipc2/interval.hpp"

using namespace ipc2;

namespace {

Dyadic dy(long long num, long long den) { return Dyadic::from_fraction(num, den); }

DyadicOpenSet iv(long long ln, long long ld, long long rn, long long rd) {
  return DyadicOpenSet::interval(dy(ln, ld), dy(rn, rd));
}

DyadicOpenSet random_set(std::mt19937& rng) {
  std::uniform_int_distribution<int> count(0, 3);
  std::uniform_int_distribution<int> num(0, 16);
  std::vector<DyInterval> parts;
  int n = count(rng);
  for (int i = 0; i < n; ++i) {
    int a = num(rng), b = num(rng);
    if (a == b) continue;
    if (a > b) std::swap(a, b);
    parts.push_back({dy(a, 16), dy(b, 16)});
  }
  return DyadicOpenSet::of(std::move(parts));
}

}  // namespace

TEST_CASE("normalization") {
  // Shared endpoint stays split.
  auto split = set_union(iv(0, 1, 1, 2), iv(1, 2, 1, 1));
  REQUIRE(split.intervals().size() == 2);
  CHECK(split.str() == "(0,1/2) U (1/2,1)");
  CHECK(!split.contains(dy(1, 2)));
  // Overlap merges.
  CHECK(set_union(iv(0, 1, 1, 2), iv(1, 4, 1, 1)) == DyadicOpenSet::full());
  // Empty is the unit of union.
  auto a = iv(1, 4, 3, 4);
  CHECK(set_union(DyadicOpenSet::empty(), a) == a);
  // Normalization is idempotent.
  auto again = DyadicOpenSet::of(std::vector<DyInterval>(split.intervals()));
  CHECK(again == split);
}

TEST_CASE("intersection") {
  CHECK(set_intersect(iv(0, 1, 1, 2), iv(1, 4, 1, 1)) == iv(1, 4, 1, 2));
  CHECK(set_intersect(iv(0, 1, 1, 2), DyadicOpenSet::empty()).is_empty());
  CHECK(set_intersect(iv(0, 1, 1, 2), iv(1, 2, 1, 1)).is_empty());
}

TEST_CASE("union and intersection laws on random sets") {
  std::mt19937 rng(42);
  for (int i = 0; i < 300; ++i) {
    auto a = random_set(rng), b = random_set(rng), c = random_set(rng);
    CHECK(set_union(a, b) == set_union(b, a));
    CHECK(set_intersect(a, b) == set_intersect(b, a));
    CHECK(set_union(a, set_union(b, c)) == set_union(set_union(a, b), c));
    CHECK(set_intersect(a, set_intersect(b, c)) == set_intersect(set_intersect(a, b), c));
    CHECK(set_subset(set_intersect(a, b), a));
    CHECK(set_subset(a, set_union(a, b)));
  }
}

TEST_CASE("impl_interior") {
  auto full = DyadicOpenSet::full();
  auto empty = DyadicOpenSet::empty();
  CHECK(impl_interior(full, empty).is_empty());      // ~top = bot
  CHECK(impl_interior(empty, empty) == full);        // ~bot = top
  // Complement of (0,1/2) u (1/2,1) is the single point 1/2; its interior
  // is empty.
  auto punctured = set_union(iv(0, 1, 1, 2), iv(1, 2, 1, 1));
  CHECK(impl_interior(punctured, empty).is_empty());
  // ~(0,1/2) = (1/2,1).
  CHECK(impl_interior(iv(0, 1, 1, 2), empty) == iv(1, 2, 1, 1));
  // a -> a = top, top -> a = a.
  std::mt19937 rng(11);
  for (int i = 0; i < 200; ++i) {
    auto a = random_set(rng);
    CHECK(impl_interior(a, a) == full);
    CHECK(impl_interior(full, a) == a);
    auto b = random_set(rng);
    // value /\ a <= b: the defining inequality of the implication.
    CHECK(set_subset(set_intersect(impl_interior(a, b), a), b));
  }
}

TEST_CASE("eval_exact") {
  IntervalValuation v{{Proposition("p"), set_union(iv(0, 1, 1, 2), iv(1, 2, 1, 1))}};
  CHECK(eval_exact(parse("~~p"), v) == DyadicOpenSet::full());
  IntervalValuation w{{Proposition("p"), iv(0, 1, 1, 2)}};
  CHECK(eval_exact(parse("p \\/ ~p"), w) == set_union(iv(0, 1, 1, 2), iv(1, 2, 1, 1)));
  CHECK(eval_exact(parse("p -> p"), w) == DyadicOpenSet::full());
  CHECK_THROWS_AS(eval_exact(parse("forall p. p"), {}), QuantifierEncountered);
  CHECK_THROWS_AS(eval_exact(parse("q"), {}), std::invalid_argument);
}

TEST_CASE("quantifier pool") {
  auto pool1 = QuantifierPool::generate(1);
  // Depth 1: elementary opens over {0, 1/2, 1}: {}, (0,1/2), (1/2,1),
  // (0,1), and the punctured (0,1/2) u (1/2,1).
  CHECK(pool1.opens().size() == 5);

  auto pool2 = QuantifierPool::generate(2);
  // Depth 2 has 34 cell/point configurations.
  CHECK(pool2.opens().size() == 34);

  // The pool contains the empty set, the full set and all punctured sets.
  auto has = [&](const QuantifierPool& pool, const DyadicOpenSet& s) {
    for (const auto& o : pool.opens())
      if (o == s) return true;
    return false;
  };
  CHECK(has(pool2, DyadicOpenSet::empty()));
  CHECK(has(pool2, DyadicOpenSet::full()));
  for (int i = 1; i < 4; ++i)
    CHECK(has(pool2, set_union(DyadicOpenSet::interval(dy(0, 1), dy(i, 4)),
                               DyadicOpenSet::interval(dy(i, 4), dy(1, 1)))));

  // Refinement: every depth-k open is a depth-(k+1) open.
  auto pool3 = QuantifierPool::generate(3);
  for (const auto& o : pool2.opens()) CHECK(has(pool3, o));
  for (const auto& o : pool1.opens()) CHECK(has(pool2, o));

  CHECK_THROWS_AS(QuantifierPool::generate(4), std::invalid_argument);
  CHECK_THROWS_AS(QuantifierPool::generate(0), std::invalid_argument);
}

TEST_CASE("sandwich coincides with eval_exact on quantifier-free input") {
  std::mt19937 rng(5);
  auto pool = QuantifierPool::generate(1);
  std::vector<FormulaPtr> formulas = {parse("p -> q"), parse("~p"), parse("p -> (q -> p)"),
                                      parse("bot"), parse("(p -> q) -> q")};
  for (int i = 0; i < 100; ++i) {
    IntervalValuation v{{Proposition("p"), random_set(rng)}, {Proposition("q"), random_set(rng)}};
    for (const auto& phi : formulas) {
      auto s = eval_sandwich(phi, v, pool);
      auto exact = eval_exact(phi, v);
      CHECK(s.lower == exact);
      CHECK(s.upper == exact);
    }
  }
}

TEST_CASE("sandwich on forall") {
  auto pool = QuantifierPool::generate(1);
  // forall p. p: the pool contains the empty set, so the upper bound is empty.
  auto s = eval_sandwich(parse("forall p. p"), {}, pool);
  CHECK(s.upper.is_empty());
  CHECK(s.lower.is_empty());
  // forall p. p -> p stays top from above.
  auto t = eval_sandwich(desugar(parse("forall p. p -> p")), {}, pool);
  CHECK(t.upper == DyadicOpenSet::full());
  CHECK(t.lower.is_empty());  // the trivial bound for quantified formulas
  CHECK_THROWS_AS(eval_sandwich(parse("p /\\ q"), {}, pool), UndersugaredFormula);
}

TEST_CASE("excluded middle is refuted from above at pool depth 2") {
  auto phi = desugar(parse("forall p. p \\/ ~p"));
  auto pool = QuantifierPool::generate(2);
  auto s = eval_sandwich(phi, {}, pool);
  CHECK(!s.upper.is_full());
  CHECK(!s.upper.contains(dy(1, 4)));
  CHECK(set_subset(s.lower, s.upper));
}

TEST_CASE("pool monotonicity of the sandwich") {
  std::vector<FormulaPtr> formulas = {
      desugar(parse("forall p. p \\/ ~p")),
      desugar(parse("forall p. ~~p -> p")),
      desugar(parse("forall p. q -> p")),
      desugar(parse("forall p. p -> q")),
      desugar(parse("forall p. (p -> q) \\/ (q -> p)")),
  };
  IntervalValuation v{{Proposition("q"), iv(1, 4, 3, 4)}};
  Sandwich prev;
  for (const auto& phi : formulas) {
    bool first = true;
    for (int depth = 1; depth <= 3; ++depth) {
      auto pool = QuantifierPool::generate(depth);
      auto s = eval_sandwich(phi, v, pool);
      CHECK(set_subset(s.lower, s.upper));
      if (!first) {
        CHECK(set_subset(s.upper, prev.upper));   // upper shrinks
        CHECK(set_subset(prev.lower, s.lower));   // lower grows
      }
      prev = s;
      first = false;
    }
  }
}
