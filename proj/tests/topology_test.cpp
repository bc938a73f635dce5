#include <doctest.h>

#include "ipc2/kripke.hpp"
#include "ipc2/topology.hpp"

using namespace ipc2;

namespace {

FinitePoset chain2() { return FinitePoset({"c0", "c1"}, {{"c0", "c1"}}); }
FinitePoset antichain(int n) {
  std::vector<std::string> names;
  for (int i = 0; i < n; ++i) names.push_back("a" + std::to_string(i));
  return FinitePoset(names, {});
}

}  // namespace

TEST_CASE("poset construction closes and validates the order") {
  auto p = chain2();
  CHECK(p.leq(0, 0));
  CHECK(p.leq(0, 1));
  CHECK(!p.leq(1, 0));
  // Transitive closure of generators.
  FinitePoset q({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}});
  CHECK(q.leq(0, 2));
  CHECK_THROWS_AS(FinitePoset({"a", "b"}, {{"a", "b"}, {"b", "a"}}), std::invalid_argument);
  CHECK_THROWS_AS(FinitePoset({"a", "a"}, {}), std::invalid_argument);
}

TEST_CASE("enumerate_opens order and contents") {
  auto one = antichain(1);
  auto opens1 = enumerate_opens(one);
  REQUIRE(opens1.size() == 2);
  CHECK(opens1[0].mask() == 0u);
  CHECK(opens1[1].mask() == 1u);

  auto c = chain2();
  auto opens2 = enumerate_opens(c);
  REQUIRE(opens2.size() == 3);
  CHECK(opens2[0].mask() == 0u);   // {}
  CHECK(opens2[1].mask() == 2u);   // {c1}
  CHECK(opens2[2].mask() == 3u);   // {c0,c1}

  CHECK(enumerate_opens(antichain(2)).size() == 4);
}

TEST_CASE("enumerate_opens bound") {
  auto big = antichain(13);
  CHECK_THROWS_AS(enumerate_opens(big), BoundExceeded);
  CHECK_NOTHROW(enumerate_opens(big, 13));
}

TEST_CASE("heyting_impl against the max definition") {
  auto c = chain2();
  OpenSet top(c, 3), mid(c, 2), bot(c, 0);
  CHECK(heyting_impl(mid, bot) == bot);   // {c1} -> {} = {}
  CHECK(heyting_impl(mid, mid) == top);   // a -> a = top
  CHECK(heyting_impl(top, mid) == mid);   // top -> a = a

  // Enumerated cross-check: heyting_impl(a,b) is the unique maximum open c
  // with c /\ a <= b.
  std::vector<FinitePoset> posets;
  posets.push_back(chain2());
  posets.push_back(antichain(2));
  posets.push_back(FinitePoset({"a", "b", "c"}, {{"a", "b"}, {"a", "c"}}));
  posets.push_back(FinitePoset({"a", "b", "c"}, {{"a", "c"}, {"b", "c"}}));
  for (const auto& p : posets) {
    auto opens = enumerate_opens(p);
    for (const auto& a : opens)
      for (const auto& b : opens) {
        auto impl = heyting_impl(a, b);
        CHECK((impl.mask() & a.mask() & ~b.mask()) == 0u);  // impl /\ a <= b
        for (const auto& cand : opens)
          if ((cand.mask() & a.mask() & ~b.mask()) == 0u)
            CHECK((cand.mask() & ~impl.mask()) == 0u);  // impl is the maximum
      }
  }
}

TEST_CASE("heyting_impl carrier mismatch") {
  auto p1 = chain2();
  auto p2 = chain2();
  CHECK_THROWS_AS(heyting_impl(OpenSet(p1, 3), OpenSet(p2, 3)), CarrierMismatch);
}

TEST_CASE("open sets must be upward closed") {
  auto c = chain2();
  CHECK_THROWS_AS(OpenSet(c, 1), std::invalid_argument);  // {c0} is not an upset
}

TEST_CASE("eval_topo clause examples") {
  auto c = chain2();
  TopoValuation v{{Proposition("p"), OpenSet(c, 2)}};
  CHECK(eval_topo(c, v, parse("p \\/ ~p")).mask() == 2u);       // {c1}
  CHECK(eval_topo(c, {}, parse("forall p. p")).mask() == 0u);   // empty
  CHECK(eval_topo(c, {}, parse("forall p. p -> p")).mask() == 3u);
  auto v3 = antichain(3);
  CHECK(eval_topo(v3, {}, parse("forall p. p")).mask() == 0u);
  CHECK(eval_topo(v3, {}, parse("forall p. p -> p")).mask() == 7u);
}

TEST_CASE("eval_topo exists ranges over all opens") {
  auto c = chain2();
  CHECK(eval_topo(c, {}, parse("exists p. p /\\ ~p")).mask() == 0u);
  CHECK(eval_topo(c, {}, parse("exists p. p")).mask() == 3u);
}

TEST_CASE("eval_topo unbound variable") {
  auto c = chain2();
  CHECK_THROWS_AS(eval_topo(c, {}, parse("p")), std::invalid_argument);
}

TEST_CASE("Peirce separates classical from intuitionistic on the 2-chain") {
  auto c = chain2();
  auto peirce = parse("((p -> q) -> p) -> p");
  TopoValuation v{{Proposition("p"), OpenSet(c, 2)}, {Proposition("q"), OpenSet(c, 0)}};
  CHECK(eval_topo(c, v, peirce).mask() == 2u);  // {c1}, not top
  // p -> p is top under every valuation.
  for (auto a : c.upset_masks()) {
    TopoValuation w{{Proposition("p"), OpenSet(c, a)}};
    CHECK(eval_topo(c, w, parse("p -> p")).mask() == c.full_mask());
  }
}

TEST_CASE("principal frame agreement spot checks") {
  std::vector<FinitePoset> posets;
  posets.push_back(chain2());
  posets.push_back(antichain(2));
  posets.push_back(FinitePoset({"a", "b", "c"}, {{"a", "b"}, {"a", "c"}}));
  std::vector<FormulaPtr> formulas = {
      parse("p \\/ ~p"),          parse("forall p. p"), parse("forall q. q -> p"),
      parse("exists q. q /\\ p"), parse("~~p -> p"),    parse("forall q. (p -> q) -> q"),
  };
  for (const auto& poset : posets) {
    auto frame = principal_frame(poset);
    for (const auto& phi : formulas)
      for (auto a : poset.upset_masks()) {
        TopoValuation tv{{Proposition("p"), OpenSet(poset, a)}};
        WorldValuation kv{{Proposition("p"), a}};
        CHECK(eval_topo(poset, tv, phi).mask() == eval_kripke(frame, kv, phi));
      }
  }
}

TEST_CASE("desugar preserves topological value") {
  std::vector<FinitePoset> posets;
  posets.push_back(chain2());
  posets.push_back(antichain(2));
  posets.push_back(FinitePoset({"a", "b", "c"}, {{"a", "c"}, {"b", "c"}}));
  std::vector<FormulaPtr> formulas = {
      parse("p /\\ q"),        parse("p \\/ q"),
      parse("exists r. r /\\ p"), parse("bot"),
      parse("(p \\/ q) -> q"), parse("exists r. forall s. r -> s")};
  for (const auto& poset : posets) {
    for (const auto& phi : formulas) {
      auto sugar_free = desugar(phi);
      for (auto a : poset.upset_masks())
        for (auto b : poset.upset_masks()) {
          TopoValuation v{{Proposition("p"), OpenSet(poset, a)},
                          {Proposition("q"), OpenSet(poset, b)}};
          CHECK(eval_topo(poset, v, phi) == eval_topo(poset, v, sugar_free));
        }
    }
  }
}
