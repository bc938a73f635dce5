#include <doctest.h>

#include "ipc2/kripke.hpp"
#include "ipc2/proof.hpp"

using namespace ipc2;

namespace {

KripkeFrame chain2_principal() {
  return KripkeFrame::principal({"c0", "c1"}, {{"c0", "c1"}});
}

// The eight posets with at most three elements, up to isomorphism.
std::vector<FinitePoset> small_posets() {
  std::vector<FinitePoset> out;
  out.push_back(FinitePoset({"a"}, {}));
  out.push_back(FinitePoset({"a", "b"}, {}));
  out.push_back(FinitePoset({"a", "b"}, {{"a", "b"}}));
  out.push_back(FinitePoset({"a", "b", "c"}, {}));
  out.push_back(FinitePoset({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}}));
  out.push_back(FinitePoset({"a", "b", "c"}, {{"a", "b"}, {"a", "c"}}));
  out.push_back(FinitePoset({"a", "b", "c"}, {{"a", "c"}, {"b", "c"}}));
  out.push_back(FinitePoset({"a", "b", "c"}, {{"a", "b"}}));
  return out;
}

}  // namespace

TEST_CASE("frame invariants are validated") {
  // Non-upset domain member.
  CHECK_THROWS_AS(KripkeFrame({"c0", "c1"}, {{"c0", "c1"}}, {{0u, 1u}, {0u}}),
                  std::invalid_argument);
  // Domains must grow along the order: D_c0 contains {c1} but D_c1 does not.
  CHECK_THROWS_AS(KripkeFrame({"c0", "c1"}, {{"c0", "c1"}}, {{0u, 2u}, {0u}}),
                  std::invalid_argument);
  CHECK_NOTHROW(KripkeFrame({"c0", "c1"}, {{"c0", "c1"}}, {{0u, 2u}, {0u, 2u, 3u}}));
}

TEST_CASE("single world is classical") {
  auto f = KripkeFrame::principal({"w"}, {});
  WorldValuation v{{Proposition("p"), 1u}};
  CHECK(eval_kripke(f, v, parse("p \\/ ~p")) == 1u);
}

TEST_CASE("two-chain rejects excluded middle at the root") {
  auto f = chain2_principal();
  WorldValuation v{{Proposition("p"), 2u}};
  // Oracle by brute force over the 3 upsets: only c1 forces p \/ ~p.
  CHECK(eval_kripke(f, v, parse("p \\/ ~p")) == 2u);
}

TEST_CASE("two-chain Peirce countermodel") {
  auto f = chain2_principal();
  auto peirce = parse("((p -> q) -> p) -> p");
  WorldValuation v{{Proposition("p"), 2u}, {Proposition("q"), 0u}};
  CHECK(eval_kripke(f, v, peirce) != f.full_mask());
  CHECK(eval_kripke(f, v, peirce) == 2u);
}

TEST_CASE("valuation must be upward closed") {
  auto f = chain2_principal();
  WorldValuation v{{Proposition("p"), 1u}};  // {c0} is not an upset
  CHECK_THROWS_AS(eval_kripke(f, v, parse("p")), std::invalid_argument);
}

TEST_CASE("unbound proposition") {
  auto f = chain2_principal();
  CHECK_THROWS_AS(eval_kripke(f, {}, parse("p")), std::invalid_argument);
}

TEST_CASE("is_principal") {
  auto one = KripkeFrame({"w"}, {}, {{0u, 1u}});
  CHECK(one.is_principal());
  auto partial = KripkeFrame({"c0", "c1"}, {{"c0", "c1"}}, {{0u, 3u}, {0u, 3u}});
  CHECK(!partial.is_principal());
  auto full = KripkeFrame({"c0", "c1"}, {{"c0", "c1"}}, {{0u, 2u, 3u}, {0u, 2u, 3u}});
  CHECK(full.is_principal());
}

TEST_CASE("quantifiers range over the per-world domains") {
  // Constant domain {empty, full}: forall p. p \/ ~p holds everywhere
  // because the domain misses the intermediate upset {c1}.
  auto f = KripkeFrame({"c0", "c1"}, {{"c0", "c1"}}, {{0u, 3u}, {0u, 3u}});
  CHECK(eval_kripke(f, {}, parse("forall p. p \\/ ~p")) == 3u);
  // On the principal frame the same formula fails at the root.
  auto g = chain2_principal();
  CHECK(eval_kripke(g, {}, parse("forall p. p \\/ ~p")) == 2u);
}

TEST_CASE("exists instantiates at the world's own domain") {
  // D_c0 = {empty, full}, D_c1 additionally has {c1}.
  auto f = KripkeFrame({"c0", "c1"}, {{"c0", "c1"}}, {{0u, 3u}, {0u, 2u, 3u}});
  // exists p.(p /\ ~ ~ p ... ) pick something separating: exists p. (p -> bot) -> bot /\ p
  // Simpler: exists p. p /\ (q -> p) with v(q)=full ... use a direct witness check:
  // exists p. (p <-> q) with v(q) = {c1}: at c1 the domain contains {c1}, at c0 it does not.
  WorldValuation v{{Proposition("q"), 2u}};
  auto phi = parse("exists p. (p -> q) /\\ (q -> p)");
  CHECK(eval_kripke(f, v, phi) == 2u);
  // In the principal frame the witness exists everywhere.
  auto g = chain2_principal();
  CHECK(eval_kripke(g, v, phi) == 3u);
}

TEST_CASE("persistence of evaluation") {
  auto posets = small_posets();
  std::vector<FormulaPtr> formulas = {
      parse("p \\/ ~p"), parse("~~p"), parse("forall q. (p -> q) \\/ (q -> p)"),
      parse("exists q. q /\\ ~p"), parse("(p -> q) -> q")};
  for (const auto& poset : posets) {
    auto frame = principal_frame(poset);
    for (const auto& phi : formulas)
      for (auto a : poset.upset_masks())
        for (auto b : poset.upset_masks()) {
          WorldValuation v{{Proposition("p"), a}, {Proposition("q"), b}};
          // eval_kripke itself asserts upward closure of the result; just
          // confirm it returns without complaint.
          CHECK_NOTHROW(eval_kripke(frame, v, phi));
        }
  }
}

TEST_CASE("comprehension_closed") {
  // Any principal frame: always closed.
  auto g = chain2_principal();
  std::vector<FormulaPtr> pool = {parse("p"), parse("~p"), parse("p -> p")};
  std::vector<WorldValuation> vals = {{{Proposition("p"), 2u}}, {{Proposition("p"), 3u}}};
  CHECK(comprehension_closed(g, pool, vals));

  // D_c = {empty, C} at both worlds: X_{p,v} restricted above c0 is {c1},
  // which is missing from D_c0.
  auto f = KripkeFrame({"c0", "c1"}, {{"c0", "c1"}}, {{0u, 3u}, {0u, 3u}});
  std::vector<WorldValuation> v1 = {{{Proposition("p"), 2u}}};
  CHECK(!comprehension_closed(f, {parse("p")}, v1));

  // Empty pool is vacuously closed.
  CHECK(comprehension_closed(f, {}, v1));
}

TEST_CASE("constant domains validate the CD scheme") {
  auto posets = small_posets();
  Proposition p("p"), a("a"), b("b");
  std::vector<FormulaPtr> instances = {
      cd_instance(Formula::var(a), Formula::var(p), p),
      cd_instance(Formula::var(a), Formula::var(b), p),
      cd_instance(Formula::bottom(), Formula::var(p), p),
  };
  for (const auto& poset : posets) {
    auto upsets = poset.upset_masks();
    auto n = upsets.size();
    // Every family of upsets, used as the constant domain at every world.
    for (std::uint32_t family = 0; family < (1u << n); ++family) {
      std::vector<WorldMask> domain;
      for (std::size_t i = 0; i < n; ++i)
        if ((family >> i) & 1u) domain.push_back(upsets[i]);
      std::vector<std::vector<WorldMask>> domains(poset.size(), domain);
      std::vector<std::pair<std::string, std::string>> pairs;
      for (std::size_t x = 0; x < poset.size(); ++x)
        for (std::size_t y = 0; y < poset.size(); ++y)
          if (poset.leq(static_cast<int>(x), static_cast<int>(y)))
            pairs.emplace_back(poset.names()[x], poset.names()[y]);
      KripkeFrame frame(poset.names(), pairs, domains);
      for (const auto& inst : instances)
        for (auto va : upsets)
          for (auto vb : upsets) {
            WorldValuation v{{a, va}, {b, vb}};
            CHECK(eval_kripke(frame, v, inst) == frame.full_mask());
          }
    }
  }
}
