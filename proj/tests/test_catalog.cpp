#include <catch2/catch_amalgamated.hpp>

#include "branchgen/catalog.hpp"

using namespace branchgen;

TEST_CASE("grigorchuk metadata") {
  auto g = make_grigorchuk_first();
  CHECK(g->meta.in_mn.value == TriState::yes);
  CHECK(g->meta.torsion.value == TriState::yes);
  REQUIRE(g->meta.abelian_invariants.has_value());
  CHECK(*g->meta.abelian_invariants == std::vector<std::uint64_t>{2, 2, 2});
}

TEST_CASE("ggs validation and metadata") {
  CHECK_THROWS_AS(make_ggs(4, {1, 0, 0}), parse_error);
  CHECK_THROWS_AS(make_ggs(2, {1}), parse_error);
  CHECK_THROWS_AS(make_ggs(3, {0, 0}), parse_error);
  CHECK_THROWS_AS(make_ggs(3, {1}), parse_error);

  auto gs = make_ggs(3, {1, 2}); // Gupta-Sidki data: torsion, symmetric
  CHECK(gs->meta.torsion.value == TriState::yes);
  CHECK(gs->meta.branch.value == TriState::no);
  CHECK(gs->meta.in_mn.value == TriState::yes);

  auto fg = make_ggs(3, {1, 0}); // non-torsion, non-symmetric: branch
  CHECK(fg->meta.torsion.value == TriState::no);
  CHECK(fg->meta.branch.value == TriState::yes);
  CHECK(fg->meta.in_mn.value == TriState::yes);
}

TEST_CASE("sunic validation and torsion certification") {
  CHECK_THROWS_AS(make_sunic2({1}), parse_error);    // m = 1
  CHECK_THROWS_AS(make_sunic2({0, 1}), parse_error); // a_0 = 0

  auto s10 = make_sunic2({1, 0});
  CHECK(s10->meta.torsion.value == TriState::no);
  CHECK(s10->meta.torsion.prov == Provenance::derived);
  CHECK(s10->meta.in_mn.value == TriState::no);

  auto s11 = make_sunic2({1, 1});
  CHECK(s11->meta.torsion.value == TriState::yes);
  CHECK(s11->meta.in_mn.value == TriState::yes);

  auto s101 = make_sunic2({1, 0, 1}); // no b with psi(b) = (a, b): stays unknown
  CHECK(s101->meta.torsion.value == TriState::unknown);

  auto s100 = make_sunic2({1, 0, 0});
  CHECK(s100->meta.torsion.value == TriState::no);
}

TEST_CASE("find_b") {
  auto s10 = make_sunic2({1, 0});
  auto b = find_b(*s10);
  REQUIRE(b.has_value());
  CHECK(s10->render(*b) == "b1 b2");
  CHECK(s10->equal(s10->section(*b, 0), s10->parse("a")));
  CHECK(s10->equal(s10->section(*b, 1), *b));

  CHECK_FALSE(find_b(*make_sunic2({1, 1})).has_value());
  CHECK_FALSE(find_b(*make_sunic2({1, 0, 1})).has_value());

  auto s100 = make_sunic2({1, 0, 0});
  auto b3 = find_b(*s100);
  REQUIRE(b3.has_value());
  CHECK(s100->render(*b3) == "b1 b2 b3");
}

TEST_CASE("h_q generators") {
  auto s = make_sunic2({1, 0});
  Word b = *find_b(*s);
  auto gens = h_q_generators(s, b, 3);
  REQUIRE(gens.size() == 3);
  CHECK(s->render(gens[1].word) == "b1");
  CHECK(s->render(gens[2].word) == "b2");
  CHECK(gens[0].word.size() == 9); // (a b1 b2)^3
  CHECK_THROWS_AS(h_q_generators(s, b, 2), parse_error);
  CHECK_THROWS_AS(h_q_generators(s, b, 9), parse_error);

  auto g5 = h_q_generators(s, b, 5);
  CHECK(g5[0].word.size() >= 10);
}

TEST_CASE("generator involutions have order two") {
  for (auto coeffs : std::vector<std::vector<unsigned>>{{1, 0}, {1, 1}, {1, 0, 1}, {1, 0, 0}, {1, 1, 1, 1}}) {
    auto s = make_sunic2(coeffs);
    for (unsigned i = 0; i < s->alphabet().size(); ++i) {
      CAPTURE(coeffs, i);
      CHECK(s->order_bounded(Word::gen(i), 2) == 2);
    }
  }
}

TEST_CASE("declared recursions round-trip through the engine") {
  std::vector<TreeGroupPtr> groups = {make_grigorchuk_first(), make_sunic2({1, 0}),
                                      make_sunic2({1, 1}), make_ggs(3, {1, 2})};
  for (const auto& g : groups) {
    for (unsigned i = 0; i < g->alphabet().size(); ++i) {
      Word w = Word::gen(i);
      const GeneratorRule& rule = g->rules().rules[i];
      CHECK(g->root_perm(w) == rule.root);
      for (unsigned v = 0; v < g->arity(); ++v)
        CHECK(g->equal(g->section(w, v), rule.sections[v]));
    }
  }
}

TEST_CASE("group specs round-trip through JSON") {
  GroupSpec s;
  s.family = Family::sunic2;
  s.coeffs = {1, 0};
  auto j = s.to_json();
  auto s2 = GroupSpec::from_json(j);
  CHECK(s2.family == Family::sunic2);
  CHECK(s2.coeffs == std::vector<unsigned>{1, 0});
  CHECK(s2.display_name() == "sunic2(1,0)");

  CHECK_THROWS_AS(GroupSpec::from_json(nlohmann::json::parse("{\"family\":\"nope\"}")),
                  parse_error);
  CHECK_THROWS_AS(GroupSpec::from_json(nlohmann::json::parse("[1,2]")), parse_error);
}
