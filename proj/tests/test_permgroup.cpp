#include <catch2/catch_amalgamated.hpp>

#include "branchgen/battery.hpp"
#include "branchgen/catalog.hpp"
#include "branchgen/permgroup.hpp"
#include "branchgen/quotients.hpp"
#include "branchgen/rng.hpp"

using namespace branchgen;

TEST_CASE("orders via stabilizer chains") {
  CHECK(symmetric3().order() == 6);
  CHECK(symmetric4().order() == 24);
  CHECK(alternating4().order() == 12);
  CHECK(dihedral8().order() == 8);
  CHECK(quaternion8().order() == 8);
  CHECK(heisenberg27().order() == 27);
  CHECK(cyclic(6).order() == 6);
  CHECK(abelian_group({2, 2}).order() == 4);
  CHECK(PermGroup(5, {}).order() == 1);
}

TEST_CASE("membership by sifting") {
  auto s3 = symmetric3();
  CHECK(s3.contains(Perm(3)));
  CHECK(s3.contains(Perm::from_cycles("(1 3)", 3)));
  auto c2 = PermGroup(3, {{"t", Perm::from_cycles("(1 2)", 3)}});
  CHECK_FALSE(c2.contains(Perm::from_cycles("(1 2 3)", 3)));
  for (const auto& [name, p] : s3.generators()) CHECK(s3.contains(p));
  CHECK_THROWS_AS(s3.contains(Perm(4)), parse_error);
}

TEST_CASE("derived subgroups") {
  CHECK(symmetric3().derived_subgroup().order() == 3);
  CHECK(symmetric4().derived_subgroup().order() == 12);
  CHECK(alternating4().derived_subgroup().order() == 4);
  CHECK(dihedral8().derived_subgroup().order() == 2);
  CHECK(quaternion8().derived_subgroup().order() == 2);
  CHECK(heisenberg27().derived_subgroup().order() == 3);
  CHECK(abelian_group({2, 2}).derived_subgroup().order() == 1);
}

TEST_CASE("abelian invariants") {
  CHECK(cyclic(6).abelian_invariants() == std::vector<std::uint64_t>{6});
  CHECK(symmetric3().abelian_invariants() == std::vector<std::uint64_t>{2});
  CHECK(symmetric4().abelian_invariants() == std::vector<std::uint64_t>{2});
  CHECK(alternating4().abelian_invariants() == std::vector<std::uint64_t>{3});
  CHECK(dihedral8().abelian_invariants() == std::vector<std::uint64_t>{2, 2});
  CHECK(quaternion8().abelian_invariants() == std::vector<std::uint64_t>{2, 2});
  CHECK(heisenberg27().abelian_invariants() == std::vector<std::uint64_t>{3, 3});
  CHECK(abelian_group({4, 12}).abelian_invariants() == std::vector<std::uint64_t>{4, 12});
  CHECK(abelian_group({3, 2}).abelian_invariants() == std::vector<std::uint64_t>{6});
}

TEST_CASE("subgroup_generated") {
  auto s3 = symmetric3();
  CHECK(subgroup_generated(s3, s3.gen_perms()).order() == 6);
  CHECK(subgroup_generated(s3, {}).order() == 1);
  CHECK(subgroup_generated(s3, {Perm::from_cycles("(1 2)", 3)}).order() == 2);
}

TEST_CASE("grigorchuk level quotients") {
  auto g = make_grigorchuk_first();
  QuotientTower tower(g);
  CHECK(tower.level(0).order() == 1);
  CHECK(tower.level(1).order() == 2);
  CHECK(tower.level(2).order() == 8);
  CHECK(tower.level(3).order() == 128);
  CHECK(tower.level(4).order() == 4096);
  CHECK(tower.level(5).order() == 4194304);

  CHECK(tower.level(3).derived_subgroup().order() == 16); // index 8

  for (unsigned n : {3u, 4u, 5u})
    CHECK(tower.level(n).abelian_invariants() == std::vector<std::uint64_t>{2, 2, 2});

  const auto& ab = tower.abelianization();
  CHECK(ab.stable_from == 3);
  CHECK(ab.invariants == std::vector<std::uint64_t>{2, 2, 2});
}

TEST_CASE("sunic (1,1) level quotients match the grigorchuk ones in order") {
  auto s = make_sunic2({1, 1});
  auto g = make_grigorchuk_first();
  QuotientTower ts(s), tg(g);
  for (unsigned n = 0; n <= 4; ++n) CHECK(ts.level(n).order() == tg.level(n).order());
}

TEST_CASE("ggs level quotients") {
  auto gs = make_ggs(3, {1, 2});
  QuotientTower tower(gs);
  CHECK(tower.level(1).order() == 3);
  for (unsigned n : {2u, 3u, 4u})
    CHECK(tower.level(n).abelian_invariants() == std::vector<std::uint64_t>{3, 3});
  CHECK(tower.abelianization().stable_from == 2);
}

TEST_CASE("level quotient degree cap") {
  Caps tiny;
  tiny.level_degree = 8;
  auto g = make_grigorchuk_first(tiny);
  CHECK_THROWS_AS(level_quotient(*g, 4), cap_error);
}

TEST_CASE("level quotients are homomorphic images") {
  auto g = make_grigorchuk_first();
  auto ggs = make_ggs(3, {1, 0});
  Rng rng(5150);
  for (int i = 0; i < 500; ++i) {
    const TreeGroup& G = (i % 2) ? *g : *ggs;
    unsigned n = 1 + static_cast<unsigned>(rng.below(4));
    Word x, y;
    for (int t = 0; t < 5; ++t) {
      x.syllables.push_back({static_cast<unsigned>(rng.below(G.alphabet().size())),
                             rng.coin() ? 1 : -1});
      y.syllables.push_back({static_cast<unsigned>(rng.below(G.alphabet().size())),
                             rng.coin() ? 1 : -1});
    }
    x = G.reduce(x);
    y = G.reduce(y);
    Perm px = word_on_level(G, x, n);
    Perm py = word_on_level(G, y, n);
    CHECK(word_on_level(G, G.mul(x, y), n) == px.then(py));
  }
}

TEST_CASE("portrait action equals quotient action") {
  auto g = make_grigorchuk_first();
  QuotientTower tower(g);
  Rng rng(62);
  for (int i = 0; i < 100; ++i) {
    unsigned n = 1 + static_cast<unsigned>(rng.below(5));
    Word w;
    for (int t = 0; t < 6; ++t)
      w.syllables.push_back({static_cast<unsigned>(rng.below(4)), 1});
    w = g->reduce(w);
    CHECK(word_on_level(*g, w, n) == eval_in_quotient(tower.level(n), w));
  }
}

TEST_CASE("coset quotient machinery") {
  auto s4 = symmetric4();
  auto d = s4.derived_subgroup();
  auto cq = coset_quotient(s4, d);
  REQUIRE(cq.size() == 2);
  CHECK(cq.gen_coset[0] == 1); // the transposition maps to the nontrivial coset
  CHECK(cq.generates({1}));
  CHECK_FALSE(cq.generates({0}));
}
