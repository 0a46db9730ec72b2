#include <catch2/catch_amalgamated.hpp>

#include "branchgen/catalog.hpp"
#include "branchgen/rng.hpp"
#include "branchgen/tree.hpp"

using namespace branchgen;

namespace {

Word rand_word(Rng& rng, const TreeGroup& g, std::size_t max_syllables = 8) {
  Word w;
  auto n = static_cast<std::size_t>(rng.range(1, static_cast<std::int64_t>(max_syllables)));
  for (std::size_t i = 0; i < n; ++i) {
    auto gen = static_cast<unsigned>(rng.below(g.alphabet().size()));
    w.syllables.push_back({gen, rng.coin() ? 1 : -1});
  }
  return g.reduce(w);
}

} // namespace

TEST_CASE("action convention is pinned") {
  // Words act left to right: v^(gh) = (v^g)^h.
  Perm x = Perm::from_cycles("(1 2)", 3);
  Perm y = Perm::from_cycles("(2 3)", 3);
  Perm xy = x.then(y);
  CHECK(xy(0) == 2); // 1 -> 2 under x, 2 -> 3 under y (0-based: 0 -> 1 -> 2)
  CHECK(xy.cycles() == "(1 3 2)");
}

TEST_CASE("root permutations") {
  auto g = make_grigorchuk_first();
  CHECK(g->root_perm(g->parse("a")).cycles() == "(1 2)");
  CHECK(g->root_perm(g->parse("b")).is_identity());
  CHECK(g->root_perm(g->parse("")).is_identity());
  auto s = make_sunic2({1, 0});
  CHECK(s->root_perm(s->parse("b1")).is_identity());
  CHECK(s->root_perm(s->parse("a b2")).cycles() == "(1 2)");
  auto ggs = make_ggs(3, {1, 0});
  CHECK(ggs->root_perm(ggs->parse("a")).cycles() == "(1 2 3)");
}

TEST_CASE("sections follow the recursion") {
  auto g = make_grigorchuk_first();
  CHECK(g->render(g->section(g->parse("b"), 0)) == "a");
  CHECK(g->render(g->section(g->parse("b"), 1)) == "c");
  CHECK(g->render(g->section(g->parse("d"), 0)) == "");
  CHECK(g->render(g->section(g->parse("d"), 1)) == "b");

  auto s = make_sunic2({1, 0}); // psi(b2) = (a, b1)
  CHECK(s->render(s->section(s->parse("b2"), 0)) == "a");
  CHECK(s->render(s->section(s->parse("b2"), 1)) == "b1");

  auto t = make_sunic2({1, 1}); // psi(b2) = (a, b1 b2)
  CHECK(t->render(t->section(t->parse("b2"), 1)) == "b1 b2");

  auto u = make_sunic2({1, 0, 1}); // psi(b3) = (a, b1 b3)
  CHECK(u->render(u->section(u->parse("b3"), 0)) == "a");
  CHECK(u->render(u->section(u->parse("b3"), 1)) == "b1 b3");

  auto ggs = make_ggs(3, {1, 0});
  CHECK(ggs->render(ggs->section(ggs->parse("b"), 2)) == "b");
  CHECK(ggs->render(ggs->section(ggs->parse("b"), 0)) == "a");
  CHECK(ggs->render(ggs->section(ggs->parse("b"), 1)) == "");
}

TEST_CASE("section of identity is identity") {
  auto g = make_grigorchuk_first();
  CHECK(g->section_path(g->parse(""), {0, 1, 0}).empty());
}

TEST_CASE("psi of (ab)^2 in G_{2,x^2+1}") {
  auto s = make_sunic2({1, 0});
  Word b = *find_b(*s);
  REQUIRE(s->render(b) == "b1 b2");
  Word ab = s->mul(s->parse("a"), b);
  Word sq = s->mul(ab, ab);
  REQUIRE(s->root_perm(sq).is_identity());
  CHECK(s->equal(s->section(sq, 1), ab));
  CHECK(s->equal(s->section(sq, 0), s->mul(b, s->parse("a"))));
}

TEST_CASE("triviality by section closure") {
  auto g = make_grigorchuk_first();
  CHECK(g->trivial(g->parse("")));
  CHECK(g->trivial(g->parse("b c d")));
  CHECK(g->trivial(g->parse("(a d)^4")));
  CHECK_FALSE(g->trivial(g->parse("(a d)^2")));
  CHECK_FALSE(g->trivial(g->parse("a b")));
}

TEST_CASE("the conjugation identity holds for odd primes") {
  // a^((ba)^((q-1)/2)) = (ab)^q b whenever a and b are involutions.
  auto s = make_sunic2({1, 0});
  Word a = s->parse("a");
  Word b = *find_b(*s);
  for (std::uint64_t q : {3ull, 5ull, 7ull}) {
    Word conj = s->power(s->mul(b, a), static_cast<std::int64_t>((q - 1) / 2));
    Word lhs = s->conjugate(a, conj);
    Word rhs = s->mul(s->power(s->mul(a, b), static_cast<std::int64_t>(q)), b);
    CHECK(s->trivial(s->mul(lhs, s->invert(rhs))));
  }
}

TEST_CASE("bounded order") {
  auto g = make_grigorchuk_first();
  CHECK(g->order_bounded(g->parse("a"), 4) == 2);
  CHECK(g->order_bounded(g->parse("a d"), 8) == 4);
  CHECK(g->order_bounded(g->parse("a b"), 32) == 16);
  CHECK(g->order_bounded(g->parse(""), 4) == 1);

  auto s = make_sunic2({1, 0});
  CHECK_FALSE(s->order_bounded(s->parse("a b1 b2"), 64).has_value());
}

TEST_CASE("infinite-order certificate") {
  auto s = make_sunic2({1, 0});
  Word ab = s->mul(s->parse("a"), *find_b(*s));
  CHECK(s->certify_infinite_order(ab));
  CHECK_FALSE(s->certify_infinite_order(s->parse("")));
  CHECK_FALSE(s->certify_infinite_order(s->parse("a")));

  auto g = make_grigorchuk_first();
  CHECK_FALSE(g->certify_infinite_order(g->parse("a b"))); // order 16
}

TEST_CASE("portraits") {
  auto g = make_grigorchuk_first();
  Portrait p0 = g->portrait(g->parse("b"), 0);
  CHECK(p0.labels.empty());

  Portrait p1 = g->portrait(g->parse("a"), 1);
  REQUIRE(p1.labels.size() == 1);
  CHECK(p1.labels.at({}).cycles() == "(1 2)");

  Portrait p2 = g->portrait(g->parse("b"), 2);
  REQUIRE(p2.labels.size() == 3);
  CHECK(p2.labels.at({}).is_identity());
  CHECK(p2.labels.at({0}).cycles() == "(1 2)"); // section a
  CHECK(p2.labels.at({1}).is_identity());       // section c
}

TEST_CASE("homomorphism properties on random pairs") {
  auto g = make_grigorchuk_first();
  auto s = make_sunic2({1, 0});
  auto ggs = make_ggs(3, {1, 2});
  std::vector<TreeGroupPtr> groups = {g, s, ggs};
  Rng rng(777);
  for (int i = 0; i < 500; ++i) {
    const auto& G = groups[static_cast<std::size_t>(i) % groups.size()];
    Word x = rand_word(rng, *G);
    Word y = rand_word(rng, *G);
    Word xy = G->mul(x, y);
    Perm px = G->root_perm(x);
    CHECK(G->root_perm(xy) == px.then(G->root_perm(y)));
    for (unsigned v = 0; v < G->arity(); ++v) {
      Word lhs = G->section(xy, v);
      Word rhs = G->mul(G->section(x, v), G->section(y, px(v)));
      CHECK(G->equal(lhs, rhs));
    }
  }
}

TEST_CASE("g g^-1 is trivial on random words") {
  auto g = make_grigorchuk_first();
  auto s = make_sunic2({1, 1});
  Rng rng(4242);
  for (int i = 0; i < 500; ++i) {
    const TreeGroup& G = (i % 2) ? *g : static_cast<const TreeGroup&>(*s);
    Word w = rand_word(rng, G);
    CHECK(G.trivial(G.mul(w, G.invert(w))));
  }
}

TEST_CASE("equal behaves like an equivalence relation") {
  auto s = make_sunic2({1, 0});
  Rng rng(31);
  std::vector<Word> ws;
  for (int i = 0; i < 40; ++i) ws.push_back(rand_word(rng, *s, 5));
  for (const auto& w : ws) CHECK(s->equal(w, w));
  for (std::size_t i = 0; i + 1 < ws.size(); i += 2) {
    bool ab = s->equal(ws[i], ws[i + 1]);
    bool ba = s->equal(ws[i + 1], ws[i]);
    CHECK(ab == ba);
  }
  // b1 and b2 differ (sections at the right subtree differ).
  CHECK_FALSE(s->equal(s->parse("b1"), s->parse("b2")));
}

TEST_CASE("budget errors are reported, not hangs") {
  Caps tiny;
  tiny.closure_words = 4;
  auto g = make_grigorchuk_first(tiny);
  CHECK_THROWS_AS(g->trivial(g->parse("(a b)^8")), budget_error);
  auto full = make_grigorchuk_first();
  CHECK_FALSE(full->trivial(full->parse("(a b)^8"))); // order 16, so nontrivial
}
