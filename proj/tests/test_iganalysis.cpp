#include <catch2/catch_amalgamated.hpp>

#include "branchgen/iganalysis.hpp"
#include "branchgen/semidirect.hpp"

using namespace branchgen;

namespace {

GenSet parse_set(const TreeGroupPtr& g, const std::vector<std::string>& words) {
  std::vector<Element> els;
  els.reserve(words.size());
  for (const auto& w : words) els.push_back(make_element(g, w));
  return GenSet(std::move(els));
}

} // namespace

TEST_CASE("weak generation in the first grigorchuk group") {
  auto g = make_grigorchuk_first();
  QuotientTower tower(g);
  CHECK(weakly_generates(tower, parse_set(g, {"a", "b", "c"})));
  CHECK_FALSE(weakly_generates(tower, parse_set(g, {"a", "b"})));
  CHECK(weakly_generates(tower, parse_set(g, {"a", "b", "c", "d"})));
  CHECK_FALSE(weakly_generates(tower, parse_set(g, {"a"})));
  // d = bc, so {a, b, d} also spans the abelianization.
  CHECK(weakly_generates(tower, parse_set(g, {"a", "b", "d"})));
}

TEST_CASE("generation verdicts carry proof status") {
  auto g = make_grigorchuk_first();
  QuotientTower tg(g);
  auto v = generates(tg, parse_set(g, {"a", "b", "c"}));
  CHECK(v.generates);
  CHECK(v.proven);

  auto v2 = generates(tg, parse_set(g, {"a", "b"}));
  CHECK_FALSE(v2.generates);
  CHECK(v2.proven);

  auto s = make_sunic2({1, 0});
  QuotientTower ts(s);
  auto v3 = generates(ts, parse_set(s, {"a", "b1", "b2"}));
  CHECK(v3.generates);
  CHECK_FALSE(v3.proven); // not in MN: evidence only

  auto v4 = generates(ts, parse_set(s, {"a"}));
  CHECK_FALSE(v4.generates);
}

TEST_CASE("perturb conjugates elementwise") {
  auto g = make_grigorchuk_first();
  QuotientTower tower(g);
  auto s = parse_set(g, {"a", "b", "c"});
  std::vector<Element> ident(3, make_element(g, ""));
  auto same = perturb(s, ident);
  for (std::size_t i = 0; i < 3; ++i) CHECK(equal(same.elements[i], s.elements[i]));

  std::vector<Element> conj = {make_element(g, "b a"), make_element(g, "a d"),
                               make_element(g, "c a b")};
  auto moved = perturb(s, conj);
  CHECK(weakly_generates(tower, moved) == weakly_generates(tower, s));
  // Conjugating back recovers the originals.
  std::vector<Element> inv;
  for (const auto& c : conj) inv.emplace_back(g, g->invert(c.word));
  auto back = perturb(moved, inv);
  for (std::size_t i = 0; i < 3; ++i) CHECK(equal(back.elements[i], s.elements[i]));

  CHECK_THROWS_AS(perturb(s, {ident[0]}), parse_error);
}

TEST_CASE("ig verdicts on the catalogued groups") {
  auto g = make_grigorchuk_first();
  QuotientTower tg(g);
  auto v = ig_verdict(tg, parse_set(g, {"a", "b", "c", "d"}));
  CHECK(v.status == IgStatus::proven_ig);

  auto gs = make_ggs(3, {1, 2});
  QuotientTower tggs(gs);
  auto v2 = ig_verdict(tggs, parse_set(gs, {"a", "b"}));
  CHECK(v2.status == IgStatus::proven_ig);

  auto s = make_sunic2({1, 0});
  QuotientTower ts(s);
  auto v3 = ig_verdict(ts, parse_set(s, {"a", "b1", "b2"}));
  CHECK(v3.status == IgStatus::proven_not_ig);
  REQUIRE(v3.witness.has_value());
  CHECK(v3.witness->certificate);
  CHECK(s->render(v3.witness->conjugator) == "b1 b2 a");

  auto v4 = ig_verdict(tg, parse_set(g, {"a", "b"}));
  CHECK_FALSE(v4.generation.generates);
}

TEST_CASE("sunic witness certificates for several primes") {
  for (auto coeffs : std::vector<std::vector<unsigned>>{{1, 0}, {1, 0, 0}}) {
    auto s = make_sunic2(coeffs);
    for (std::uint64_t q : {3ull, 5ull, 7ull}) {
      CAPTURE(coeffs, q);
      auto w = sunic_non_ig_witness(s, q);
      CHECK(w.certificate);
      CHECK(w.h_gens.size() == coeffs.size() + 1);
    }
  }
  auto torsion = make_sunic2({1, 1});
  CHECK_THROWS_AS(sunic_non_ig_witness(torsion, 3), parse_error);
  auto s = make_sunic2({1, 0});
  CHECK_THROWS_AS(sunic_non_ig_witness(s, 2), parse_error);
}

TEST_CASE("rank reports") {
  auto g = make_grigorchuk_first();
  QuotientTower tg(g);
  auto r = rank_report(tg);
  CHECK(r.d == 3);
  CHECK(r.d_i == 3);
  CHECK(r.d_equals_rank);

  auto gs = make_ggs(3, {1, 2});
  QuotientTower tggs(gs);
  auto r2 = rank_report(tggs);
  CHECK(r2.d == 2);
  CHECK(r2.d_i == 2);
}

TEST_CASE("rational semidirect model: pinned arithmetic") {
  using namespace qqmodel;
  // (q, q') = (1, 3): d = 1 and the conjugate is t(2, 2).
  Elem x = mul(t(), translation(Rat(1), Rat(3)));
  Elem y = conjugate(x, translation(Rat(1), Rat(0)));
  CHECK(y.flip);
  CHECK(y.a == Rat(2));
  CHECK(y.b == Rat(2));
  CHECK(in_h(y));

  // Convention test: (e1,v1)(e2,v2) = (e1e2, v1^(e2) + v2).
  Elem lhs = mul(translation(Rat(1), Rat(2)), t());
  CHECK(lhs.flip);
  CHECK(lhs.a == Rat(2));
  CHECK(lhs.b == Rat(1));

  Elem z = mul(t(), t());
  CHECK_FALSE(z.flip);
  CHECK(z.a == Rat(0));

  // (q, q') = (0, 0) is already in H.
  CHECK(in_h(mul(t(), translation(Rat(0), Rat(0)))));
}

TEST_CASE("remark-style model check") {
  using namespace qqmodel;
  auto r = remark24_check(100, 1);
  CHECK(r.ok());
  CHECK(r.conjugates_land_in_h);
  CHECK(r.batch_generates);
  // Different seeds work too.
  CHECK(remark24_check(50, 7).ok());
  CHECK(remark24_check(1, 42).ok());
}
