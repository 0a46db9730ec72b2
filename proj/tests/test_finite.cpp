#include <catch2/catch_amalgamated.hpp>

#include "branchgen/battery.hpp"
#include "branchgen/smallgroup.hpp"

using namespace branchgen;

namespace {
constexpr std::uint64_t kLatticeCap = 512;
constexpr std::uint64_t kEnumCap = 2048;
} // namespace

TEST_CASE("cayley enumeration") {
  auto g = SmallGroup::enumerate(symmetric3(), kEnumCap);
  CHECK(g.order() == 6);
  CHECK(g.mul(0, 3) == 3);
  CHECK(g.mul(g.inv(2), 2) == 0);
  CHECK(g.generates(g.generator_ids()));
  Caps caps;
  CHECK_THROWS_AS(SmallGroup::enumerate(symmetric4(), 10), cap_error);
}

TEST_CASE("maximal subgroup counts") {
  auto count = [](const PermGroup& q) {
    return SmallGroup::enumerate(q, kEnumCap).maximal_subgroups(kLatticeCap).size();
  };
  CHECK(count(cyclic(6)) == 2);        // orders 2 and 3
  CHECK(count(symmetric3()) == 4);     // A3 and three transposition subgroups
  CHECK(count(dihedral8()) == 3);      // all of order 4
  CHECK(count(alternating4()) == 5);   // V4 and four C3
  CHECK(count(symmetric4()) == 8);     // A4, three D8, four S3
  CHECK(count(abelian_group({2, 2})) == 3);
  CHECK(count(abelian_group({3, 3})) == 4);
}

TEST_CASE("Q8 maximal subgroups are the three normal cyclic fours") {
  auto q8 = SmallGroup::enumerate(quaternion8(), kEnumCap);
  const auto& ms = q8.maximal_subgroups(kLatticeCap);
  REQUIRE(ms.size() == 3);
  for (const auto& m : ms) {
    CHECK(m.count() == 4);
    CHECK(q8.is_normal(m));
  }
  CHECK(q8.all_maximals_normal(kLatticeCap));
}

TEST_CASE("normality detection") {
  auto s3 = SmallGroup::enumerate(symmetric3(), kEnumCap);
  unsigned normal = 0, non_normal = 0;
  for (const auto& m : s3.maximal_subgroups(kLatticeCap))
    (s3.is_normal(m) ? normal : non_normal)++;
  CHECK(normal == 1);     // A3
  CHECK(non_normal == 3); // the transposition subgroups
  CHECK_FALSE(s3.all_maximals_normal(kLatticeCap));
}

TEST_CASE("derived bits match the chain computation") {
  for (const auto& e : battery()) {
    auto g = SmallGroup::enumerate(e.group, kEnumCap);
    CHECK(g.derived_bits().count() == e.group.derived_subgroup().order());
  }
}

TEST_CASE("ig oracle on S3") {
  auto s3 = SmallGroup::enumerate(symmetric3(), kEnumCap);
  // Two transpositions generate but conjugate into the same maximal subgroup.
  std::uint16_t t1 = s3.index_of(Perm::from_cycles("(1 2)", 3));
  std::uint16_t t2 = s3.index_of(Perm::from_cycles("(1 3)", 3));
  REQUIRE(s3.generates({t1, t2}));
  CHECK_FALSE(is_ig_set_finite(s3, {t1, t2}, kLatticeCap));
  // A transposition together with a 3-cycle is an IG-set.
  std::uint16_t r = s3.index_of(Perm::from_cycles("(1 2 3)", 3));
  CHECK(is_ig_set_finite(s3, {t1, r}, kLatticeCap));
  CHECK_THROWS_AS(is_ig_set_finite(s3, {t1}, kLatticeCap), parse_error);
}

TEST_CASE("abelian groups: conjugation cannot break generation") {
  auto v4 = SmallGroup::enumerate(abelian_group({2, 2}), kEnumCap);
  for (std::uint16_t x = 1; x < v4.order(); ++x)
    for (std::uint16_t y = 1; y < v4.order(); ++y)
      if (x != y && v4.generates({x, y}))
        CHECK(is_ig_set_finite(v4, {x, y}, kLatticeCap));
}

TEST_CASE("direct oracle caps") {
  auto s3 = SmallGroup::enumerate(symmetric3(), kEnumCap);
  std::uint16_t t1 = s3.index_of(Perm::from_cycles("(1 2)", 3));
  std::uint16_t r = s3.index_of(Perm::from_cycles("(1 2 3)", 3));
  CHECK_THROWS_AS(is_ig_set_finite_direct(s3, {t1, r}, 2, 3), cap_error);
  CHECK_THROWS_AS(is_ig_set_finite_direct(s3, {t1, r, r, r}, 200, 3), cap_error);
  CHECK(is_ig_set_finite_direct(s3, {t1, r}, 200, 3));
}

TEST_CASE("oracle equivalence on the battery") {
  // Lemma-style equivalence: the lattice oracle agrees with the exhaustive
  // conjugate search on every generating set of size <= 2 here (size 3 is
  // covered by the acceptance suite).
  for (const auto& e : battery()) {
    auto g = SmallGroup::enumerate(e.group, kEnumCap);
    const unsigned n = g.order();
    for (std::uint16_t x = 1; x < n; ++x)
      for (std::uint16_t y = x; y < n; ++y) {
        std::vector<std::uint16_t> s = x == y ? std::vector<std::uint16_t>{x}
                                              : std::vector<std::uint16_t>{x, y};
        if (!g.generates(s)) continue;
        CAPTURE(e.name, x, y);
        CHECK(is_ig_set_finite(g, s, kLatticeCap) ==
              is_ig_set_finite_direct(g, s, 200, 3));
      }
  }
}

TEST_CASE("non-IG witnesses") {
  auto s3 = SmallGroup::enumerate(symmetric3(), kEnumCap);
  auto w = non_ig_witness_finite(s3, kLatticeCap);
  REQUIRE(w.has_value());
  CHECK(s3.generates(*w));
  CHECK_FALSE(is_ig_set_finite(s3, *w, kLatticeCap));

  CHECK_FALSE(non_ig_witness_finite(SmallGroup::enumerate(quaternion8(), kEnumCap), kLatticeCap).has_value());
  CHECK_FALSE(non_ig_witness_finite(SmallGroup::enumerate(abelian_group({3, 3}), kEnumCap), kLatticeCap).has_value());
}

TEST_CASE("lattice cap") {
  auto s4 = SmallGroup::enumerate(symmetric4(), kEnumCap);
  CHECK_THROWS_AS(s4.subgroup_lattice(10), cap_error);
}
