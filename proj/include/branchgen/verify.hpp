#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "branchgen/battery.hpp"
#include "branchgen/catalog.hpp"
#include "branchgen/gengraph.hpp"
#include "branchgen/iganalysis.hpp"
#include "branchgen/quotients.hpp"
#include "branchgen/report.hpp"
#include "branchgen/rng.hpp"
#include "branchgen/semidirect.hpp"
#include "branchgen/smallgroup.hpp"

namespace branchgen::verify {

/// Result of one verification check. Every check pins its own parameters and
/// tolerances; there is nothing to calibrate later.
struct CheckResult {
  std::string id;
  std::string claim;
  bool passed = false;
  std::string detail;
  double ms = 0.0;
};

inline constexpr std::uint64_t kSeed = 20260809;

namespace detail {

inline Word random_word(Rng& rng, const TreeGroup& g, unsigned max_syllables = 8) {
  Word w;
  auto n = static_cast<unsigned>(1 + rng.below(max_syllables));
  for (unsigned i = 0; i < n; ++i)
    w.syllables.push_back({static_cast<unsigned>(rng.below(g.alphabet().size())),
                           rng.coin() ? 1 : -1});
  return g.reduce(w);
}

inline std::vector<std::vector<std::uint16_t>> subsets_up_to_3(unsigned n) {
  std::vector<std::vector<std::uint16_t>> out;
  for (std::uint16_t x = 1; x < n; ++x) {
    out.push_back({x});
    for (std::uint16_t y = static_cast<std::uint16_t>(x + 1); y < n; ++y) {
      out.push_back({x, y});
      for (std::uint16_t z = static_cast<std::uint16_t>(y + 1); z < n; ++z)
        out.push_back({x, y, z});
    }
  }
  return out;
}

} // namespace detail

/// Conjugation identity a^((ba)^((q-1)/2)) = (ab)^q b, q in {3, 5, 7}, in the
/// binary Sunic instances (1,0) and (1,0,1). The identity is formal for
/// involutions a, b; where the instance has a directed b with psi(b) = (a, b)
/// that b is used, otherwise b_1 stands in.
inline CheckResult check_conjugation_identity(const Caps& caps) {
  Stopwatch sw;
  CheckResult r{"s3.conjugation-identity",
                "a^((ba)^((q-1)/2)) = (ab)^q b for q in {3,5,7}", true, "", 0};
  for (auto coeffs : std::vector<std::vector<unsigned>>{{1, 0}, {1, 0, 1}}) {
    auto g = make_sunic2(coeffs, caps);
    Word b = find_b(*g).value_or(g->gen_word("b1"));
    Word a = g->gen_word("a");
    for (std::uint64_t q : {3ull, 5ull, 7ull}) {
      Word conj = g->power(g->mul(b, a), static_cast<std::int64_t>((q - 1) / 2));
      Word lhs = g->conjugate(a, conj);
      Word rhs = g->mul(g->power(g->mul(a, b), static_cast<std::int64_t>(q)), b);
      bool ok = g->trivial(g->mul(lhs, g->invert(rhs)));
      if (!ok) {
        r.passed = false;
        r.detail += g->name() + " q=" + std::to_string(q) + " FAILED; ";
      }
    }
  }
  if (r.passed) r.detail = "6/6 identities verified by section closure";
  r.ms = sw.ms();
  return r;
}

/// find_b returns b1 b2 for coeffs (1,0) (checked against its defining
/// sections) and "not found" for coeffs (1,1).
inline CheckResult check_find_b(const Caps& caps) {
  Stopwatch sw;
  CheckResult r{"s3.find-b", "psi(b) = (a, b) solvable exactly when expected", true, "", 0};
  auto s10 = make_sunic2({1, 0}, caps);
  auto b = find_b(*s10);
  if (!b || s10->render(*b) != "b1 b2" ||
      !s10->equal(s10->section(*b, 0), s10->gen_word("a")) ||
      !s10->equal(s10->section(*b, 1), *b)) {
    r.passed = false;
    r.detail += "coeffs (1,0): wrong or missing b; ";
  }
  if (find_b(*make_sunic2({1, 1}, caps))) {
    r.passed = false;
    r.detail += "coeffs (1,1): unexpected b; ";
  }
  if (r.passed) r.detail = "b = b1 b2 for (1,0); not found for (1,1)";
  r.ms = sw.ms();
  return r;
}

/// 200 random generating sets x 200 random conjugator tuples in the first
/// Grigorchuk group: every perturbation still generates (abelianization
/// method) and still generates the level-4 quotient. Zero failures allowed.
inline CheckResult check_ig_stability(const Caps& caps, unsigned sets = 200,
                                      unsigned trials = 200) {
  Stopwatch sw;
  CheckResult r{"s3.ig-stability",
                "random generating sets of the first Grigorchuk group stay "
                "generating under conjugate replacement",
                true, "", 0};
  auto g = make_grigorchuk_first(caps);
  QuotientTower tower(g);
  Rng rng(kSeed);
  std::uint64_t failures = 0;
  unsigned produced = 0;
  while (produced < sets) {
    auto size = static_cast<std::size_t>(3 + rng.below(4)); // 3..6
    std::vector<Element> els;
    for (std::size_t i = 0; i < size; ++i)
      els.emplace_back(g, detail::random_word(rng, *g));
    GenSet s(std::move(els));
    if (!weakly_generates(tower, s)) continue; // rejection sampling
    ++produced;
    for (unsigned t = 0; t < trials; ++t) {
      std::vector<Element> conj;
      conj.reserve(s.elements.size());
      for (std::size_t i = 0; i < s.elements.size(); ++i)
        conj.emplace_back(g, detail::random_word(rng, *g));
      GenSet moved = perturb(s, conj);
      if (!weakly_generates(tower, moved)) ++failures;
      else if (!tower.images_generate_level(moved.words(), 4)) ++failures;
    }
  }
  r.passed = failures == 0;
  r.detail = std::to_string(sets) + " sets x " + std::to_string(trials) +
             " perturbations, failures: " + std::to_string(failures);
  r.ms = sw.ms();
  return r;
}

/// Witness certificates for q in {3,5,7} on two non-torsion instances
/// (m = 2 and m = 3).
inline CheckResult check_witness_certificates(const Caps& caps) {
  Stopwatch sw;
  CheckResult r{"s3.non-ig-witness",
                "conjugating a into H(q) is machine-checked on non-torsion instances",
                true, "", 0};
  unsigned count = 0;
  for (auto coeffs : std::vector<std::vector<unsigned>>{{1, 0}, {1, 0, 0}}) {
    auto g = make_sunic2(coeffs, caps);
    for (std::uint64_t q : {3ull, 5ull, 7ull}) {
      auto w = sunic_non_ig_witness(g, q);
      if (!w.certificate) {
        r.passed = false;
        r.detail += g->name() + " q=" + std::to_string(q) + " FAILED; ";
      } else {
        ++count;
      }
    }
  }
  if (r.passed)
    r.detail = std::to_string(count) + " certificates (m = 2 and m = 3, q in {3,5,7})";
  r.ms = sw.ms();
  return r;
}

/// MN-class criterion, both directions, on the finite battery: all maximal
/// subgroups normal iff every generating set of size <= 3 is an IG-set.
inline CheckResult check_mn_iff_ig(const Caps& caps) {
  Stopwatch sw;
  CheckResult r{"s2.mn-iff-all-ig",
                "all maximal subgroups normal <=> every generating set (|S| <= 3) is IG",
                true, "", 0};
  for (const auto& e : battery()) {
    auto g = SmallGroup::enumerate(e.group, caps.small_group_order);
    bool mn = g.all_maximals_normal(caps.lattice_order);
    bool all_ig = true;
    std::string culprit;
    for (const auto& s : detail::subsets_up_to_3(g.order())) {
      if (!g.generates(s)) continue;
      if (!is_ig_set_finite(g, s, caps.lattice_order)) {
        all_ig = false;
        culprit = "size-" + std::to_string(s.size());
        break;
      }
    }
    if (mn != all_ig) {
      r.passed = false;
      r.detail += e.name + ": mn=" + (mn ? "yes" : "no") + " but all-IG=" +
                  (all_ig ? "yes" : "no") + "; ";
    }
    // The reverse-direction witness must exist exactly in the non-MN case.
    auto witness = non_ig_witness_finite(g, caps.lattice_order);
    if (witness.has_value() == mn) {
      r.passed = false;
      r.detail += e.name + ": witness/normality mismatch; ";
    }
  }
  if (r.passed) r.detail = "8 battery groups, both directions";
  r.ms = sw.ms();
  return r;
}

/// Lattice IG oracle vs exhaustive conjugate search on every generating set
/// of size <= 3 of every battery group.
inline CheckResult check_oracle_equivalence(const Caps& caps) {
  Stopwatch sw;
  CheckResult r{"s2.oracle-equivalence",
                "maximal-subgroup IG oracle = exhaustive conjugate-replacement oracle",
                true, "", 0};
  std::uint64_t agreed = 0;
  for (const auto& e : battery()) {
    auto g = SmallGroup::enumerate(e.group, caps.small_group_order);
    for (const auto& s : detail::subsets_up_to_3(g.order())) {
      if (!g.generates(s)) continue;
      bool lattice = is_ig_set_finite(g, s, caps.lattice_order);
      bool direct = is_ig_set_finite_direct(g, s, caps.direct_ig_order, caps.direct_ig_set);
      if (lattice != direct) {
        r.passed = false;
        r.detail += e.name + ": disagreement on a size-" + std::to_string(s.size()) + " set; ";
omitted:
        break;
      }
      ++agreed;
    }
  }
  if (r.passed) r.detail = std::to_string(agreed) + " generating sets, oracles agree";
  r.ms = sw.ms();
  return r;
}

/// Nilpotent groups: every generating set of size <= 3 of D8, Q8 and
/// Heisenberg-27 is an IG-set, exhaustively.
inline CheckResult check_nilpotent_ig(const Caps& caps) {
  Stopwatch sw;
  CheckResult r{"s2.nilpotent-all-ig",
                "every generating set of a finite nilpotent group is an IG-set",
                true, "", 0};
  std::uint64_t checked = 0;
  for (const auto& e : battery()) {
    if (e.name != "D8" && e.name != "Q8" && e.name != "Heis27") continue;
    auto g = SmallGroup::enumerate(e.group, caps.small_group_order);
    for (const auto& s : detail::subsets_up_to_3(g.order())) {
      if (!g.generates(s)) continue;
      ++checked;
      if (!is_ig_set_finite(g, s, caps.lattice_order)) {
        r.passed = false;
        r.detail += e.name + " FAILED; ";
      }
    }
  }
  if (r.passed) r.detail = std::to_string(checked) + " generating sets, all IG";
  r.ms = sw.ms();
  return r;
}

/// Exact-rational model of C2 x| (QxQ): 100 samples, seed 1.
inline CheckResult check_rational_model(const Caps&) {
  Stopwatch sw;
  CheckResult r{"s2.rational-model",
                "coset conjugates land in the diagonal subgroup of C2 x| (QxQ)",
                true, "", 0};
  auto res = qqmodel::remark24_check(100, 1);
  r.passed = res.ok();
  r.detail = res.conjugates_land_in_h ? "100/100 conjugates in H" : "conjugate escaped H";
  if (!res.batch_generates) r.detail += "; batch perturbation lost full translation part";
  r.ms = sw.ms();
  return r;
}

/// Weak generation = generation for all |S| <= 2, exhaustively, on the
/// nilpotent battery groups and the level-3 Grigorchuk quotient.
inline CheckResult check_weak_generation_pairs(const Caps& caps) {
  Stopwatch sw;
  CheckResult r{"s4.weak-generation-pairs",
                "<S> = Q <=> images of S generate Q/Q' (|S| <= 2)", true, "", 0};
  std::vector<std::pair<std::string, PermGroup>> groups;
  for (const auto& e : battery())
    if (e.nilpotent) groups.emplace_back(e.name, e.group);
  groups.emplace_back("grigorchuk-level-3", level_quotient(*make_grigorchuk_first(caps), 3));
  for (const auto& [name, q] : groups) {
    auto g = SmallGroup::enumerate(q, caps.small_group_order);
    PermGroup derived = q.derived_subgroup();
    CosetQuotient cq = coset_quotient(q, derived);
    std::vector<std::uint16_t> coset_of(g.order());
    for (std::uint16_t i = 0; i < g.order(); ++i)
      coset_of[i] = cq.coset_of(g.element(i), derived);
    bool ok = true;
    for (std::uint16_t x = 1; x < g.order() && ok; ++x) {
      if (g.generates({x}) != cq.generates({coset_of[x]})) ok = false;
      for (std::uint16_t y = static_cast<std::uint16_t>(x + 1); y < g.order() && ok; ++y)
        if (g.generates({x, y}) != cq.generates({coset_of[x], coset_of[y]})) ok = false;
    }
    if (!ok) {
      r.passed = false;
      r.detail += name + " FAILED; ";
    }
  }
  if (r.passed)
    r.detail = std::to_string(groups.size()) + " groups, all singletons and pairs agree";
  r.ms = sw.ms();
  return r;
}

/// Diameters and total domination: diameter 1 for C2xC2; diameter 2 and
/// gamma_t = 2 for C3xC3 and C5xC5; every lift of every generating pair of
/// C3xC3 totally dominates Delta(Heisenberg-27).
inline CheckResult check_graphs(const Caps& caps) {
  Stopwatch sw;
  CheckResult r{"s4.graph-diameter-domination",
                "Delta diameters and total domination numbers", true, "", 0};
  auto delta_of = [&](const PermGroup& q) {
    return GenGraph::build_gamma(SmallGroup::enumerate(q, caps.small_group_order),
                                 caps.gamma_order)
        .delta();
  };
  auto d22 = delta_of(abelian_group({2, 2}));
  if (!(d22.diameter().kind == DiameterResult::Finite && d22.diameter().value == 1)) {
    r.passed = false;
    r.detail += "C2xC2 diameter != 1; ";
  }
  for (unsigned p : {3u, 5u}) {
    auto d = delta_of(abelian_group({p, p}));
    if (!(d.diameter().kind == DiameterResult::Finite && d.diameter().value == 2)) {
      r.passed = false;
      r.detail += "C" + std::to_string(p) + "xC" + std::to_string(p) + " diameter != 2; ";
    }
    if (d.total_domination(caps.domination_vertices) != 2) {
      r.passed = false;
      r.detail += "gamma_t != 2 for p = " + std::to_string(p) + "; ";
    }
  }
  // Heisenberg-27: its abelianization is C3xC3; all lifts of generating pairs
  // must totally dominate Delta.
  {
    auto q = heisenberg27();
    auto sg = SmallGroup::enumerate(q, caps.small_group_order);
    auto delta = GenGraph::build_gamma(sg, caps.gamma_order).delta();
    PermGroup derived = q.derived_subgroup();
    CosetQuotient cq = coset_quotient(q, derived);
    std::vector<std::uint16_t> coset_of(sg.order());
    for (std::uint16_t i = 0; i < sg.order(); ++i)
      coset_of[i] = cq.coset_of(sg.element(i), derived);
    std::vector<unsigned> pos(sg.order(), 0);
    for (unsigned v = 0; v < delta.num_vertices(); ++v) pos[delta.element_id(v)] = v;
    std::uint64_t pairs = 0, dominating = 0;
    for (std::uint16_t x = 1; x < sg.order(); ++x)
      for (std::uint16_t y = static_cast<std::uint16_t>(x + 1); y < sg.order(); ++y) {
        if (!cq.generates({coset_of[x], coset_of[y]})) continue;
        ++pairs;
        if (delta.totally_dominates({pos[x], pos[y]})) ++dominating;
      }
    if (pairs == 0 || dominating != pairs) {
      r.passed = false;
      r.detail += "Heis27 lifts: " + std::to_string(dominating) + "/" +
                  std::to_string(pairs) + " dominate; ";
    } else {
      r.detail += std::to_string(pairs) + " Heis27 lifted pairs all dominate; ";
    }
  }
  if (r.passed) r.detail += "diameters 1/2/2, gamma_t 2/2";
  r.ms = sw.ms();
  return r;
}

/// Rank reports: (d, d_I) = (3,3) for the first Grigorchuk group, (2,2) for
/// GGS p=3 e=(1,2); invariant factors stabilize across levels {3,4,5} and
/// {2,3,4} respectively.
inline CheckResult check_ranks(const Caps& caps) {
  Stopwatch sw;
  CheckResult r{"s4.rank-reports", "d = d(G/G') and d_I = d on the catalogue", true, "", 0};
  {
    auto g = make_grigorchuk_first(caps);
    QuotientTower tower(g);
    auto rep = rank_report(tower);
    if (rep.d != 3 || rep.d_i != 3) {
      r.passed = false;
      r.detail += "grigorchuk rank != (3,3); ";
    }
    for (unsigned n : {3u, 4u, 5u})
      if (tower.level(n).abelian_invariants() != std::vector<std::uint64_t>{2, 2, 2}) {
        r.passed = false;
        r.detail += "grigorchuk level " + std::to_string(n) + " invariants moved; ";
      }
  }
  {
    auto g = make_ggs(3, {1, 2}, caps);
    QuotientTower tower(g);
    auto rep = rank_report(tower);
    if (rep.d != 2 || rep.d_i != 2) {
      r.passed = false;
      r.detail += "ggs rank != (2,2); ";
    }
    for (unsigned n : {2u, 3u, 4u})
      if (tower.level(n).abelian_invariants() != std::vector<std::uint64_t>{3, 3}) {
        r.passed = false;
        r.detail += "ggs level " + std::to_string(n) + " invariants moved; ";
      }
  }
  if (r.passed) r.detail = "(3,3) and (2,2), invariants stable across three levels";
  r.ms = sw.ms();
  return r;
}

/// Engine soundness: homomorphism law, inverses, and engine-vs-quotient
/// consistency, 500 random cases each with fixed seeds.
inline CheckResult check_engine_soundness(const Caps& caps) {
  Stopwatch sw;
  CheckResult r{"core.engine-soundness",
                "wreath recursion engine: homomorphism, inverses, quotient consistency",
                true, "", 0};
  std::vector<TreeGroupPtr> groups = {make_grigorchuk_first(caps), make_sunic2({1, 0}, caps),
                                      make_ggs(3, {1, 2}, caps)};
  // Homomorphism suite.
  {
    Rng rng(kSeed + 1);
    for (int i = 0; i < 500; ++i) {
      const auto& g = groups[static_cast<std::size_t>(i) % groups.size()];
      Word x = detail::random_word(rng, *g);
      Word y = detail::random_word(rng, *g);
      Word xy = g->mul(x, y);
      Perm px = g->root_perm(x);
      if (!(g->root_perm(xy) == px.then(g->root_perm(y)))) {
        r.passed = false;
        r.detail += "root_perm homomorphism FAILED; ";
        break;
      }
      for (unsigned v = 0; v < g->arity(); ++v)
        if (!g->equal(g->section(xy, v), g->mul(g->section(x, v), g->section(y, px(v))))) {
          r.passed = false;
          r.detail += "section composition FAILED; ";
          break;
        }
    }
  }
  // Inverse suite.
  {
    Rng rng(kSeed + 2);
    for (int i = 0; i < 500 && r.passed; ++i) {
      const auto& g = groups[static_cast<std::size_t>(i) % groups.size()];
      Word x = detail::random_word(rng, *g);
      if (!g->trivial(g->mul(x, g->invert(x)))) {
        r.passed = false;
        r.detail += "g g^-1 not trivial; ";
      }
    }
  }
  // Level-quotient consistency suite.
  {
    Rng rng(kSeed + 3);
    std::map<std::pair<std::size_t, unsigned>, PermGroup> quotients;
    for (int i = 0; i < 500 && r.passed; ++i) {
      auto gi = static_cast<std::size_t>(i) % groups.size();
      const auto& g = groups[gi];
      unsigned max_n = g->arity() == 2 ? 5 : 4;
      auto n = static_cast<unsigned>(1 + rng.below(max_n));
      Word x = detail::random_word(rng, *g);
      auto key = std::make_pair(gi, n);
      auto it = quotients.find(key);
      if (it == quotients.end())
        it = quotients.emplace(key, level_quotient(*g, n)).first;
      if (!(word_on_level(*g, x, n) == eval_in_quotient(it->second, x))) {
        r.passed = false;
        r.detail += "engine/quotient mismatch; ";
      }
    }
  }
  if (r.passed) r.detail = "3 x 500 randomized cases";
  r.ms = sw.ms();
  return r;
}

inline std::vector<CheckResult> run_suite(const std::string& suite, const Caps& caps) {
  std::vector<CheckResult> out;
  auto want = [&](const char* s) { return suite == "all" || suite == s; };
  if (want("s2")) {
    out.push_back(check_mn_iff_ig(caps));
    out.push_back(check_oracle_equivalence(caps));
    out.push_back(check_nilpotent_ig(caps));
    out.push_back(check_rational_model(caps));
  }
  if (want("s3")) {
    out.push_back(check_conjugation_identity(caps));
    out.push_back(check_find_b(caps));
    out.push_back(check_witness_certificates(caps));
    out.push_back(check_ig_stability(caps));
  }
  if (want("s4")) {
    out.push_back(check_weak_generation_pairs(caps));
    out.push_back(check_graphs(caps));
    out.push_back(check_ranks(caps));
  }
  if (suite == "all") out.push_back(check_engine_soundness(caps));
  return out;
}

inline bool all_passed(const std::vector<CheckResult>& rs) {
  for (const auto& r : rs)
    if (!r.passed) return false;
  return true;
}

} // namespace branchgen::verify
