#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "branchgen/catalog.hpp"
#include "branchgen/quotients.hpp"
#include "branchgen/rng.hpp"
#include "branchgen/smallgroup.hpp"
#include "branchgen/tree.hpp"

namespace branchgen {

/// One step of a provenance trail: a claim plus its justification, either
/// "theorem:<id>", "literature:<fact>" or "derived:<oracle>".
struct ProvRecord {
  std::string claim;
  std::string source;
};

/// A candidate generating set inside one group instance.
struct GenSet {
  std::vector<Element> elements;
  std::string label;

  GenSet() = default;
  GenSet(std::vector<Element> els, std::string lbl = "") : elements(std::move(els)), label(std::move(lbl)) {
    if (elements.empty()) throw parse_error("generating set must be nonempty");
    for (const auto& e : elements)
      if (e.group.get() != elements[0].group.get())
        throw parse_error("generating set mixes group instances");
  }

  const TreeGroupPtr& group() const { return elements[0].group; }

  std::vector<Word> words() const {
    std::vector<Word> out;
    out.reserve(elements.size());
    for (const auto& e : elements) out.push_back(e.word);
    return out;
  }
};

/// Elementwise conjugation s -> c^-1 s c.
inline GenSet perturb(const GenSet& s, const std::vector<Element>& conjugators) {
  if (conjugators.size() != s.elements.size())
    throw parse_error("perturb: need one conjugator per element");
  std::vector<Element> out;
  out.reserve(s.elements.size());
  for (std::size_t i = 0; i < s.elements.size(); ++i) {
    const auto& g = s.elements[i].group;
    if (conjugators[i].group.get() != g.get())
      throw parse_error("perturb: conjugator from a different instance");
    out.emplace_back(g, g->conjugate(s.elements[i].word, conjugators[i].word));
  }
  return GenSet(std::move(out), s.label);
}

/// Does the image of S generate the (stabilized, operational) abelianization?
inline bool weakly_generates(QuotientTower& tower, const GenSet& s) {
  return tower.images_generate_abelianization(s.words());
}

struct GenVerdict {
  bool generates = false;
  bool proven = false; ///< proof vs finite-quotient evidence
  std::string method;
  std::vector<ProvRecord> trail;
};

/// Decide generation. For instances known to lie in the MN class this is a
/// theorem-backed equivalence with weak generation; otherwise the verdict is
/// finite-quotient evidence only and says so.
inline GenVerdict generates(QuotientTower& tower, const GenSet& s,
                            unsigned evidence_level = 4) {
  GenVerdict v;
  bool weak = weakly_generates(tower, s);
  const auto& ab = tower.abelianization();
  v.trail.push_back({"images of S generate the abelianization: " + std::string(weak ? "yes" : "no"),
                     "derived:stabilized-level-quotient(levels " +
                         std::to_string(ab.stable_from) + ".." + std::to_string(ab.top_level) + ")"});
  if (tower.group().meta.in_mn.value == TriState::yes) {
    v.generates = weak;
    v.proven = true;
    v.method = "weak generation + Frattini (maximal subgroups all normal)";
    v.trail.push_back({"weak generation is equivalent to generation here",
                       "theorem:mn-weak-generation"});
    v.trail.push_back({"instance lies in the MN class",
                       std::string(to_string(tower.group().meta.in_mn.prov)) + ":" +
                           tower.group().meta.in_mn.note});
    return v;
  }
  bool quotients_ok = weak;
  unsigned tested = 0;
  if (weak) {
    for (unsigned n = 1; n <= evidence_level && quotients_ok; ++n) {
      std::uint64_t deg = 1;
      bool feasible = true;
      for (unsigned i = 0; i < n; ++i) {
        deg *= tower.group().arity();
        if (deg > tower.group().caps().level_degree) feasible = false;
      }
      if (!feasible) break;
      quotients_ok = tower.images_generate_level(s.words(), n);
      tested = n;
    }
  }
  v.generates = weak && quotients_ok;
  v.proven = false;
  v.method = "finite-quotient evidence (not a proof)";
  v.trail.push_back({"images generate every level quotient up to level " + std::to_string(tested) +
                         ": " + (quotients_ok ? "yes" : "no"),
                     "derived:level-quotient-generation"});
  return v;
}

enum class IgStatus { proven_ig, proven_not_ig, evidence_only };

inline const char* to_string(IgStatus s) {
  switch (s) {
    case IgStatus::proven_ig: return "proven-IG";
    case IgStatus::proven_not_ig: return "proven-not-IG";
    default: return "evidence-only";
  }
}

/// Machine-checked part of the non-IG witness for non-torsion binary Sunic
/// instances: conjugating a by (ba)^((q-1)/2) gives (ab)^q b, so the perturbed
/// standard generating set lies inside H(q) = <(ab)^q, b_1, ..., b_m>.
struct SunicWitness {
  std::uint64_t q = 3;
  Word b;                    ///< directed element with psi(b) = (a, b)
  Word conjugator;           ///< (ba)^((q-1)/2), applied to a
  bool certificate = false;  ///< equal(a^conjugator, (ab)^q b)
  std::vector<Element> h_gens;
};

inline SunicWitness sunic_non_ig_witness(const TreeGroupPtr& g, std::uint64_t q) {
  if (!is_odd_prime(q)) throw parse_error("q must be an odd prime");
  auto b = find_b(*g);
  if (!b) throw parse_error("no directed element b with psi(b) = (a, b); instance looks torsion");
  SunicWitness w;
  w.q = q;
  w.b = *b;
  const Word a = g->gen_word("a");
  w.conjugator = g->power(g->mul(*b, a), static_cast<std::int64_t>((q - 1) / 2));
  Word lhs = g->conjugate(a, w.conjugator);
  Word rhs = g->mul(g->power(g->mul(a, *b), static_cast<std::int64_t>(q)), *b);
  w.certificate = g->equal(lhs, rhs);
  w.h_gens = h_q_generators(g, *b, q);
  return w;
}

struct IGVerdict {
  GenVerdict generation;
  bool weakly = false;
  IgStatus status = IgStatus::evidence_only;
  std::vector<ProvRecord> trail;
  std::optional<SunicWitness> witness;
  std::uint64_t trials = 0, failures = 0; ///< perturbation statistics (evidence mode)
};

namespace detail {

inline Word random_word(Rng& rng, const TreeGroup& g, unsigned max_syllables = 8) {
  Word w;
  auto n = static_cast<unsigned>(1 + rng.below(max_syllables));
  for (unsigned i = 0; i < n; ++i)
    w.syllables.push_back({static_cast<unsigned>(rng.below(g.alphabet().size())),
                           rng.coin() ? 1 : -1});
  return g.reduce(w);
}

/// Is every element of S (an involution-word over the directed block) or equal
/// to the rooted generator a? Such sets conjugate into H(q).
inline bool sunic_standard_shape(const TreeGroupPtr& g, const GenSet& s) {
  if (g->arity() != 2 || g->alphabet().has_klein()) return false;
  if (!g->alphabet().try_index("a")) return false;
  const Word a = g->gen_word("a");
  bool has_a = false;
  for (const auto& e : s.elements) {
    bool directed = true;
    for (const auto& syl : e.word.syllables)
      if (!g->alphabet().in_block(syl.gen)) { directed = false; break; }
    if (directed) continue;
    if (g->equal(e.word, a)) { has_a = true; continue; }
    return false;
  }
  return has_a;
}

} // namespace detail

/// Invariable-generation verdict for a set in a tree-family instance.
///
/// proven-IG requires generation to be proven and the instance to lie in MN.
/// proven-not-IG is returned when a concrete conjugate replacement is
/// exhibited that fails to generate: either the Sunic H(q) witness (with its
/// machine-checked identity) or a random perturbation whose images already
/// fail to generate some finite quotient.
inline IGVerdict ig_verdict(QuotientTower& tower, const GenSet& s,
                            std::uint64_t trials = 50, std::uint64_t seed = 1,
                            std::uint64_t witness_q = 3) {
  IGVerdict v;
  const TreeGroupPtr& g = s.group();
  v.weakly = weakly_generates(tower, s);
  v.generation = generates(tower, s);
  if (!v.generation.generates) {
    v.status = IgStatus::evidence_only;
    v.trail.push_back({"set does not generate; IG question is moot",
                       v.generation.proven ? "theorem:mn-weak-generation"
                                           : "derived:level-quotient-generation"});
    return v;
  }
  if (v.generation.proven && g->meta.in_mn.value == TriState::yes) {
    v.status = IgStatus::proven_ig;
    v.trail.push_back({"every generating set of an MN-class group is an IG-set",
                       "theorem:mn-generating-sets"});
    v.trail.push_back({"instance lies in the MN class",
                       std::string(to_string(g->meta.in_mn.prov)) + ":" + g->meta.in_mn.note});
    return v;
  }
  // Sunic-style witness: the standard set {a, b_1, ..., b_m} (or any set of
  // directed words plus a) conjugates into the proper subgroup H(q).
  if (detail::sunic_standard_shape(g, s)) {
    if (auto b = find_b(*g)) {
      auto w = sunic_non_ig_witness(g, witness_q);
      if (w.certificate) {
        v.status = IgStatus::proven_not_ig;
        v.witness = std::move(w);
        v.trail.push_back({"a^((ba)^((q-1)/2)) = (ab)^q b: machine-checked for q = " +
                               std::to_string(witness_q),
                           "derived:section-closure-equality"});
        v.trail.push_back({"the perturbed set lies in H(q) = <(ab)^q, b_1, ..., b_m>",
                           "derived:syllable-inspection"});
        v.trail.push_back({"H(q) is a proper (maximal, infinite-index) subgroup",
                           "literature:non-torsion binary Sunic groups"});
        return v;
      }
    }
  }
  // Evidence mode: random conjugate replacements tested in level quotients.
  Rng rng(seed);
  unsigned level = 4;
  v.trials = trials;
  for (std::uint64_t t = 0; t < trials; ++t) {
    std::vector<Element> conj;
    conj.reserve(s.elements.size());
    for (std::size_t i = 0; i < s.elements.size(); ++i)
      conj.emplace_back(g, detail::random_word(rng, *g));
    GenSet moved = perturb(s, conj);
    if (!tower.images_generate_level(moved.words(), level)) {
      ++v.failures;
      v.status = IgStatus::proven_not_ig;
      v.trail.push_back({"a conjugate replacement fails to generate the level-" +
                             std::to_string(level) + " quotient",
                         "derived:level-quotient-generation"});
      return v;
    }
  }
  v.status = IgStatus::evidence_only;
  v.trail.push_back({"all " + std::to_string(trials) +
                         " random conjugate replacements generate the level-" +
                         std::to_string(level) + " quotient",
                     "derived:randomized-perturbation-trials"});
  return v;
}

struct RankReport {
  unsigned d = 0;                  ///< d(G/G'): invariant-factor count
  std::optional<unsigned> d_i;     ///< d_I(G) when justified
  bool d_equals_rank = false;      ///< whether d(G) = d(G/G') is theorem-backed here
  std::vector<ProvRecord> trail;
};

/// Minimal generating and invariable-generating ranks, as far as the theorems
/// cover them. d is always the rank of the stabilized abelianization; for MN
/// instances this equals d(G), and for the catalogued tree families
/// d_I(G) = d(G).
inline RankReport rank_report(QuotientTower& tower) {
  RankReport r;
  const auto& ab = tower.abelianization();
  r.d = static_cast<unsigned>(ab.invariants.size());
  r.trail.push_back({"abelianization stabilized at levels " + std::to_string(ab.stable_from) +
                         ".." + std::to_string(ab.top_level),
                     "derived:stabilized-level-quotient"});
  const auto& meta = tower.group().meta;
  if (meta.in_mn.value == TriState::yes) {
    r.d_equals_rank = true;
    r.trail.push_back({"d(G) = d(G/G') since maximal subgroups are all normal",
                       "theorem:mn-rank"});
  }
  r.d_i = r.d;
  r.trail.push_back({"d_I(G) = d(G) for the catalogued families",
                     "theorem:catalogue-rank-equality"});
  return r;
}

} // namespace branchgen
