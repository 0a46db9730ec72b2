#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "branchgen/errors.hpp"
#include "branchgen/permgroup.hpp"
#include "branchgen/tree.hpp"

namespace branchgen {

namespace detail {

// Images of the p^n level-n vertices under a word, mixed-radix indexed with
// the first path symbol most significant. Sections repeat heavily, so results
// are memoized per (canonical word, level).
class LevelImageBuilder {
public:
  explicit LevelImageBuilder(const TreeGroup& g) : g_(g) {}

  std::vector<std::uint32_t> images(const Word& w, unsigned n) {
    Word r = g_.reduce(w);
    if (n == 0) return {0};
    std::string key = g_.render_key(r) + "@" + std::to_string(n);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    const unsigned p = g_.arity();
    std::uint64_t block = 1;
    for (unsigned i = 0; i + 1 < n; ++i) block *= p;
    Perm root = g_.root_perm(r);
    std::vector<std::uint32_t> out(block * p);
    for (unsigned v = 0; v < p; ++v) {
      auto sub = images(g_.section(r, v), n - 1);
      for (std::uint64_t t = 0; t < block; ++t)
        out[v * block + t] = static_cast<std::uint32_t>(root(v) * block + sub[t]);
    }
    memo_.emplace(std::move(key), out);
    return out;
  }

private:
  const TreeGroup& g_;
  std::unordered_map<std::string, std::vector<std::uint32_t>> memo_;
};

} // namespace detail

/// Congruence quotient at level n: each generator as a permutation of the
/// p^n level-n vertices.
inline PermGroup level_quotient(const TreeGroup& g, unsigned n) {
  std::uint64_t deg = 1;
  for (unsigned i = 0; i < n; ++i) {
    deg *= g.arity();
    if (deg > g.caps().level_degree)
      throw cap_error("level quotient degree exceeds cap " +
                      std::to_string(g.caps().level_degree));
  }
  detail::LevelImageBuilder builder(g);
  std::vector<std::pair<std::string, Perm>> gens;
  for (unsigned i = 0; i < g.alphabet().size(); ++i)
    gens.emplace_back(g.alphabet().name(i),
                      Perm::from_images(builder.images(Word::gen(i), n)));
  return PermGroup(static_cast<std::uint32_t>(deg), std::move(gens));
}

/// Permutation induced by an arbitrary word on level n (computed through the
/// engine; used to cross-check the quotient homomorphism).
inline Perm word_on_level(const TreeGroup& g, const Word& w, unsigned n) {
  detail::LevelImageBuilder builder(g);
  return Perm::from_images(builder.images(w, n));
}

/// Evaluate a word in a level quotient from the generator images.
inline Perm eval_in_quotient(const PermGroup& q, const Word& w) {
  Perm acc(q.degree());
  const auto& gens = q.generators();
  for (const auto& s : w.syllables) {
    if (s.gen >= gens.size()) throw parse_error("word generator outside quotient");
    acc = acc.then(gens[s.gen].second.pow(s.exp));
  }
  return acc;
}

/// Cache of level quotients of one instance, plus the operationally defined
/// abelianization: invariant factors of level-n quotients once three
/// consecutive levels agree. Not thread-safe; use one tower per worker.
class QuotientTower {
public:
  explicit QuotientTower(TreeGroupPtr g) : g_(std::move(g)) {}

  const TreeGroup& group() const { return *g_; }
  const TreeGroupPtr& group_ptr() const { return g_; }

  const PermGroup& level(unsigned n) {
    auto it = levels_.find(n);
    if (it == levels_.end())
      it = levels_.emplace(n, level_quotient(*g_, n)).first;
    return it->second;
  }

  struct Abelianization {
    unsigned stable_from = 0;  ///< first level of the three-level agreement
    unsigned top_level = 0;    ///< deepest level used for decisions
    std::vector<std::uint64_t> invariants;
    std::shared_ptr<PermGroup> quotient; ///< level quotient at top_level
    std::shared_ptr<PermGroup> derived;  ///< its derived subgroup
    CosetQuotient cosets;                ///< Q/Q' as a concrete small group
  };

  /// Throws cap_error when no three consecutive levels agree below the cap.
  const Abelianization& abelianization() {
    if (ab_) return *ab_;
    std::map<unsigned, std::vector<std::uint64_t>> inv;
    auto invariants_at = [&](unsigned n) -> const std::vector<std::uint64_t>& {
      auto it = inv.find(n);
      if (it == inv.end()) it = inv.emplace(n, level(n).abelian_invariants()).first;
      return it->second;
    };
    const unsigned max_level = max_feasible_level();
    for (unsigned n = 1; n + 2 <= max_level; ++n) {
      if (invariants_at(n) == invariants_at(n + 1) &&
          invariants_at(n) == invariants_at(n + 2)) {
        Abelianization ab;
        ab.stable_from = n;
        ab.top_level = n + 2;
        ab.invariants = invariants_at(n);
        ab.quotient = std::make_shared<PermGroup>(level(n + 2));
        ab.derived = std::make_shared<PermGroup>(ab.quotient->derived_subgroup());
        ab.cosets = coset_quotient(*ab.quotient, *ab.derived);
        ab_ = std::move(ab);
        return *ab_;
      }
    }
    throw cap_error("abelianization did not stabilize within the level cap");
  }

  /// Image of a word in the stabilized abelianization (a coset id).
  std::uint16_t abelian_image(const Word& w) {
    const auto& ab = abelianization();
    return ab.cosets.coset_of(eval_in_quotient(*ab.quotient, w), *ab.derived);
  }

  bool images_generate_abelianization(const std::vector<Word>& words) {
    const auto& ab = abelianization();
    std::vector<std::uint16_t> ids;
    ids.reserve(words.size());
    for (const auto& w : words) ids.push_back(abelian_image(w));
    return ab.cosets.generates(std::move(ids));
  }

  /// Do the images of the words generate the full level-n quotient?
  bool images_generate_level(const std::vector<Word>& words, unsigned n) {
    const PermGroup& q = level(n);
    std::vector<Perm> imgs;
    imgs.reserve(words.size());
    for (const auto& w : words) imgs.push_back(eval_in_quotient(q, w));
    return subgroup_generated(q, imgs).order() == q.order();
  }

private:
  unsigned max_feasible_level() const {
    std::uint64_t deg = 1;
    unsigned n = 0;
    while (deg * g_->arity() <= g_->caps().level_degree && n < 24) {
      deg *= g_->arity();
      ++n;
    }
    // Keep the default search shallow: stabilizer chains on degrees past ~2^12
    // would dominate runtime long before the degree cap bites.
    const unsigned hard_max = 12;
    return n < hard_max ? n : hard_max;
  }

  TreeGroupPtr g_;
  std::map<unsigned, PermGroup> levels_;
  std::optional<Abelianization> ab_;
};

} // namespace branchgen
