#pragma once

#include <cstdint>
#include <deque>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "branchgen/caps.hpp"
#include "branchgen/errors.hpp"
#include "branchgen/perm.hpp"
#include "branchgen/words.hpp"

namespace branchgen {

enum class Provenance { theorem, literature, derived, unknown };

inline const char* to_string(Provenance p) {
  switch (p) {
    case Provenance::theorem: return "theorem";
    case Provenance::literature: return "literature";
    case Provenance::derived: return "derived";
    default: return "unknown";
  }
}

enum class TriState { yes, no, unknown };

inline const char* to_string(TriState t) {
  switch (t) {
    case TriState::yes: return "yes";
    case TriState::no: return "no";
    default: return "unknown";
  }
}

/// A boolean-with-provenance metadata flag.
struct Flag {
  TriState value = TriState::unknown;
  Provenance prov = Provenance::unknown;
  std::string note;
};

struct Metadata {
  Flag in_mn;
  Flag torsion;
  Flag branch;
  /// Declared abelianization (invariant factors), when known ahead of any
  /// level-quotient computation.
  std::optional<std::vector<std::uint64_t>> abelian_invariants;
  Provenance abelian_prov = Provenance::unknown;
  std::string abelian_note;
};

/// Wreath recursion: each generator decomposes as a root permutation of the
/// p subtrees followed by one section word per subtree.
struct GeneratorRule {
  Perm root;
  std::vector<Word> sections; // arity entries
};

struct RecursionRules {
  unsigned arity = 2;
  std::vector<GeneratorRule> rules; // indexed like the alphabet
};

struct Portrait {
  unsigned depth = 0;
  /// Root permutations of all sections at levels 0..depth-1, keyed by vertex
  /// path (0-based symbols; the root is the empty path).
  std::map<std::vector<unsigned>, Perm> labels;
};

/// A self-similar group instance: alphabet, recursion rules, caps and
/// metadata. Instances are immutable once built (the catalogue fills metadata
/// during construction) and are shared through shared_ptr<const TreeGroup>.
///
/// The word problem is decided by section closure: a word is trivial iff every
/// word in the closure of {w} under first-level sections has trivial root
/// permutation. For contracting groups the closure is finite; the caps convert
/// non-termination on other inputs into budget_error.
class TreeGroup {
public:
  TreeGroup(std::string name, Alphabet alphabet, RecursionRules rules, Caps caps = {})
      : name_(std::move(name)),
        alphabet_(std::move(alphabet)),
        rules_(std::move(rules)),
        caps_(caps) {
    if (rules_.arity < 2) throw parse_error("arity must be at least 2");
    if (rules_.rules.size() != alphabet_.size())
      throw parse_error("recursion rules must cover every generator");
    for (const auto& r : rules_.rules) {
      if (r.root.degree() != rules_.arity || r.sections.size() != rules_.arity)
        throw parse_error("recursion rule has wrong arity");
      for (const auto& s : r.sections)
        for (const auto& syl : s.syllables)
          if (syl.gen >= alphabet_.size())
            throw parse_error("section word references unknown generator");
    }
  }

  const std::string& name() const { return name_; }
  const Alphabet& alphabet() const { return alphabet_; }
  const RecursionRules& rules() const { return rules_; }
  unsigned arity() const { return rules_.arity; }
  const Caps& caps() const { return caps_; }

  Metadata meta; // filled by catalogue builders, treated as immutable after

  Word reduce(Word w) const { return branchgen::reduce(std::move(w), alphabet_); }
  Word parse(std::string_view text) const { return parse_word(text, alphabet_); }
  Word invert(const Word& w) const { return branchgen::invert(w, alphabet_); }
  Word mul(const Word& x, const Word& y) const { return branchgen::mul(x, y, alphabet_); }
  Word conjugate(const Word& w, const Word& c) const { return branchgen::conjugate(w, c, alphabet_); }
  Word power(const Word& w, std::int64_t k) const { return branchgen::power(w, k, alphabet_); }
  std::string render(const Word& w) const { return branchgen::render(w, alphabet_); }
  Word gen_word(std::string_view name) const { return Word::gen(alphabet_.index(name)); }

  /// Permutation induced on the first level, composing syllable root
  /// permutations left to right.
  Perm root_perm(const Word& w) const {
    Perm acc(arity());
    for (const auto& s : w.syllables)
      acc = acc.then(rules_.rules[s.gen].root.pow(s.exp));
    return acc;
  }

  /// Section of w at the first-level vertex i (0-based), reduced.
  Word section(const Word& w, unsigned i) const {
    if (i >= arity()) throw parse_error("vertex symbol out of range");
    Word out;
    unsigned cur = i;
    for (const auto& s : w.syllables) append_syllable_section(out, s, cur);
    return enforce_length(reduce(std::move(out)));
  }

  /// Section at a vertex path (empty path = the element itself).
  Word section_path(const Word& w, const std::vector<unsigned>& path) const {
    Word cur = reduce(w);
    for (unsigned v : path) cur = section(cur, v);
    return cur;
  }

  /// Exact triviality test by section closure with memoization.
  bool trivial(const Word& w) const {
    Word w0 = reduce(w);
    if (w0.empty()) return true;
    const std::string key0 = render_key(w0);
    if (auto c = cache_lookup(key0)) return *c;

    std::deque<std::pair<std::string, Word>> queue;
    std::unordered_set<std::string> seen;
    std::vector<std::string> members;
    queue.emplace_back(key0, w0);
    seen.insert(key0);

    while (!queue.empty()) {
      auto [key, word] = std::move(queue.front());
      queue.pop_front();
      if (auto c = cache_lookup(key)) {
        if (*c) continue; // known trivial: nothing nontrivial below it
        cache_store(key0, false);
        return false;
      }
      if (!root_perm(word).is_identity()) {
        cache_store(key, false);
        cache_store(key0, false);
        return false;
      }
      members.push_back(key);
      for (unsigned i = 0; i < arity(); ++i) {
        Word s = section(word, i);
        if (s.empty()) continue;
        std::string skey = render_key(s);
        if (!seen.insert(skey).second) continue;
        if (seen.size() > caps_.closure_words)
          throw budget_error("section closure exceeded " +
                             std::to_string(caps_.closure_words) +
                             " words; input may not contract");
        queue.emplace_back(std::move(skey), std::move(s));
      }
    }
    for (const auto& m : members) cache_store(m, true);
    return true;
  }

  bool equal(const Word& x, const Word& y) const { return trivial(mul(x, invert(y))); }

  /// Least k <= cap with w^k trivial, or nullopt.
  std::optional<std::uint64_t> order_bounded(const Word& w, std::uint64_t cap) const {
    Word acc = reduce(w);
    for (std::uint64_t k = 1; k <= cap; ++k) {
      if (trivial(acc)) return k;
      acc = mul(acc, w);
    }
    return std::nullopt;
  }

  /// Sound one-sided certificate of infinite order. Returns true only when
  /// the root action of w has even order and some power w^(2^k), k >= 1,
  /// fixes the first level with a section equal to w itself. A finite order n
  /// would have to be even (it maps onto the root action) yet coprime to 2
  /// (the section's order n divides |w^(2^k)| = n / gcd(n, 2^k)), so no
  /// finite order exists. False only means no certificate was found.
  bool certify_infinite_order(const Word& w, unsigned max_doublings = 6) const {
    Word g = reduce(w);
    if (g.empty()) return false;
    if (root_perm(g).order() % 2 != 0) return false;
    Word h = g;
    for (unsigned k = 1; k <= max_doublings; ++k) {
      h = mul(h, h);
      if (h.empty()) return false; // finite 2-power order
      if (!root_perm(h).is_identity()) continue;
      for (unsigned i = 0; i < arity(); ++i)
        if (equal(section(h, i), g)) return true;
    }
    return false;
  }

  Portrait portrait(const Word& w, unsigned depth) const {
    Portrait out;
    out.depth = depth;
    if (depth == 0) return out;
    struct Item {
      std::vector<unsigned> path;
      Word word;
    };
    std::deque<Item> queue;
    queue.push_back({{}, reduce(w)});
    while (!queue.empty()) {
      Item it = std::move(queue.front());
      queue.pop_front();
      out.labels.emplace(it.path, root_perm(it.word));
      if (it.path.size() + 1 < depth) {
        for (unsigned i = 0; i < arity(); ++i) {
          auto path = it.path;
          path.push_back(i);
          queue.push_back({std::move(path), section(it.word, i)});
        }
      }
    }
    return out;
  }

  /// Canonical cache key (the rendered canonical word).
  std::string render_key(const Word& w) const { return branchgen::render(w, alphabet_); }

private:
  Word enforce_length(Word w) const {
    if (w.size() > caps_.word_syllables)
      throw budget_error("intermediate word exceeded " +
                         std::to_string(caps_.word_syllables) + " syllables");
    return w;
  }

  // Appends the section of one syllable at vertex `cur` and advances `cur`.
  void append_syllable_section(Word& out, const Syllable& s, unsigned& cur) const {
    const GeneratorRule& rule = rules_.rules[s.gen];
    const Int& e = s.exp;
    if (e >= -kIterThreshold && e <= kIterThreshold) {
      auto n = static_cast<std::int64_t>(e);
      if (n >= 0) {
        for (std::int64_t t = 0; t < n; ++t) {
          append(out, rule.sections[cur]);
          cur = rule.root(cur);
        }
      } else {
        Perm inv = rule.root.inverse();
        for (std::int64_t t = 0; t < -n; ++t) {
          cur = inv(cur);
          append_inverse(out, rule.sections[cur]);
        }
      }
      return;
    }
    // Huge symbolic exponents: handle the structured cases exactly.
    bool all_trivial = true;
    for (const auto& sec : rule.sections)
      if (!sec.empty()) { all_trivial = false; break; }
    if (all_trivial) { // rooted generator
      cur = static_cast<unsigned>(rule.root.pow(e)(cur));
      return;
    }
    if (rule.root.is_identity()) {
      const Word& sec = rule.sections[cur];
      if (sec.empty()) return;
      if (sec.size() == 1) {
        out.syllables.push_back({sec.syllables[0].gen, sec.syllables[0].exp * e});
        return;
      }
    }
    throw budget_error("exponent too large to take sections of generator '" +
                       alphabet_.name(s.gen) + "'");
  }

  void append(Word& out, const Word& w) const {
    out.syllables.insert(out.syllables.end(), w.syllables.begin(), w.syllables.end());
    if (out.size() > 2 * caps_.word_syllables)
      throw budget_error("intermediate word exceeded the syllable budget");
  }

  void append_inverse(Word& out, const Word& w) const {
    for (auto it = w.syllables.rbegin(); it != w.syllables.rend(); ++it)
      out.syllables.push_back({it->gen, -it->exp});
    if (out.size() > 2 * caps_.word_syllables)
      throw budget_error("intermediate word exceeded the syllable budget");
  }

  std::optional<bool> cache_lookup(const std::string& key) const {
    std::lock_guard<std::mutex> lock(cache_mu_);
    auto it = trivial_cache_.find(key);
    if (it == trivial_cache_.end()) return std::nullopt;
    return it->second;
  }

  void cache_store(const std::string& key, bool value) const {
    std::lock_guard<std::mutex> lock(cache_mu_);
    trivial_cache_.emplace(key, value);
  }

  static constexpr std::int64_t kIterThreshold = 1 << 14;

  std::string name_;
  Alphabet alphabet_;
  RecursionRules rules_;
  Caps caps_;

  // Triviality verdicts keyed by canonical word; per instance, never shared.
  mutable std::unordered_map<std::string, bool> trivial_cache_;
  mutable std::mutex cache_mu_;
};

using TreeGroupPtr = std::shared_ptr<const TreeGroup>;

/// A group element: a reduced word tied to its group instance.
struct Element {
  TreeGroupPtr group;
  Word word;

  Element() = default;
  Element(TreeGroupPtr g, Word w) : group(std::move(g)), word(group->reduce(std::move(w))) {}
};

inline Element make_element(const TreeGroupPtr& g, std::string_view text) {
  return Element(g, g->parse(text));
}

inline Perm root_perm(const Element& e) { return e.group->root_perm(e.word); }

inline Element section(const Element& e, const std::vector<unsigned>& path) {
  return Element(e.group, e.group->section_path(e.word, path));
}

inline bool is_trivial(const Element& e) { return e.group->trivial(e.word); }

inline bool equal(const Element& x, const Element& y) {
  if (x.group.get() != y.group.get())
    throw parse_error("elements belong to different group instances");
  return x.group->equal(x.word, y.word);
}

inline std::optional<std::uint64_t> order_bounded(const Element& e, std::uint64_t cap) {
  return e.group->order_bounded(e.word, cap);
}

inline bool certify_infinite_order(const Element& e) {
  return e.group->certify_infinite_order(e.word);
}

inline Portrait portrait(const Element& e, unsigned depth) {
  return e.group->portrait(e.word, depth);
}

inline Element operator*(const Element& x, const Element& y) {
  if (x.group.get() != y.group.get())
    throw parse_error("elements belong to different group instances");
  return Element(x.group, x.group->mul(x.word, y.word));
}

} // namespace branchgen
