#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "branchgen/caps.hpp"
#include "branchgen/errors.hpp"
#include "branchgen/permgroup.hpp"

namespace branchgen {

/// Fixed-size bitset over group element indices.
struct Bits {
  std::vector<std::uint64_t> w;
  unsigned n = 0;

  explicit Bits(unsigned size = 0) : w((size + 63) / 64, 0), n(size) {}

  void set(unsigned i) { w[i >> 6] |= std::uint64_t{1} << (i & 63); }
  bool test(unsigned i) const { return (w[i >> 6] >> (i & 63)) & 1u; }

  unsigned count() const {
    unsigned c = 0;
    for (auto x : w) c += static_cast<unsigned>(__builtin_popcountll(x));
    return c;
  }

  Bits operator|(const Bits& o) const {
    Bits out = *this;
    for (std::size_t i = 0; i < w.size(); ++i) out.w[i] |= o.w[i];
    return out;
  }

  bool intersects(const Bits& o) const {
    for (std::size_t i = 0; i < w.size(); ++i)
      if (w[i] & o.w[i]) return true;
    return false;
  }

  bool contains_all(const Bits& o) const {
    for (std::size_t i = 0; i < w.size(); ++i)
      if ((o.w[i] & ~w[i]) != 0) return false;
    return true;
  }

  bool operator==(const Bits& o) const { return n == o.n && w == o.w; }
  bool operator<(const Bits& o) const { return w < o.w; }

  std::vector<std::uint16_t> members() const {
    std::vector<std::uint16_t> out;
    for (unsigned i = 0; i < n; ++i)
      if (test(i)) out.push_back(static_cast<std::uint16_t>(i));
    return out;
  }
};

/// Full element enumeration of a small finite permutation group with its
/// Cayley table. Element 0 is the identity; the remaining order is the
/// deterministic BFS order over the generators, so every downstream
/// computation is reproducible.
class SmallGroup {
public:
  static SmallGroup enumerate(const PermGroup& q, std::uint64_t cap) {
    SmallGroup out;
    out.degree_ = q.degree();
    std::unordered_map<Perm, std::uint16_t, PermHash> index;
    out.elements_.push_back(Perm(q.degree()));
    index.emplace(out.elements_[0], 0);
    const auto gens = q.gen_perms();
    for (std::size_t qi = 0; qi < out.elements_.size(); ++qi) {
      for (const auto& g : gens) {
        Perm next = out.elements_[qi].then(g);
        if (index.emplace(next, static_cast<std::uint16_t>(out.elements_.size())).second) {
          if (out.elements_.size() >= cap)
            throw cap_error("group order exceeds enumeration cap " + std::to_string(cap));
          out.elements_.push_back(std::move(next));
        }
      }
    }
    const auto n = static_cast<std::uint16_t>(out.elements_.size());
    out.mult_.assign(n, std::vector<std::uint16_t>(n));
    for (std::uint16_t i = 0; i < n; ++i)
      for (std::uint16_t j = 0; j < n; ++j)
        out.mult_[i][j] = index.at(out.elements_[i].then(out.elements_[j]));
    out.inv_.resize(n);
    for (std::uint16_t i = 0; i < n; ++i)
      for (std::uint16_t j = 0; j < n; ++j)
        if (out.mult_[i][j] == 0) out.inv_[i] = j;
    for (const auto& g : gens) out.gen_ids_.push_back(index.at(g));
    out.build_classes();
    return out;
  }

  unsigned order() const { return static_cast<unsigned>(elements_.size()); }
  std::uint32_t degree() const { return degree_; }
  const Perm& element(std::uint16_t i) const { return elements_[i]; }
  const std::vector<std::uint16_t>& generator_ids() const { return gen_ids_; }

  std::uint16_t mul(std::uint16_t i, std::uint16_t j) const { return mult_[i][j]; }
  std::uint16_t inv(std::uint16_t i) const { return inv_[i]; }
  std::uint16_t conj(std::uint16_t x, std::uint16_t g) const {
    return mult_[mult_[inv_[g]][x]][g];
  }

  std::uint16_t index_of(const Perm& p) const {
    for (std::uint16_t i = 0; i < order(); ++i)
      if (elements_[i] == p) return i;
    throw parse_error("permutation is not an element of the enumerated group");
  }

  const Bits& conjugacy_class(std::uint16_t x) const { return classes_[class_of_[x]]; }

  /// Subgroup generated by a seed set, as a bitset closure over the table.
  Bits closure(const std::vector<std::uint16_t>& seed) const {
    Bits in(order());
    std::vector<std::uint16_t> frontier;
    in.set(0);
    frontier.push_back(0);
    for (auto s : seed)
      if (!in.test(s)) {
        in.set(s);
        frontier.push_back(s);
      }
    for (std::size_t qi = 0; qi < frontier.size(); ++qi) {
      for (auto s : seed) {
        std::uint16_t t = mult_[frontier[qi]][s];
        if (!in.test(t)) {
          in.set(t);
          frontier.push_back(t);
        }
        t = mult_[s][frontier[qi]];
        if (!in.test(t)) {
          in.set(t);
          frontier.push_back(t);
        }
      }
    }
    return in;
  }

  bool generates(const std::vector<std::uint16_t>& seed) const {
    return closure(seed).count() == order();
  }

  /// Derived subgroup as a bitset: all commutators generate it and are closed
  /// under conjugation, so one closure suffices.
  const Bits& derived_bits() const {
    if (!derived_) {
      std::set<std::uint16_t> comms;
      for (std::uint16_t x = 0; x < order(); ++x)
        for (std::uint16_t y = 0; y < order(); ++y)
          comms.insert(mult_[mult_[inv_[x]][inv_[y]]][mult_[x][y]]);
      derived_ = closure({comms.begin(), comms.end()});
    }
    return *derived_;
  }

  bool is_normal(const Bits& sub) const {
    for (auto g : gen_ids_)
      for (auto x : sub.members())
        if (!sub.test(conj(x, g))) return false;
    return true;
  }

  /// Every subgroup, via join closure from the cyclic subgroups. Guarded by
  /// the lattice order cap.
  const std::vector<Bits>& subgroup_lattice(std::uint64_t order_cap) const {
    if (order() > order_cap)
      throw cap_error("subgroup lattice needs order <= " + std::to_string(order_cap));
    if (!lattice_.empty()) return lattice_;
    std::set<Bits> subs;
    Bits triv(order());
    triv.set(0);
    subs.insert(triv);
    for (std::uint16_t x = 1; x < order(); ++x) subs.insert(closure({x}));
    bool grew = true;
    while (grew) {
      grew = false;
      std::vector<Bits> cur(subs.begin(), subs.end());
      for (std::size_t i = 0; i < cur.size(); ++i)
        for (std::size_t j = i + 1; j < cur.size(); ++j) {
          if (cur[i].contains_all(cur[j]) || cur[j].contains_all(cur[i])) continue;
          Bits join = closure((cur[i] | cur[j]).members());
          if (subs.insert(std::move(join)).second) grew = true;
        }
    }
    lattice_.assign(subs.begin(), subs.end());
    return lattice_;
  }

  /// All maximal proper subgroups.
  const std::vector<Bits>& maximal_subgroups(std::uint64_t order_cap) const {
    if (!maximals_.empty()) return maximals_;
    const auto& subs = subgroup_lattice(order_cap);
    for (const auto& h : subs) {
      if (h.count() == order()) continue;
      bool maximal = true;
      for (const auto& k : subs) {
        if (k.count() == order() || k == h) continue;
        if (k.contains_all(h) && k.count() > h.count()) {
          maximal = false;
          break;
        }
      }
      if (maximal) maximals_.push_back(h);
    }
    return maximals_;
  }

  /// Is every maximal subgroup normal?
  bool all_maximals_normal(std::uint64_t order_cap) const {
    for (const auto& m : maximal_subgroups(order_cap))
      if (!is_normal(m)) return false;
    return true;
  }

  /// Greedy small generating subset of a subgroup given as a bitset.
  std::vector<std::uint16_t> generating_subset(const Bits& sub) const {
    std::vector<std::uint16_t> gens;
    Bits have(order());
    have.set(0);
    for (auto x : sub.members()) {
      if (have.test(x)) continue;
      gens.push_back(x);
      have = closure(gens);
      if (have == sub) break;
    }
    return gens;
  }

private:
  void build_classes() {
    const auto n = static_cast<std::uint16_t>(order());
    class_of_.assign(n, 0xffff);
    for (std::uint16_t x = 0; x < n; ++x) {
      if (class_of_[x] != 0xffff) continue;
      auto id = static_cast<std::uint16_t>(classes_.size());
      Bits cls(n);
      for (std::uint16_t g = 0; g < n; ++g) cls.set(conj(x, g));
      for (auto m : cls.members()) class_of_[m] = id;
      classes_.push_back(std::move(cls));
    }
  }

  std::uint32_t degree_ = 0;
  std::vector<Perm> elements_;
  std::vector<std::vector<std::uint16_t>> mult_;
  std::vector<std::uint16_t> inv_;
  std::vector<std::uint16_t> gen_ids_;
  std::vector<Bits> classes_;
  std::vector<std::uint16_t> class_of_;
  mutable std::optional<Bits> derived_;
  mutable std::vector<Bits> lattice_;
  mutable std::vector<Bits> maximals_;
};

/// IG test through the maximal-subgroup lattice: a generating set fails to be
/// an IG-set exactly when some maximal subgroup meets the conjugacy class of
/// every member.
inline bool is_ig_set_finite(const SmallGroup& g, const std::vector<std::uint16_t>& s,
                             std::uint64_t lattice_cap) {
  if (!g.generates(s)) throw parse_error("is_ig_set_finite: set does not generate");
  for (const auto& m : g.maximal_subgroups(lattice_cap)) {
    bool all_meet = true;
    for (auto x : s)
      if (!g.conjugacy_class(x).intersects(m)) {
        all_meet = false;
        break;
      }
    if (all_meet) return false;
  }
  return true;
}

/// Exhaustive IG test: every conjugate replacement must generate a subgroup
/// containing the derived subgroup (equivalent to generating the whole group
/// when the original set generates).
inline bool is_ig_set_finite_direct(const SmallGroup& g, const std::vector<std::uint16_t>& s,
                                    std::uint64_t order_cap, std::uint64_t set_cap) {
  if (g.order() > order_cap)
    throw cap_error("direct IG oracle needs order <= " + std::to_string(order_cap));
  if (s.size() > set_cap)
    throw cap_error("direct IG oracle needs |S| <= " + std::to_string(set_cap));
  if (!g.generates(s)) throw parse_error("is_ig_set_finite_direct: set does not generate");
  const Bits& derived = g.derived_bits();
  std::vector<std::vector<std::uint16_t>> classes;
  classes.reserve(s.size());
  for (auto x : s) classes.push_back(g.conjugacy_class(x).members());
  std::vector<std::size_t> pick(s.size(), 0);
  while (true) {
    std::vector<std::uint16_t> choice;
    choice.reserve(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) choice.push_back(classes[i][pick[i]]);
    if (!g.closure(choice).contains_all(derived)) return false;
    std::size_t i = 0;
    for (; i < s.size(); ++i) {
      if (++pick[i] < classes[i].size()) break;
      pick[i] = 0;
    }
    if (i == s.size()) break;
  }
  return true;
}

/// Witness that a group with a non-normal maximal subgroup has a generating
/// set that is not an IG-set: generators of such an M together with a
/// conjugate x^g of some x in M that left M. Returns nothing when all maximal
/// subgroups are normal.
inline std::optional<std::vector<std::uint16_t>> non_ig_witness_finite(
    const SmallGroup& g, std::uint64_t lattice_cap) {
  for (const auto& m : g.maximal_subgroups(lattice_cap)) {
    if (g.is_normal(m)) continue;
    for (auto x : m.members()) {
      if (x == 0) continue;
      for (std::uint16_t c = 0; c < g.order(); ++c) {
        std::uint16_t y = g.conj(x, c);
        if (m.test(y)) continue;
        std::vector<std::uint16_t> witness = g.generating_subset(m);
        witness.push_back(y);
        if (!g.generates(witness)) continue;
        if (!is_ig_set_finite(g, witness, lattice_cap)) return witness;
      }
    }
  }
  return std::nullopt;
}

} // namespace branchgen
