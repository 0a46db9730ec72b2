#pragma once

#include <cstdint>
#include <cstdlib>
#include <deque>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "branchgen/errors.hpp"
#include "branchgen/perm.hpp"

namespace branchgen {

/// Deterministic stabilizer chain (Schreier-Sims without randomization, so
/// that orders, membership and everything derived from them reproduce
/// bit-for-bit across runs).
class StabChain {
public:
  StabChain(std::uint32_t degree, const std::vector<Perm>& gens) : degree_(degree) {
    for (const auto& g : gens) {
      if (g.degree() != degree) throw parse_error("generator degree mismatch");
      insert(g, 0);
    }
  }

  std::uint64_t order() const {
    std::uint64_t o = 1;
    for (const auto& lvl : levels_) o *= lvl.orbit.size();
    return o;
  }

  bool contains(const Perm& p) const {
    if (p.degree() != degree_) return false;
    auto [residue, level] = strip(p, 0);
    return level == levels_.size() && residue.is_identity();
  }

  void add_generator(const Perm& g) {
    if (g.degree() != degree_) throw parse_error("generator degree mismatch");
    insert(g, 0);
  }

  std::uint32_t degree() const { return degree_; }

private:
  struct Level {
    std::uint32_t beta;
    std::vector<Perm> gens;
    // Orbit of beta in discovery order; transversal[v] maps beta to v.
    std::vector<std::uint32_t> orbit;
    std::unordered_map<std::uint32_t, Perm> transversal;
  };

  // Sift p through levels [from, end); returns the residue and the level at
  // which sifting stopped.
  std::pair<Perm, std::size_t> strip(Perm p, std::size_t from) const {
    for (std::size_t i = from; i < levels_.size(); ++i) {
      std::uint32_t target = p(levels_[i].beta);
      auto it = levels_[i].transversal.find(target);
      if (it == levels_[i].transversal.end()) return {std::move(p), i};
      p = p.then(it->second.inverse());
    }
    return {std::move(p), levels_.size()};
  }

  void recompute_orbit(Level& lvl) const {
    lvl.orbit.clear();
    lvl.transversal.clear();
    lvl.orbit.push_back(lvl.beta);
    lvl.transversal.emplace(lvl.beta, Perm(degree_));
    for (std::size_t qi = 0; qi < lvl.orbit.size(); ++qi) {
      std::uint32_t v = lvl.orbit[qi];
      const Perm& u = lvl.transversal.at(v);
      for (const auto& s : lvl.gens) {
        std::uint32_t w = s(v);
        if (!lvl.transversal.count(w)) {
          lvl.orbit.push_back(w);
          lvl.transversal.emplace(w, u.then(s));
        }
      }
    }
  }

  void insert(const Perm& g, std::size_t level) {
    if (g.is_identity()) return;
    if (level == levels_.size()) {
      Level lvl;
      lvl.beta = smallest_moved(g);
      levels_.push_back(std::move(lvl));
    }
    levels_[level].gens.push_back(g);
    recompute_orbit(levels_[level]);
    // Sift every Schreier generator of this level; recurse on nontrivial
    // residues. The rescan after each insertion is quadratic but simple and
    // deterministic. Access levels_ by index throughout: the recursion may
    // reallocate the vector.
    for (std::size_t qi = 0; qi < levels_[level].orbit.size(); ++qi) {
      const std::uint32_t v = levels_[level].orbit[qi];
      const Perm u = levels_[level].transversal.at(v);
      for (std::size_t si = 0; si < levels_[level].gens.size(); ++si) {
        const Perm s = levels_[level].gens[si];
        std::uint32_t w = s(v);
        Perm schreier = u.then(s).then(levels_[level].transversal.at(w).inverse());
        auto [residue, at] = strip(std::move(schreier), level + 1);
        if (!residue.is_identity()) insert(residue, at);
      }
    }
  }

  std::uint32_t smallest_moved(const Perm& g) const {
    for (std::uint32_t i = 0; i < degree_; ++i)
      if (g(i) != i) return i;
    throw parse_error("identity has no moved point");
  }

  std::uint32_t degree_;
  std::vector<Level> levels_;
};

/// Finite permutation group with named generators and a lazily built
/// stabilizer chain. Construction is single-threaded per instance; completed
/// instances are immutable and freely shareable.
class PermGroup {
public:
  PermGroup(std::uint32_t degree, std::vector<std::pair<std::string, Perm>> gens)
      : degree_(degree), gens_(std::move(gens)) {
    for (const auto& [name, p] : gens_)
      if (p.degree() != degree_) throw parse_error("generator degree mismatch");
  }

  static PermGroup from_perms(std::uint32_t degree, const std::vector<Perm>& ps,
                              const std::string& prefix = "g") {
    std::vector<std::pair<std::string, Perm>> gens;
    gens.reserve(ps.size());
    for (std::size_t i = 0; i < ps.size(); ++i)
      gens.emplace_back(prefix + std::to_string(i + 1), ps[i]);
    return PermGroup(degree, std::move(gens));
  }

  std::uint32_t degree() const { return degree_; }
  const std::vector<std::pair<std::string, Perm>>& generators() const { return gens_; }

  std::vector<Perm> gen_perms() const {
    std::vector<Perm> out;
    out.reserve(gens_.size());
    for (const auto& [n, p] : gens_) out.push_back(p);
    return out;
  }

  std::uint64_t order() const { return chain().order(); }

  bool contains(const Perm& p) const {
    if (p.degree() != degree_) throw parse_error("degree mismatch in membership test");
    return chain().contains(p);
  }

  bool is_subgroup_of(const PermGroup& big) const {
    for (const auto& [n, p] : gens_)
      if (!big.contains(p)) return false;
    return true;
  }

  /// Derived subgroup: normal closure of the generator commutators,
  /// maintained with an incrementally extended chain.
  PermGroup derived_subgroup() const {
    std::vector<Perm> dgens;
    StabChain chain(degree_, {});
    std::deque<Perm> queue;
    for (std::size_t i = 0; i < gens_.size(); ++i)
      for (std::size_t j = i + 1; j < gens_.size(); ++j) {
        const Perm& x = gens_[i].second;
        const Perm& y = gens_[j].second;
        queue.push_back(x.inverse().then(y.inverse()).then(x).then(y));
      }
    while (!queue.empty()) {
      Perm c = std::move(queue.front());
      queue.pop_front();
      if (c.is_identity() || chain.contains(c)) continue;
      dgens.push_back(c);
      chain.add_generator(c);
      for (const auto& [n, g] : gens_) queue.push_back(g.inverse().then(c).then(g));
    }
    return PermGroup::from_perms(degree_, dgens, "d");
  }

  /// Invariant factors of the abelianization, each > 1, in divisibility order.
  std::vector<std::uint64_t> abelian_invariants() const;

private:
  const StabChain& chain() const {
    if (!chain_) chain_ = std::make_shared<StabChain>(degree_, gen_perms());
    return *chain_;
  }

  std::uint32_t degree_;
  std::vector<std::pair<std::string, Perm>> gens_;
  mutable std::shared_ptr<StabChain> chain_;
};

inline PermGroup subgroup_generated(const PermGroup& parent, const std::vector<Perm>& perms) {
  for (const auto& p : perms)
    if (p.degree() != parent.degree()) throw parse_error("degree mismatch in subgroup");
  return PermGroup::from_perms(parent.degree(), perms, "s");
}

namespace detail {

/// Smith normal form diagonal of an integer matrix (rows x cols), returned as
/// the invariant-factor chain d_1 | d_2 | ... with zeros for missing rank.
inline std::vector<std::int64_t> smith_diagonal(std::vector<std::vector<std::int64_t>> m,
                                                std::size_t cols) {
  std::size_t rows = m.size();
  std::size_t t = 0;
  std::vector<std::int64_t> diag;
  while (t < rows && t < cols) {
    // Find the nonzero entry of least magnitude at (i, j), i >= t, j >= t.
    std::size_t pi = t, pj = t;
    std::int64_t best = 0;
    for (std::size_t i = t; i < rows; ++i)
      for (std::size_t j = t; j < cols; ++j)
        if (m[i][j] != 0 && (best == 0 || std::abs(m[i][j]) < std::abs(best))) {
          best = m[i][j];
          pi = i;
          pj = j;
        }
    if (best == 0) break;
    std::swap(m[t], m[pi]);
    for (auto& row : m) std::swap(row[t], row[pj]);
    bool clean = true;
    // Eliminate column t and row t; restart with a smaller pivot whenever a
    // remainder appears.
    for (std::size_t i = t + 1; i < rows && clean; ++i) {
      std::int64_t q = m[i][t] / m[t][t];
      if (q)
        for (std::size_t j = t; j < cols; ++j) m[i][j] -= q * m[t][j];
      if (m[i][t] != 0) clean = false;
    }
    for (std::size_t j = t + 1; j < cols && clean; ++j) {
      std::int64_t q = m[t][j] / m[t][t];
      if (q)
        for (std::size_t i = t; i < rows; ++i) m[i][j] -= q * m[i][t];
      if (m[t][j] != 0) clean = false;
    }
    if (!clean) continue; // pick a new (smaller) pivot
    diag.push_back(std::abs(m[t][t]));
    ++t;
  }
  // Enforce the divisibility chain d_i | d_{i+1}: diag(a, b) and
  // diag(gcd(a,b), lcm(a,b)) present the same group.
  bool fixed = true;
  while (fixed) {
    fixed = false;
    for (std::size_t i = 0; i + 1 < diag.size(); ++i) {
      if (diag[i] != 0 && diag[i + 1] % diag[i] != 0) {
        std::int64_t g = std::gcd(diag[i], diag[i + 1]);
        std::int64_t l = diag[i] / g * diag[i + 1];
        diag[i] = g;
        diag[i + 1] = l;
        fixed = true;
      }
    }
  }
  return diag;
}

} // namespace detail

inline std::vector<std::uint64_t> PermGroup::abelian_invariants() const {
  PermGroup d = derived_subgroup();
  const std::size_t k = gens_.size();
  if (k == 0) return {};
  // Enumerate cosets of the derived subgroup, recording one exponent vector
  // per coset; every BFS edge that closes a cycle yields a relation of the
  // abelianization Z^k -> Q/Q'.
  std::vector<Perm> reps = {Perm(degree_)};
  std::vector<std::vector<std::int64_t>> vecs = {std::vector<std::int64_t>(k, 0)};
  std::vector<std::vector<std::int64_t>> relations;
  auto find_coset = [&](const Perm& p) -> std::optional<std::size_t> {
    for (std::size_t i = 0; i < reps.size(); ++i)
      if (d.order() == 1 ? reps[i] == p : d.contains(p.then(reps[i].inverse())))
        return i;
    return std::nullopt;
  };
  constexpr std::size_t kMaxIndex = 100000;
  for (std::size_t qi = 0; qi < reps.size(); ++qi) {
    for (std::size_t gi = 0; gi < k; ++gi) {
      Perm next = reps[qi].then(gens_[gi].second);
      auto vec = vecs[qi];
      ++vec[gi];
      if (auto j = find_coset(next)) {
        auto rel = vec;
        for (std::size_t t = 0; t < k; ++t) rel[t] -= vecs[*j][t];
        relations.push_back(std::move(rel));
      } else {
        if (reps.size() >= kMaxIndex)
          throw cap_error("abelianization index exceeds " + std::to_string(kMaxIndex));
        reps.push_back(std::move(next));
        vecs.push_back(std::move(vec));
      }
    }
  }
  auto diag = detail::smith_diagonal(std::move(relations), k);
  std::vector<std::uint64_t> out;
  for (auto dv : diag)
    if (dv > 1) out.push_back(static_cast<std::uint64_t>(dv));
  // Missing diagonal entries would mean infinite factors; impossible here
  // since the coset enumeration terminated.
  return out;
}

/// Cosets of a normal subgroup N in Q as a small concrete group: canonical
/// representatives, a multiplication table, and the coset of each generator.
/// This is the workhorse for "images of S generate Q/N" questions.
struct CosetQuotient {
  std::vector<Perm> reps;                       // reps[0] is the identity
  std::vector<std::vector<std::uint16_t>> mult; // coset multiplication table
  std::vector<std::uint16_t> gen_coset;         // image of each Q generator

  std::size_t size() const { return reps.size(); }

  std::uint16_t coset_of(const Perm& p, const PermGroup& n) const {
    for (std::size_t i = 0; i < reps.size(); ++i)
      if (n.order() == 1 ? reps[i] == p : n.contains(p.then(reps[i].inverse())))
        return static_cast<std::uint16_t>(i);
    throw parse_error("element lies in no enumerated coset");
  }

  /// Does the given set of coset ids generate the whole quotient?
  bool generates(std::vector<std::uint16_t> seed) const {
    std::vector<bool> in(reps.size(), false);
    std::vector<std::uint16_t> frontier;
    in[0] = true;
    frontier.push_back(0);
    for (auto s : seed)
      if (!in[s]) {
        in[s] = true;
        frontier.push_back(s);
      }
    for (std::size_t qi = 0; qi < frontier.size(); ++qi)
      for (auto s : seed) {
        std::uint16_t t = mult[frontier[qi]][s];
        if (!in[t]) {
          in[t] = true;
          frontier.push_back(t);
        }
      }
    return frontier.size() == reps.size();
  }
};

inline CosetQuotient coset_quotient(const PermGroup& q, const PermGroup& n,
                                    std::size_t max_index = 100000) {
  CosetQuotient out;
  out.reps.push_back(Perm(q.degree()));
  auto find = [&](const Perm& p) -> std::optional<std::size_t> {
    for (std::size_t i = 0; i < out.reps.size(); ++i)
      if (n.order() == 1 ? out.reps[i] == p : n.contains(p.then(out.reps[i].inverse())))
        return i;
    return std::nullopt;
  };
  const auto gens = q.gen_perms();
  for (std::size_t qi = 0; qi < out.reps.size(); ++qi) {
    for (const auto& g : gens) {
      Perm next = out.reps[qi].then(g);
      if (!find(next)) {
        if (out.reps.size() >= max_index) throw cap_error("coset index exceeds cap");
        out.reps.push_back(std::move(next));
      }
    }
  }
  const std::size_t m = out.reps.size();
  out.mult.assign(m, std::vector<std::uint16_t>(m, 0));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      out.mult[i][j] = static_cast<std::uint16_t>(*find(out.reps[i].then(out.reps[j])));
  for (const auto& g : gens)
    out.gen_coset.push_back(static_cast<std::uint16_t>(*find(g)));
  return out;
}

} // namespace branchgen
