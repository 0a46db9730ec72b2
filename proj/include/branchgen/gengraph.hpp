#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "branchgen/caps.hpp"
#include "branchgen/errors.hpp"
#include "branchgen/permgroup.hpp"
#include "branchgen/smallgroup.hpp"

namespace branchgen {

struct DiameterResult {
  enum Kind { Empty, Disconnected, Finite } kind = Empty;
  unsigned value = 0;

  std::string str() const {
    switch (kind) {
      case Empty: return "empty";
      case Disconnected: return "disconnected";
      default: return std::to_string(value);
    }
  }
};

/// Generating graph: vertices are the nonidentity elements, edges the pairs
/// that generate the whole group. delta() drops isolated vertices.
class GenGraph {
public:
  /// Gamma(Q): full element enumeration, one subgroup closure per pair.
  static GenGraph build_gamma(const SmallGroup& g, std::uint64_t order_cap) {
    if (g.order() > order_cap)
      throw cap_error("generating graph needs order <= " + std::to_string(order_cap));
    GenGraph out;
    const auto n = static_cast<unsigned>(g.order() - 1); // skip the identity
    out.vertex_elem_.resize(n);
    for (unsigned i = 0; i < n; ++i) out.vertex_elem_[i] = static_cast<std::uint16_t>(i + 1);
    out.labels_.reserve(n);
    for (unsigned i = 0; i < n; ++i)
      out.labels_.push_back(g.element(out.vertex_elem_[i]).cycles());
    out.adj_.assign(n, Bits(n));
    for (unsigned i = 0; i < n; ++i)
      for (unsigned j = i + 1; j < n; ++j)
        if (g.generates({out.vertex_elem_[i], out.vertex_elem_[j]})) {
          out.adj_[i].set(j);
          out.adj_[j].set(i);
        }
    return out;
  }

  unsigned num_vertices() const { return static_cast<unsigned>(adj_.size()); }

  unsigned num_edges() const {
    unsigned total = 0;
    for (const auto& row : adj_) total += row.count();
    return total / 2;
  }

  bool edge(unsigned i, unsigned j) const { return adj_[i].test(j); }
  unsigned degree(unsigned i) const { return adj_[i].count(); }
  const std::string& label(unsigned i) const { return labels_[i]; }
  std::uint16_t element_id(unsigned i) const { return vertex_elem_[i]; }
  bool isolated_removed() const { return isolated_removed_; }

  /// Delta: the graph with isolated vertices removed.
  GenGraph delta() const {
    std::vector<unsigned> keep;
    for (unsigned i = 0; i < num_vertices(); ++i)
      if (adj_[i].count() > 0) keep.push_back(i);
    GenGraph out;
    out.isolated_removed_ = true;
    const auto n = static_cast<unsigned>(keep.size());
    out.adj_.assign(n, Bits(n));
    out.vertex_elem_.resize(n);
    out.labels_.resize(n);
    for (unsigned i = 0; i < n; ++i) {
      out.vertex_elem_[i] = vertex_elem_[keep[i]];
      out.labels_[i] = labels_[keep[i]];
      for (unsigned j = 0; j < n; ++j)
        if (adj_[keep[i]].test(keep[j])) out.adj_[i].set(j);
    }
    return out;
  }

  unsigned num_components() const {
    const unsigned n = num_vertices();
    std::vector<bool> seen(n, false);
    unsigned comps = 0;
    for (unsigned s = 0; s < n; ++s) {
      if (seen[s]) continue;
      ++comps;
      std::deque<unsigned> q{s};
      seen[s] = true;
      while (!q.empty()) {
        unsigned v = q.front();
        q.pop_front();
        for (unsigned w = 0; w < n; ++w)
          if (adj_[v].test(w) && !seen[w]) {
            seen[w] = true;
            q.push_back(w);
          }
      }
    }
    return comps;
  }

  DiameterResult diameter() const {
    const unsigned n = num_vertices();
    if (n == 0) return {DiameterResult::Empty, 0};
    if (num_components() > 1) return {DiameterResult::Disconnected, 0};
    unsigned best = 0;
    std::vector<int> dist(n);
    for (unsigned s = 0; s < n; ++s) {
      std::fill(dist.begin(), dist.end(), -1);
      dist[s] = 0;
      std::deque<unsigned> q{s};
      while (!q.empty()) {
        unsigned v = q.front();
        q.pop_front();
        for (unsigned w = 0; w < n; ++w)
          if (adj_[v].test(w) && dist[w] < 0) {
            dist[w] = dist[v] + 1;
            best = std::max(best, static_cast<unsigned>(dist[w]));
            q.push_back(w);
          }
      }
    }
    return {DiameterResult::Finite, best};
  }

  /// Does S totally dominate: is every vertex adjacent to some member of S?
  bool totally_dominates(const std::vector<unsigned>& s) const {
    Bits covered(num_vertices());
    for (auto v : s)
      for (unsigned w = 0; w < num_vertices(); ++w)
        if (adj_[v].test(w)) covered.set(w);
    return covered.count() == num_vertices();
  }

  /// Exact total domination number by increasing-size search, candidates in
  /// descending-degree order, pruned by a greedy upper bound.
  unsigned total_domination(std::uint64_t vertex_cap) const {
    const unsigned n = num_vertices();
    if (n == 0) throw std::domain_error("total domination of an empty graph");
    for (unsigned i = 0; i < n; ++i)
      if (adj_[i].count() == 0)
        throw std::domain_error("total domination undefined with isolated vertices");
    if (n > vertex_cap)
      throw cap_error("exact gamma_t search needs <= " + std::to_string(vertex_cap) +
                      " vertices");

    std::vector<unsigned> order(n);
    for (unsigned i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](unsigned a, unsigned b) {
      if (degree(a) != degree(b)) return degree(a) > degree(b);
      return a < b;
    });

    // Greedy upper bound: repeatedly take the vertex covering the most
    // uncovered vertices.
    unsigned upper = 0;
    {
      Bits covered(n);
      while (covered.count() < n) {
        unsigned best = 0, gain = 0;
        for (unsigned v : order) {
          unsigned g = 0;
          for (unsigned w = 0; w < n; ++w)
            if (adj_[v].test(w) && !covered.test(w)) ++g;
          if (g > gain) {
            gain = g;
            best = v;
          }
        }
        covered = covered | adj_[best];
        ++upper;
      }
    }

    std::vector<unsigned> pick;
    for (unsigned k = std::min(2u, n); k <= upper; ++k) {
      pick.assign(k, 0);
      if (search(order, pick, 0, 0, Bits(n), k)) return k;
    }
    return upper;
  }

  void write_edge_list(std::ostream& os) const {
    for (unsigned i = 0; i < num_vertices(); ++i)
      os << "# vertex " << i + 1 << " " << labels_[i] << "\n";
    for (unsigned i = 0; i < num_vertices(); ++i)
      for (unsigned j = i + 1; j < num_vertices(); ++j)
        if (adj_[i].test(j)) os << i + 1 << " " << j + 1 << "\n";
  }

private:
  bool search(const std::vector<unsigned>& order, std::vector<unsigned>& pick,
              unsigned depth, unsigned from, Bits covered, unsigned k) const {
    if (covered.count() == num_vertices()) return true;
    if (depth == k) return false;
    // Even covering the rest optimally needs the remaining picks.
    for (unsigned oi = from; oi < order.size(); ++oi) {
      unsigned v = order[oi];
      Bits next = covered | adj_[v];
      if (next.count() == covered.count() && depth + 1 < k) continue;
      pick[depth] = v;
      if (search(order, pick, depth + 1, oi + 1, next, k)) return true;
    }
    return false;
  }

  std::vector<std::uint16_t> vertex_elem_;
  std::vector<std::string> labels_;
  std::vector<Bits> adj_;
  bool isolated_removed_ = false;
};

/// Frattini-style lift check on a nilpotent finite group: two nonidentity
/// elements generate exactly when their images generate the abelianization.
inline bool lift_connectivity_check(const PermGroup& q, const Caps& caps) {
  SmallGroup g = SmallGroup::enumerate(q, caps.small_group_order);
  PermGroup derived = q.derived_subgroup();
  CosetQuotient cq = coset_quotient(q, derived);
  std::vector<std::uint16_t> coset_of(g.order());
  for (std::uint16_t i = 0; i < g.order(); ++i)
    coset_of[i] = cq.coset_of(g.element(i), derived);
  for (std::uint16_t x = 1; x < g.order(); ++x)
    for (std::uint16_t y = static_cast<std::uint16_t>(x + 1); y < g.order(); ++y) {
      bool edge = g.generates({x, y});
      bool images = cq.generates({coset_of[x], coset_of[y]});
      if (edge != images) return false;
    }
  return true;
}

} // namespace branchgen
