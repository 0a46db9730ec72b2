#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/rational.hpp>

#include "branchgen/rng.hpp"

namespace branchgen {

/// Exact-rational model of C2 x| (Q x Q), the wreath-like solvable group where
/// nilpotent-style invariable generation fails. Elements are (flip; v1, v2)
/// with t = (flip; 0, 0) swapping the two rational coordinates.
///
/// Multiplication convention, pinned by a unit test:
///   (e1, v1) * (e2, v2) = (e1 e2, v1^(e2) + v2)
/// where v^flip swaps the coordinates.
namespace qqmodel {

using Rat = boost::rational<boost::multiprecision::cpp_int>;

struct Elem {
  bool flip = false;
  Rat a{0}, b{0};

  bool operator==(const Elem& o) const { return flip == o.flip && a == o.a && b == o.b; }
};

inline Elem mul(const Elem& x, const Elem& y) {
  Rat xa = y.flip ? x.b : x.a;
  Rat xb = y.flip ? x.a : x.b;
  return {x.flip != y.flip, xa + y.a, xb + y.b};
}

inline Elem inverse(const Elem& x) {
  Rat na = x.flip ? -x.b : -x.a;
  Rat nb = x.flip ? -x.a : -x.b;
  return {x.flip, na, nb};
}

inline Elem conjugate(const Elem& x, const Elem& c) { return mul(mul(inverse(c), x), c); }

inline Elem t() { return {true, Rat(0), Rat(0)}; }
inline Elem translation(const Rat& a, const Rat& b) { return {false, a, b}; }

/// H = <t> x| {(r, r)}: the diagonal subgroup that swallows every conjugate
/// of the coset elements t(q, q').
inline bool in_h(const Elem& x) { return x.a == x.b; }

inline Rat sample_rat(Rng& rng) {
  auto num = rng.range(-8, 8);
  auto den = rng.range(1, 8);
  return Rat(boost::multiprecision::cpp_int(num), boost::multiprecision::cpp_int(den));
}

inline Elem sample_elem(Rng& rng) {
  return {rng.coin(), sample_rat(rng), sample_rat(rng)};
}

struct Remark24Result {
  bool conjugates_land_in_h = true;  ///< every t(q,q') conjugated into H
  bool batch_generates = true;       ///< perturbed {t} + translations keep C2 image and rank-2 translations
  std::uint64_t samples = 0;

  bool ok() const { return conjugates_land_in_h && batch_generates; }
};

/// Two desk-scale checks on the model.
///
/// First: for each sampled (q, q'), conjugating t(q,q') by the translation
/// (d, 0) with d = (q'-q)/2 lands inside H, so the coset set
/// {t(q,q') : q,q' in Q} admits conjugates that all lie in the proper
/// subgroup H and is therefore not an IG-set.
///
/// Second: the set {t} united with the sampled translations, perturbed by
/// arbitrary sampled conjugators, still maps onto C2 and still has a rank-2
/// translation part; this is the some-choice reading under which the full set
/// {t} + Q^2 is an IG-set.
inline Remark24Result remark24_check(std::uint64_t samples, std::uint64_t seed) {
  Rng rng(seed);
  Remark24Result out;
  out.samples = samples;

  std::vector<Elem> translations;
  for (std::uint64_t i = 0; i < samples; ++i) {
    Rat q = sample_rat(rng), qp = sample_rat(rng);
    Elem x = mul(t(), translation(q, qp)); // (flip; q, q')
    Rat d = (qp - q) / 2;
    Elem y = conjugate(x, translation(d, Rat(0)));
    if (!in_h(y) || y.a != (q + qp) / 2) out.conjugates_land_in_h = false;
    translations.push_back(translation(q, qp));
  }

  // Batch perturbation: conjugate t and every sampled translation.
  Elem tau = conjugate(t(), sample_elem(rng));
  if (!tau.flip) out.batch_generates = false;
  std::vector<std::pair<Rat, Rat>> vectors;
  Elem tau2 = mul(tau, tau); // pure translation with equal coordinates
  vectors.emplace_back(tau2.a, tau2.b);
  for (const auto& tr : translations) {
    Elem moved = conjugate(tr, sample_elem(rng));
    if (moved.flip) out.batch_generates = false; // translations stay translations
    vectors.emplace_back(moved.a, moved.b);
    vectors.emplace_back(moved.b, moved.a); // conjugate by the perturbed t
  }
  // Exact rank over Q must be 2. (Compare against Rat(0): boost::rational
  // comparisons with raw int literals do not converge for cpp_int.)
  const Rat zero(0);
  int rank = 0;
  std::pair<Rat, Rat> first;
  for (const auto& v : vectors) {
    if (v.first == zero && v.second == zero) continue;
    if (rank == 0) {
      first = v;
      rank = 1;
      continue;
    }
    if (first.first * v.second - first.second * v.first != zero) {
      rank = 2;
      break;
    }
  }
  if (rank != 2) out.batch_generates = false;
  return out;
}

} // namespace qqmodel

} // namespace branchgen
