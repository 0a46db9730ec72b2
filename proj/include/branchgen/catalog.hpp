#pragma once

#include <array>
#include <cstdint>
#include <fstream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "branchgen/caps.hpp"
#include "branchgen/errors.hpp"
#include "branchgen/tree.hpp"

namespace branchgen {

inline bool is_odd_prime(std::uint64_t q) {
  if (q < 3 || q % 2 == 0) return false;
  for (std::uint64_t d = 3; d * d <= q; d += 2)
    if (q % d == 0) return false;
  return true;
}

enum class Family { grigorchuk_first, ggs, sunic2, finite_abelian, finite_perm };

inline const char* to_string(Family f) {
  switch (f) {
    case Family::grigorchuk_first: return "grigorchuk_first";
    case Family::ggs: return "ggs";
    case Family::sunic2: return "sunic2";
    case Family::finite_abelian: return "finite_abelian";
    default: return "finite_perm";
  }
}

/// Catalogue description of a group: a family plus its parameters. Loaded
/// from and saved to the group-spec JSON format (see docs/group-specs.md).
struct GroupSpec {
  Family family = Family::grigorchuk_first;

  // ggs
  unsigned p = 0;
  std::vector<unsigned> e;

  // sunic2: a_0 .. a_{m-1} over F_2
  std::vector<unsigned> coeffs;

  // finite_abelian
  std::vector<std::uint64_t> invariant_factors;

  // finite_perm
  unsigned degree = 0;
  std::vector<std::string> perm_generators; // cycle notation
  std::vector<std::string> perm_names;      // optional, defaults g1, g2, ...

  bool is_tree_family() const {
    return family == Family::grigorchuk_first || family == Family::ggs ||
           family == Family::sunic2;
  }

  std::string display_name() const {
    switch (family) {
      case Family::grigorchuk_first: return "grigorchuk_first";
      case Family::ggs: {
        std::string s = "ggs(p=" + std::to_string(p) + ",e=[";
        for (std::size_t i = 0; i < e.size(); ++i)
          s += (i ? "," : "") + std::to_string(e[i]);
        return s + "])";
      }
      case Family::sunic2: {
        std::string s = "sunic2(";
        for (std::size_t i = 0; i < coeffs.size(); ++i)
          s += (i ? "," : "") + std::to_string(coeffs[i]);
        return s + ")";
      }
      case Family::finite_abelian: {
        std::string s = "abelian[";
        for (std::size_t i = 0; i < invariant_factors.size(); ++i)
          s += (i ? "," : "") + std::to_string(invariant_factors[i]);
        return s + "]";
      }
      default:
        return "finite_perm(degree=" + std::to_string(degree) + ")";
    }
  }

  static GroupSpec from_json(const nlohmann::json& j) {
    GroupSpec s;
    if (!j.is_object() || !j.contains("family"))
      throw parse_error("group spec must be an object with a \"family\" field");
    const std::string fam = j.at("family").get<std::string>();
    if (fam == "grigorchuk_first") {
      s.family = Family::grigorchuk_first;
    } else if (fam == "ggs") {
      s.family = Family::ggs;
      s.p = j.at("p").get<unsigned>();
      s.e = j.at("e").get<std::vector<unsigned>>();
    } else if (fam == "sunic2") {
      s.family = Family::sunic2;
      s.coeffs = j.at("coeffs").get<std::vector<unsigned>>();
    } else if (fam == "finite_abelian") {
      s.family = Family::finite_abelian;
      s.invariant_factors = j.at("invariant_factors").get<std::vector<std::uint64_t>>();
    } else if (fam == "finite_perm") {
      s.family = Family::finite_perm;
      s.degree = j.at("degree").get<unsigned>();
      s.perm_generators = j.at("generators").get<std::vector<std::string>>();
      if (j.contains("names"))
        s.perm_names = j.at("names").get<std::vector<std::string>>();
    } else {
      throw parse_error("unknown family: " + fam);
    }
    return s;
  }

  static GroupSpec from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parse_error("cannot open group spec: " + path);
    nlohmann::json j;
    try {
      in >> j;
    } catch (const nlohmann::json::exception& e) {
      throw parse_error(std::string("bad group spec JSON: ") + e.what());
    }
    return from_json(j);
  }

  nlohmann::json to_json() const {
    nlohmann::json j;
    j["family"] = to_string(family);
    switch (family) {
      case Family::ggs:
        j["p"] = p;
        j["e"] = e;
        break;
      case Family::sunic2:
        j["coeffs"] = coeffs;
        break;
      case Family::finite_abelian:
        j["invariant_factors"] = invariant_factors;
        break;
      case Family::finite_perm:
        j["degree"] = degree;
        j["generators"] = perm_generators;
        if (!perm_names.empty()) j["names"] = perm_names;
        break;
      default:
        break;
    }
    return j;
  }
};

/// First Grigorchuk group: binary tree, a the rooted swap, and
/// psi(b) = (a, c), psi(c) = (a, d), psi(d) = (1, b). The Klein relations
/// bc = d, cd = b, bd = c are folded into word reduction, which keeps
/// contraction effective.
inline TreeGroupPtr make_grigorchuk_first(Caps caps = {}) {
  std::array<std::string, 3> klein = {"b", "c", "d"};
  Alphabet a({"a", "b", "c", "d"}, {"a", "b", "c", "d"}, {"b", "c", "d"}, &klein);
  const unsigned A = 0, B = 1, C = 2, D = 3;
  Perm swap = Perm::from_cycles("(1 2)", 2);
  RecursionRules rules;
  rules.arity = 2;
  rules.rules = {
      {swap, {Word::one(), Word::one()}},
      {Perm(2), {Word::gen(A), Word::gen(C)}},
      {Perm(2), {Word::gen(A), Word::gen(D)}},
      {Perm(2), {Word::one(), Word::gen(B)}},
  };
  auto g = std::make_shared<TreeGroup>("grigorchuk_first", std::move(a), std::move(rules), caps);
  g->meta.in_mn = {TriState::yes, Provenance::theorem,
                   "torsion 2-group acting on the binary tree; all maximal subgroups are normal"};
  g->meta.torsion = {TriState::yes, Provenance::literature, "every element has 2-power order"};
  g->meta.branch = {TriState::yes, Provenance::literature, "regular branch over K"};
  g->meta.abelian_invariants = std::vector<std::uint64_t>{2, 2, 2};
  g->meta.abelian_prov = Provenance::derived;
  g->meta.abelian_note = "stabilized level-quotient abelianization";
  return g;
}

/// GGS-group on the p-ary tree with defining vector e in F_p^{p-1}, e != 0:
/// a is the rooted p-cycle and psi(b) = (a^{e_1}, ..., a^{e_{p-1}}, b).
inline TreeGroupPtr make_ggs(unsigned p, std::vector<unsigned> e, Caps caps = {}) {
  if (!is_odd_prime(p)) throw parse_error("ggs: p must be an odd prime");
  if (e.size() != p - 1) throw parse_error("ggs: e must have p-1 entries");
  bool nonzero = false;
  for (auto& x : e) {
    x %= p;
    nonzero |= x != 0;
  }
  if (!nonzero) throw parse_error("ggs: e must be nonzero");

  Alphabet alpha({"a", "b"}, {}, {"b"});
  std::vector<std::uint32_t> cyc(p);
  for (unsigned i = 0; i < p; ++i) cyc[i] = (i + 1) % p;
  Perm rho = Perm::from_images(cyc);
  RecursionRules rules;
  rules.arity = p;
  GeneratorRule ra{rho, std::vector<Word>(p, Word::one())};
  GeneratorRule rb{Perm(p), {}};
  rb.sections.reserve(p);
  for (unsigned i = 0; i + 1 < p; ++i)
    rb.sections.push_back(e[i] ? Word::gen(0, static_cast<int>(e[i])) : Word::one());
  rb.sections.push_back(Word::gen(1));
  rules.rules = {ra, rb};

  GroupSpec spec;
  spec.family = Family::ggs;
  spec.p = p;
  spec.e = e;
  auto g = std::make_shared<TreeGroup>(spec.display_name(), std::move(alpha), std::move(rules), caps);

  unsigned sum = 0;
  for (auto x : e) sum = (sum + x) % p;
  bool torsion = sum == 0;
  bool symmetric = true;
  for (unsigned i = 1; i < p; ++i)
    if ((e[i - 1] + e[p - 1 - i]) % p != 0) { symmetric = false; break; }
  g->meta.torsion = {torsion ? TriState::yes : TriState::no, Provenance::literature,
                     torsion ? "sum of defining vector entries is 0 mod p"
                             : "sum of defining vector entries is nonzero mod p"};
  g->meta.branch = {symmetric ? TriState::no : TriState::yes, Provenance::literature,
                    symmetric ? "defining vector is symmetric" : "defining vector is non-symmetric"};
  if (torsion || !symmetric)
    g->meta.in_mn = {TriState::yes, Provenance::theorem,
                     torsion ? "torsion GGS-group" : "branch GGS-group"};
  g->meta.abelian_invariants = std::vector<std::uint64_t>{p, p};
  g->meta.abelian_prov = Provenance::literature;
  g->meta.abelian_note = "G/G' = Cp x Cp for GGS-groups with nonzero defining vector";
  return g;
}

/// Directed-part element b with psi(b) = (a, b), found by exhausting the
/// 2^m - 1 nonempty products of distinct b_i (the directed part is elementary
/// abelian). Such a b exists iff the companion matrix of f fixes a vector
/// whose b_m-coordinate is 1; instances without one get "not found".
inline std::optional<Word> find_b(const TreeGroup& g) {
  const Alphabet& a = g.alphabet();
  std::vector<unsigned> block;
  for (unsigned i = 0; i < a.size(); ++i)
    if (a.in_block(i)) block.push_back(i);
  if (block.empty() || a.has_klein() || g.arity() != 2) return std::nullopt;
  const Word wa = Word::gen(a.index("a"));
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << block.size()); ++mask) {
    Word cand;
    for (std::size_t i = 0; i < block.size(); ++i)
      if (mask & (std::uint64_t{1} << i)) cand.syllables.push_back({block[i], 1});
    cand = g.reduce(cand);
    if (!g.root_perm(cand).is_identity()) continue;
    if (!g.equal(g.section(cand, 0), wa)) continue;
    if (g.equal(g.section(cand, 1), cand)) return cand;
  }
  return std::nullopt;
}

/// Binary Sunic group G_{2,f} for f = x^m + a_{m-1}x^{m-1} + ... + a_0 over
/// F_2 (a_0 = 1 so that f is invertible): a is the rooted swap and
///   psi(b_1) = (1, b_2), ..., psi(b_{m-1}) = (1, b_m),
///   psi(b_m) = (a, b_1^{a_0} b_2^{a_1} ... b_m^{a_{m-1}})
/// (negated exponents coincide with the coefficients over F_2).
inline TreeGroupPtr make_sunic2(std::vector<unsigned> coeffs, Caps caps = {}) {
  const auto m = static_cast<unsigned>(coeffs.size());
  if (m < 2) throw parse_error("sunic2: need m >= 2 coefficients");
  for (auto& c : coeffs) c %= 2;
  if (coeffs[0] != 1) throw parse_error("sunic2: a_0 must be 1 (invertible polynomial)");

  std::vector<std::string> names = {"a"};
  std::vector<std::string> block;
  for (unsigned i = 1; i <= m; ++i) {
    names.push_back("b" + std::to_string(i));
    block.push_back(names.back());
  }
  Alphabet alpha(names, names, block);

  Perm swap = Perm::from_cycles("(1 2)", 2);
  RecursionRules rules;
  rules.arity = 2;
  rules.rules.push_back({swap, {Word::one(), Word::one()}});
  for (unsigned i = 1; i < m; ++i)
    rules.rules.push_back({Perm(2), {Word::one(), Word::gen(i + 1)}});
  Word last;
  for (unsigned i = 0; i < m; ++i)
    if (coeffs[i]) last.syllables.push_back({i + 1, 1});
  rules.rules.push_back({Perm(2), {Word::gen(0), last}});

  GroupSpec spec;
  spec.family = Family::sunic2;
  spec.coeffs = coeffs;
  auto g = std::make_shared<TreeGroup>(spec.display_name(), std::move(alpha), std::move(rules), caps);

  if (m == 2 && coeffs[1] == 1) {
    // f = x^2 + x + 1 realizes the first Grigorchuk group.
    g->meta.torsion = {TriState::yes, Provenance::literature,
                       "G_{2,x^2+x+1} is the first Grigorchuk group"};
    g->meta.in_mn = {TriState::yes, Provenance::literature,
                     "G_{2,x^2+x+1} is the first Grigorchuk group"};
  } else if (auto b = find_b(*g)) {
    Word ab = g->mul(Word::gen(0), *b);
    if (g->certify_infinite_order(ab)) {
      g->meta.torsion = {TriState::no, Provenance::derived,
                         "a*" + g->render(*b) + " certified of infinite order"};
      g->meta.in_mn = {TriState::no, Provenance::theorem,
                       "non-torsion binary Sunic groups have maximal subgroups of "
                       "infinite index, which cannot be normal"};
    }
  }
  return g;
}

/// Generators [(ab)^q, b_1, ..., b_m] of the subgroup H(q), for b an element
/// with psi(b) = (a, b) and q an odd prime.
inline std::vector<Element> h_q_generators(const TreeGroupPtr& g, const Word& b,
                                           std::uint64_t q) {
  if (!is_odd_prime(q)) throw parse_error("q must be an odd prime");
  const Alphabet& a = g->alphabet();
  std::vector<Element> out;
  Word ab = g->mul(Word::gen(a.index("a")), b);
  out.emplace_back(g, g->power(ab, static_cast<std::int64_t>(q)));
  for (unsigned i = 0; i < a.size(); ++i)
    if (a.in_block(i)) out.emplace_back(g, Word::gen(i));
  return out;
}

/// Build any tree-family instance from a spec.
inline TreeGroupPtr make_tree_group(const GroupSpec& s, Caps caps = {}) {
  switch (s.family) {
    case Family::grigorchuk_first: return make_grigorchuk_first(caps);
    case Family::ggs: return make_ggs(s.p, s.e, caps);
    case Family::sunic2: return make_sunic2(s.coeffs, caps);
    default: throw parse_error("spec does not describe a tree family");
  }
}

} // namespace branchgen
