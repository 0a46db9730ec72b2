#pragma once

#include <algorithm>
#include <array>
#include <cctype>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "branchgen/errors.hpp"

namespace branchgen {

/// Exponents are arbitrary precision so that powers like (ab)^q never
/// overflow, whatever the prime.
using Int = boost::multiprecision::cpp_int;

/// Generator alphabet of a group presentation by tree recursion. Knows which
/// generators are involutions, which belong to the pairwise-commuting directed
/// block, and (optionally) a Klein triple inside that block: three involutions
/// where the product of any two distinct members rewrites to the third.
class Alphabet {
public:
  Alphabet() = default;

  Alphabet(std::vector<std::string> names,
           const std::vector<std::string>& involutions,
           const std::vector<std::string>& commuting_block = {},
           const std::array<std::string, 3>* klein_triple = nullptr)
      : names_(std::move(names)) {
    if (names_.empty()) throw parse_error("alphabet needs at least one generator");
    involution_.assign(names_.size(), false);
    block_.assign(names_.size(), false);
    for (std::size_t i = 0; i < names_.size(); ++i) {
      validate_name(names_[i]);
      for (std::size_t j = i + 1; j < names_.size(); ++j)
        if (names_[i] == names_[j])
          throw parse_error("duplicate generator name: " + names_[i]);
    }
    for (const auto& n : involutions) involution_[index(n)] = true;
    for (const auto& n : commuting_block) block_[index(n)] = true;
    if (klein_triple) {
      for (std::size_t t = 0; t < 3; ++t) {
        unsigned i = index((*klein_triple)[t]);
        if (!involution_[i] || !block_[i])
          throw parse_error("klein triple members must be commuting involutions");
        klein_[t] = i;
      }
      std::sort(klein_.begin(), klein_.end());
      if (klein_[0] == klein_[1] || klein_[1] == klein_[2])
        throw parse_error("klein triple members must be distinct");
      has_klein_ = true;
    }
  }

  unsigned size() const { return static_cast<unsigned>(names_.size()); }
  const std::string& name(unsigned i) const { return names_[i]; }
  const std::vector<std::string>& names() const { return names_; }

  unsigned index(std::string_view name) const {
    if (auto i = try_index(name)) return *i;
    throw parse_error("unknown generator: " + std::string(name));
  }

  std::optional<unsigned> try_index(std::string_view name) const {
    for (std::size_t i = 0; i < names_.size(); ++i)
      if (names_[i] == name) return static_cast<unsigned>(i);
    return std::nullopt;
  }

  bool is_involution(unsigned i) const { return involution_[i]; }
  bool in_block(unsigned i) const { return block_[i]; }
  bool has_klein() const { return has_klein_; }

  /// Third member of the Klein triple when {i, j} are two distinct members.
  std::optional<unsigned> klein_third(unsigned i, unsigned j) const {
    if (!has_klein_ || i == j) return std::nullopt;
    bool i_in = i == klein_[0] || i == klein_[1] || i == klein_[2];
    bool j_in = j == klein_[0] || j == klein_[1] || j == klein_[2];
    if (!i_in || !j_in) return std::nullopt;
    return klein_[0] ^ klein_[1] ^ klein_[2] ^ i ^ j;
  }

private:
  static void validate_name(const std::string& n) {
    if (n.empty() || !std::islower(static_cast<unsigned char>(n[0])))
      throw parse_error("bad generator name: '" + n + "'");
    for (char c : n)
      if (!std::islower(static_cast<unsigned char>(c)) &&
          !std::isdigit(static_cast<unsigned char>(c)) && c != '_')
        throw parse_error("bad generator name: '" + n + "'");
  }

  std::vector<std::string> names_;
  std::vector<bool> involution_;
  std::vector<bool> block_;
  std::array<unsigned, 3> klein_{};
  bool has_klein_ = false;
};

struct Syllable {
  unsigned gen = 0;
  Int exp = 1;

  bool operator==(const Syllable& o) const { return gen == o.gen && exp == o.exp; }
};

/// Freely reduced word over an alphabet. Values produced by reduce() are in
/// the canonical normal form that all caches key on.
struct Word {
  std::vector<Syllable> syllables;

  bool empty() const { return syllables.empty(); }
  std::size_t size() const { return syllables.size(); }
  bool operator==(const Word& o) const { return syllables == o.syllables; }

  static Word one() { return {}; }
  static Word gen(unsigned g, Int e = 1) {
    Word w;
    w.syllables.push_back({g, std::move(e)});
    return w;
  }
};

namespace detail {

inline void normalize_syllable(Syllable& s, const Alphabet& a) {
  if (a.is_involution(s.gen)) {
    s.exp = ((s.exp % 2) + 2) % 2; // involution exponents live in {0, 1}
  }
}

// One merge pass: normalize involution exponents, fuse adjacent equal
// generators, drop zero exponents.
inline bool merge_pass(std::vector<Syllable>& v, const Alphabet& a) {
  bool changed = false;
  std::vector<Syllable> out;
  out.reserve(v.size());
  for (auto& s : v) {
    Syllable cur = s;
    normalize_syllable(cur, a);
    if (cur.exp != s.exp) changed = true;
    if (cur.exp == 0) {
      changed = true;
      continue;
    }
    if (!out.empty() && out.back().gen == cur.gen) {
      out.back().exp += cur.exp;
      normalize_syllable(out.back(), a);
      if (out.back().exp == 0) out.pop_back();
      changed = true;
    } else {
      out.push_back(std::move(cur));
    }
  }
  if (changed) v = std::move(out);
  return changed;
}

// One bubble pass over commuting-block runs: sort by declared alphabet order.
inline bool sort_pass(std::vector<Syllable>& v, const Alphabet& a) {
  bool changed = false;
  for (std::size_t i = 0; i + 1 < v.size(); ++i) {
    if (a.in_block(v[i].gen) && a.in_block(v[i + 1].gen) && v[i].gen > v[i + 1].gen) {
      std::swap(v[i], v[i + 1]);
      changed = true;
    }
  }
  return changed;
}

// One Klein pass: two distinct triple members inside a block run rewrite to
// the third member.
inline bool klein_pass(std::vector<Syllable>& v, const Alphabet& a) {
  if (!a.has_klein()) return false;
  for (std::size_t i = 0; i + 1 < v.size(); ++i) {
    if (auto third = a.klein_third(v[i].gen, v[i + 1].gen)) {
      v[i] = Syllable{*third, 1};
      v.erase(v.begin() + static_cast<std::ptrdiff_t>(i) + 1);
      return true;
    }
  }
  return false;
}

} // namespace detail

/// Canonical normal form: free reduction, involution squares cancel, commuting
/// block runs are sorted by alphabet order with exponents collapsed, Klein
/// triple products rewrite to the third member. The result is the unique
/// normal form used as a memoization key everywhere.
inline Word reduce(Word w, const Alphabet& a) {
  for (const auto& s : w.syllables)
    if (s.gen >= a.size()) throw parse_error("unknown generator index in word");
  bool changed = true;
  while (changed) {
    changed = false;
    changed |= detail::merge_pass(w.syllables, a);
    changed |= detail::sort_pass(w.syllables, a);
    changed |= detail::klein_pass(w.syllables, a);
  }
  return w;
}

inline Word invert(const Word& w, const Alphabet& a) {
  Word out;
  out.syllables.reserve(w.size());
  for (auto it = w.syllables.rbegin(); it != w.syllables.rend(); ++it)
    out.syllables.push_back({it->gen, -it->exp});
  return reduce(std::move(out), a);
}

/// Product of two words, reduced.
inline Word mul(const Word& x, const Word& y, const Alphabet& a) {
  Word out;
  out.syllables.reserve(x.size() + y.size());
  out.syllables.insert(out.syllables.end(), x.syllables.begin(), x.syllables.end());
  out.syllables.insert(out.syllables.end(), y.syllables.begin(), y.syllables.end());
  return reduce(std::move(out), a);
}

/// c^{-1} w c, reduced.
inline Word conjugate(const Word& w, const Word& c, const Alphabet& a) {
  return mul(mul(invert(c, a), w, a), c, a);
}

/// w^k for machine-size k (words are expanded, so k is deliberately small).
inline Word power(const Word& w, std::int64_t k, const Alphabet& a) {
  Word base = k >= 0 ? w : invert(w, a);
  std::uint64_t reps = k >= 0 ? static_cast<std::uint64_t>(k)
                              : static_cast<std::uint64_t>(-(k + 1)) + 1;
  Word out;
  for (std::uint64_t i = 0; i < reps; ++i) out = mul(out, base, a);
  return out;
}

inline std::string render(const Word& w, const Alphabet& a) {
  std::string out;
  for (std::size_t i = 0; i < w.syllables.size(); ++i) {
    if (i) out += ' ';
    out += a.name(w.syllables[i].gen);
    if (w.syllables[i].exp != 1) {
      out += '^';
      out += w.syllables[i].exp.str();
    }
  }
  return out;
}

namespace detail {

struct Token {
  enum Kind { Name, Number, Caret, LParen, RParen, End } kind;
  std::string_view text;
  std::size_t off;
};

class Lexer {
public:
  explicit Lexer(std::string_view s) : s_(s) {}

  Token next() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (pos_ >= s_.size()) return {Token::End, {}, pos_};
    std::size_t start = pos_;
    char c = s_[pos_];
    if (c == '^') { ++pos_; return {Token::Caret, s_.substr(start, 1), start}; }
    if (c == '(') { ++pos_; return {Token::LParen, s_.substr(start, 1), start}; }
    if (c == ')') { ++pos_; return {Token::RParen, s_.substr(start, 1), start}; }
    if (std::islower(static_cast<unsigned char>(c))) {
      while (pos_ < s_.size() &&
             (std::islower(static_cast<unsigned char>(s_[pos_])) ||
              std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
        ++pos_;
      return {Token::Name, s_.substr(start, pos_ - start), start};
    }
    if (c == '-' || std::isdigit(static_cast<unsigned char>(c))) {
      ++pos_;
      if (c == '-' && (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_]))))
        throw parse_error("expected digits after '-'", start);
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      return {Token::Number, s_.substr(start, pos_ - start), start};
    }
    throw parse_error(std::string("unexpected character '") + c + "'", start);
  }

private:
  std::string_view s_;
  std::size_t pos_ = 0;
};

class WordParser {
public:
  WordParser(std::string_view text, const Alphabet& a)
      : lex_(text), a_(a) { advance(); }

  std::vector<Syllable> parse_sequence(bool top) {
    std::vector<Syllable> out;
    while (true) {
      if (tok_.kind == Token::End) {
        if (!top) throw parse_error("missing ')'", tok_.off);
        return out;
      }
      if (tok_.kind == Token::RParen) {
        if (top) throw parse_error("unmatched ')'", tok_.off);
        return out;
      }
      parse_item(out);
    }
  }

private:
  void advance() { tok_ = lex_.next(); }

  Int parse_exponent() {
    if (tok_.kind != Token::Caret)
      throw parse_error("expected '^' after ')'", tok_.off);
    advance();
    if (tok_.kind != Token::Number)
      throw parse_error("expected integer exponent", tok_.off);
    Int e(std::string(tok_.text));
    advance();
    return e;
  }

  void parse_item(std::vector<Syllable>& out) {
    if (tok_.kind == Token::Name) {
      unsigned g;
      std::size_t off = tok_.off;
      if (auto i = a_.try_index(tok_.text)) g = *i;
      else throw parse_error("unknown generator: " + std::string(tok_.text), off);
      advance();
      Int e = 1;
      if (tok_.kind == Token::Caret) e = parse_exponent();
      out.push_back({g, std::move(e)});
      return;
    }
    if (tok_.kind == Token::LParen) {
      std::size_t off = tok_.off;
      advance();
      std::vector<Syllable> inner = parse_sequence(false);
      if (tok_.kind != Token::RParen) throw parse_error("missing ')'", tok_.off);
      advance();
      Int e = parse_exponent();
      expand(out, inner, e, off);
      return;
    }
    throw parse_error("expected generator or '('", tok_.off);
  }

  // Parenthesised powers are expanded literally; only single-generator
  // exponents stay symbolic. The expansion size is capped so a hostile
  // exponent cannot exhaust memory.
  void expand(std::vector<Syllable>& out, const std::vector<Syllable>& inner,
              const Int& e, std::size_t off) {
    if (e == 0 || inner.empty()) return;
    Int reps = abs(e);
    if (reps * static_cast<std::int64_t>(inner.size()) > kMaxExpansion)
      throw budget_error("parenthesised power too large to expand (at byte " +
                         std::to_string(off) + ")");
    auto n = static_cast<std::uint64_t>(reps);
    if (e > 0) {
      for (std::uint64_t i = 0; i < n; ++i)
        out.insert(out.end(), inner.begin(), inner.end());
    } else {
      for (std::uint64_t i = 0; i < n; ++i)
        for (auto it = inner.rbegin(); it != inner.rend(); ++it)
          out.push_back({it->gen, -it->exp});
    }
  }

  static constexpr std::int64_t kMaxExpansion = 1 << 20;

  Lexer lex_;
  const Alphabet& a_;
  Token tok_{Token::End, {}, 0};
};

} // namespace detail

/// Parse the word grammar:
///   word := item*
///   item := gen | gen '^' int | '(' word ')' '^' int
/// Multi-letter names must be declared generators ("ab" is not "a b"), and the
/// result is returned reduced.
inline Word parse_word(std::string_view text, const Alphabet& a) {
  detail::WordParser p(text, a);
  Word w;
  w.syllables = p.parse_sequence(true);
  return reduce(std::move(w), a);
}

} // namespace branchgen
