#pragma once

#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "branchgen/errors.hpp"
#include "branchgen/words.hpp"

namespace branchgen {

/// Permutation of {0, ..., n-1}, held as an image table. External notation is
/// 1-based cycle strings.
///
/// Action convention, fixed repo-wide: permutations (and group elements) act
/// on the right, so words act left to right: v^(gh) = (v^g)^h and
/// (a.then(b))(v) = b(a(v)).
class Perm {
public:
  Perm() = default;

  explicit Perm(std::uint32_t n) : img_(n) {
    std::iota(img_.begin(), img_.end(), 0u);
  }

  static Perm from_images(std::vector<std::uint32_t> images) {
    std::vector<bool> seen(images.size(), false);
    for (auto v : images) {
      if (v >= images.size() || seen[v]) throw parse_error("not a permutation");
      seen[v] = true;
    }
    Perm p;
    p.img_ = std::move(images);
    return p;
  }

  /// Parse 1-based disjoint cycles, e.g. "(1 2)(3 4)". "()" or "" is the
  /// identity. Points may also be comma-separated.
  static Perm from_cycles(std::string_view s, std::uint32_t degree) {
    Perm p(degree);
    std::size_t i = 0;
    auto skip = [&] {
      while (i < s.size() && (std::isspace(static_cast<unsigned char>(s[i])) || s[i] == ','))
        ++i;
    };
    skip();
    while (i < s.size()) {
      if (s[i] != '(') throw parse_error("expected '(' in cycle notation", i);
      ++i;
      std::vector<std::uint32_t> cyc;
      skip();
      while (i < s.size() && s[i] != ')') {
        if (!std::isdigit(static_cast<unsigned char>(s[i])))
          throw parse_error("expected point in cycle notation", i);
        std::uint32_t v = 0;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])))
          v = v * 10 + static_cast<std::uint32_t>(s[i++] - '0');
        if (v == 0 || v > degree) throw parse_error("point out of range in cycle", i);
        cyc.push_back(v - 1);
        skip();
      }
      if (i >= s.size()) throw parse_error("missing ')' in cycle notation", i);
      ++i;
      for (std::size_t k = 0; k < cyc.size(); ++k) {
        std::uint32_t from = cyc[k], to = cyc[(k + 1) % cyc.size()];
        if (p.img_[from] != from) throw parse_error("point repeated across cycles");
        p.img_[from] = to;
      }
      skip();
    }
    std::vector<bool> seen(degree, false);
    for (auto v : p.img_) {
      if (seen[v]) throw parse_error("cycles do not form a permutation");
      seen[v] = true;
    }
    return p;
  }

  std::uint32_t degree() const { return static_cast<std::uint32_t>(img_.size()); }
  std::uint32_t operator()(std::uint32_t v) const { return img_[v]; }

  bool is_identity() const {
    for (std::uint32_t i = 0; i < degree(); ++i)
      if (img_[i] != i) return false;
    return true;
  }

  /// this-then-other composition (right action).
  Perm then(const Perm& o) const {
    Perm out;
    out.img_.resize(img_.size());
    for (std::size_t i = 0; i < img_.size(); ++i) out.img_[i] = o.img_[img_[i]];
    return out;
  }

  Perm inverse() const {
    Perm out;
    out.img_.resize(img_.size());
    for (std::uint32_t i = 0; i < degree(); ++i) out.img_[img_[i]] = i;
    return out;
  }

  std::uint64_t order() const {
    std::uint64_t ord = 1;
    std::vector<bool> seen(degree(), false);
    for (std::uint32_t i = 0; i < degree(); ++i) {
      if (seen[i]) continue;
      std::uint64_t len = 0;
      for (std::uint32_t v = i; !seen[v]; v = img_[v]) {
        seen[v] = true;
        ++len;
      }
      ord = std::lcm(ord, len);
    }
    return ord;
  }

  /// Power with arbitrary-precision exponent (reduced modulo the order).
  Perm pow(const Int& e) const {
    Int m = e % static_cast<std::int64_t>(order());
    if (m < 0) m += static_cast<std::int64_t>(order());
    auto k = static_cast<std::uint64_t>(m);
    Perm acc(degree()), base = *this;
    while (k) {
      if (k & 1u) acc = acc.then(base);
      base = base.then(base);
      k >>= 1u;
    }
    return acc;
  }

  /// 1-based cycle string; identity renders as "()".
  std::string cycles() const {
    std::string out;
    std::vector<bool> seen(degree(), false);
    for (std::uint32_t i = 0; i < degree(); ++i) {
      if (seen[i] || img_[i] == i) {
        seen[i] = true;
        continue;
      }
      out += '(';
      bool first = true;
      for (std::uint32_t v = i; !seen[v]; v = img_[v]) {
        seen[v] = true;
        if (!first) out += ' ';
        out += std::to_string(v + 1);
        first = false;
      }
      out += ')';
    }
    return out.empty() ? "()" : out;
  }

  bool operator==(const Perm& o) const { return img_ == o.img_; }
  const std::vector<std::uint32_t>& images() const { return img_; }

private:
  std::vector<std::uint32_t> img_;
};

struct PermHash {
  std::size_t operator()(const Perm& p) const {
    std::size_t h = 0xcbf29ce484222325ull;
    for (auto v : p.images()) {
      h ^= v;
      h *= 0x100000001b3ull;
    }
    return h;
  }
};

} // namespace branchgen
