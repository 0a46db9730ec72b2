#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "branchgen/permgroup.hpp"

namespace branchgen {

/// Direct product of cyclic groups acting on disjoint cycles, one generator
/// per invariant factor.
inline PermGroup abelian_group(const std::vector<std::uint64_t>& factors) {
  std::uint32_t degree = 0;
  for (auto f : factors) {
    if (f < 1) throw parse_error("invariant factors must be positive");
    degree += static_cast<std::uint32_t>(f);
  }
  if (degree == 0) degree = 1;
  std::vector<std::pair<std::string, Perm>> gens;
  std::uint32_t off = 0;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    std::vector<std::uint32_t> img(degree);
    for (std::uint32_t v = 0; v < degree; ++v) img[v] = v;
    for (std::uint64_t t = 0; t < factors[i]; ++t)
      img[off + t] = off + static_cast<std::uint32_t>((t + 1) % factors[i]);
    gens.emplace_back("x" + std::to_string(i + 1), Perm::from_images(std::move(img)));
    off += static_cast<std::uint32_t>(factors[i]);
  }
  return PermGroup(degree, std::move(gens));
}

inline PermGroup cyclic(std::uint64_t n) { return abelian_group({n}); }

inline PermGroup symmetric3() {
  return PermGroup(3, {{"s", Perm::from_cycles("(1 2)", 3)},
                       {"r", Perm::from_cycles("(1 2 3)", 3)}});
}

inline PermGroup symmetric4() {
  return PermGroup(4, {{"s", Perm::from_cycles("(1 2)", 4)},
                       {"r", Perm::from_cycles("(1 2 3 4)", 4)}});
}

inline PermGroup alternating4() {
  return PermGroup(4, {{"x", Perm::from_cycles("(1 2 3)", 4)},
                       {"y", Perm::from_cycles("(2 3 4)", 4)}});
}

inline PermGroup dihedral8() {
  return PermGroup(4, {{"r", Perm::from_cycles("(1 2 3 4)", 4)},
                       {"s", Perm::from_cycles("(1 3)", 4)}});
}

/// Quaternion group of order 8 in its regular representation. Elements are
/// indexed 1, -1, i, -i, j, -j, k, -k; generators act by right multiplication.
inline PermGroup quaternion8() {
  // Unit table: sign and axis of the product of two units e, i, j, k.
  // axis 0 = e, 1 = i, 2 = j, 3 = k.
  static const int axis[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  static const int sign[4][4] = {{1, 1, 1, 1}, {1, -1, 1, -1}, {1, -1, -1, 1}, {1, 1, -1, -1}};
  auto idx = [](int s, int a) { return static_cast<std::uint32_t>(a * 2 + (s > 0 ? 0 : 1)); };
  auto mulq = [&](std::uint32_t x, std::uint32_t y) {
    int sx = (x % 2 == 0) ? 1 : -1, ax = static_cast<int>(x / 2);
    int sy = (y % 2 == 0) ? 1 : -1, ay = static_cast<int>(y / 2);
    return idx(sx * sy * sign[ax][ay], axis[ax][ay]);
  };
  auto right_mult = [&](std::uint32_t g) {
    std::vector<std::uint32_t> img(8);
    for (std::uint32_t x = 0; x < 8; ++x) img[x] = mulq(x, g);
    return Perm::from_images(std::move(img));
  };
  return PermGroup(8, {{"i", right_mult(idx(1, 1))}, {"j", right_mult(idx(1, 2))}});
}

/// Heisenberg group modulo 3 (order 27, extraspecial exponent 3) in its
/// regular representation: triples (a, b, c) standing for the unitriangular
/// matrix with a, b above the diagonal and c in the corner.
inline PermGroup heisenberg27() {
  auto pack = [](unsigned a, unsigned b, unsigned c) { return a * 9 + b * 3 + c; };
  auto right_mult = [&](unsigned ga, unsigned gb, unsigned gc) {
    std::vector<std::uint32_t> img(27);
    for (unsigned a = 0; a < 3; ++a)
      for (unsigned b = 0; b < 3; ++b)
        for (unsigned c = 0; c < 3; ++c)
          img[pack(a, b, c)] = pack((a + ga) % 3, (b + gb) % 3, (c + gc + a * gb) % 3);
    return Perm::from_images(std::move(img));
  };
  return PermGroup(27, {{"x", right_mult(1, 0, 0)}, {"y", right_mult(0, 1, 0)}});
}

struct BatteryEntry {
  std::string name;
  PermGroup group;
  bool nilpotent;
};

/// The finite test battery used by the oracle-equivalence and MN checks.
inline std::vector<BatteryEntry> battery() {
  return {
      {"S3", symmetric3(), false},
      {"S4", symmetric4(), false},
      {"A4", alternating4(), false},
      {"D8", dihedral8(), true},
      {"Q8", quaternion8(), true},
      {"C2xC2", abelian_group({2, 2}), true},
      {"C3xC3", abelian_group({3, 3}), true},
      {"Heis27", heisenberg27(), true},
  };
}

} // namespace branchgen
