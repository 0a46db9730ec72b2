#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace branchgen {

/// Deterministic sampler. mt19937_64 output is pinned by the standard, and we
/// avoid std distributions (whose mapping is implementation-defined), so a
/// fixed seed yields the same stream on every platform.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next() { return eng_(); }

  /// Uniform-ish draw from [0, n). Modulo bias is irrelevant for test sampling.
  std::uint64_t below(std::uint64_t n) { return n ? eng_() % n : 0; }

  /// Uniform-ish draw from [lo, hi] inclusive.
  std::int64_t range(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo + 1)));
  }

  template <typename T>
  const T& pick(const std::vector<T>& v) {
    return v[static_cast<std::size_t>(below(v.size()))];
  }

  bool coin() { return (eng_() & 1u) != 0; }

private:
  std::mt19937_64 eng_;
};

} // namespace branchgen
