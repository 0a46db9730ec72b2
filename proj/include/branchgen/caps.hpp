#pragma once

#include <cstdint>
#include <fstream>
#include <string>

#include <json.hpp>

#include "branchgen/errors.hpp"

namespace branchgen {

/// Resource limits. All algorithms that can in principle diverge (section
/// closures on non-contracting inputs) or blow up combinatorially (subgroup
/// lattices, generating graphs) consult these caps and fail loudly instead of
/// hanging.
struct Caps {
  std::uint64_t closure_words = 1'000'000;  ///< max distinct words in a section closure
  std::uint64_t word_syllables = 10'000;    ///< max syllables of any intermediate word
  std::uint64_t level_degree = 1'000'000;   ///< max p^n when building level quotients
  std::uint64_t lattice_order = 512;        ///< max group order for subgroup-lattice work
  std::uint64_t direct_ig_order = 200;      ///< max group order for the exhaustive IG oracle
  std::uint64_t direct_ig_set = 3;          ///< max set size for the exhaustive IG oracle
  std::uint64_t gamma_order = 2000;         ///< max group order for generating graphs
  std::uint64_t domination_vertices = 500;  ///< max vertex count for exact gamma_t search
  std::uint64_t small_group_order = 2048;   ///< max order for Cayley-table enumeration

  static Caps from_json(const nlohmann::json& j) {
    Caps c;
    auto get = [&](const char* key, std::uint64_t& field) {
      if (j.contains(key)) field = j.at(key).get<std::uint64_t>();
    };
    get("closure_words", c.closure_words);
    get("word_syllables", c.word_syllables);
    get("level_degree", c.level_degree);
    get("lattice_order", c.lattice_order);
    get("direct_ig_order", c.direct_ig_order);
    get("direct_ig_set", c.direct_ig_set);
    get("gamma_order", c.gamma_order);
    get("domination_vertices", c.domination_vertices);
    get("small_group_order", c.small_group_order);
    return c;
  }

  static Caps from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parse_error("cannot open caps file: " + path);
    nlohmann::json j;
    try {
      in >> j;
    } catch (const nlohmann::json::exception& e) {
      throw parse_error(std::string("bad caps file: ") + e.what());
    }
    return from_json(j);
  }

  /// Caps used by a fresh process: defaults, overridden by the file named in
  /// BRANCHGEN_CAPS when that variable is set.
  static Caps from_env() {
    if (const char* p = std::getenv("BRANCHGEN_CAPS")) return from_file(p);
    return Caps{};
  }
};

} // namespace branchgen
