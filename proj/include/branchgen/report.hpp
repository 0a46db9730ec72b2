#pragma once

#include <chrono>
#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "branchgen/iganalysis.hpp"
#include "branchgen/version.hpp"

namespace branchgen {

using nlohmann::json;

inline json to_json(const ProvRecord& r) {
  return json{{"claim", r.claim}, {"source", r.source}};
}

inline json to_json(const std::vector<ProvRecord>& trail) {
  json arr = json::array();
  for (const auto& r : trail) arr.push_back(to_json(r));
  return arr;
}

inline json to_json(const Flag& f) {
  return json{{"value", to_string(f.value)},
              {"provenance", to_string(f.prov)},
              {"note", f.note}};
}

/// Command report. Deterministic given (command, parameters, seed): the only
/// field allowed to vary between runs is wall_time_ms.
struct Report {
  std::string command;
  json group;
  json parameters = json::object();
  json results = json::object();
  std::vector<ProvRecord> provenance;
  std::uint64_t seed = 0;
  double wall_time_ms = 0.0;

  json to_json() const {
    return json{{"command", command},
                {"group", group},
                {"parameters", parameters},
                {"provenance", branchgen::to_json(provenance)},
                {"results", results},
                {"seed", seed},
                {"tool_version", kVersion},
                {"wall_time_ms", wall_time_ms}};
  }

  void write(std::ostream& os) const { os << to_json().dump(2) << "\n"; }

  /// Flatten scalar result leaves to "key,value" CSV rows (dotted paths).
  void write_csv(std::ostream& os) const {
    os << "key,value\n";
    os << "command," << command << "\n";
    os << "seed," << seed << "\n";
    flatten(os, "results", results);
  }

private:
  static void flatten(std::ostream& os, const std::string& prefix, const json& j) {
    if (j.is_object()) {
      for (auto it = j.begin(); it != j.end(); ++it)
        flatten(os, prefix + "." + it.key(), it.value());
    } else if (j.is_array()) {
      for (std::size_t i = 0; i < j.size(); ++i)
        flatten(os, prefix + "[" + std::to_string(i) + "]", j[i]);
    } else if (j.is_string()) {
      os << prefix << "," << j.get<std::string>() << "\n";
    } else {
      os << prefix << "," << j.dump() << "\n";
    }
  }
};

/// Simple wall-clock stopwatch for report timing fields.
class Stopwatch {
public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double ms() const {
    auto d = std::chrono::steady_clock::now() - start_;
    return std::chrono::duration<double, std::milli>(d).count();
  }

private:
  std::chrono::steady_clock::time_point start_;
};

} // namespace branchgen
