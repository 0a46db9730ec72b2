#pragma once

// Placeholder; the CLI is assembled once the analysis modules exist.

#include <iostream>
#include <string>
#include <vector>

namespace branchgen::cli {

inline int run(const std::vector<std::string>&, std::ostream& out, std::ostream&) {
  out << "branchgen: not yet wired\n";
  return 0;
}

} // namespace branchgen::cli
