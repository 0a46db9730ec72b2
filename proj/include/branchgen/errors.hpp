#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace branchgen {

/// Syntax or semantic error in user-supplied text (word grammar, group spec
/// files). `offset` is a byte offset into the input when known, npos otherwise.
class parse_error : public std::runtime_error {
public:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  parse_error(const std::string& msg, std::size_t offset = npos)
      : std::runtime_error(offset == npos
                               ? msg
                               : msg + " (at byte " + std::to_string(offset) + ")"),
        offset_(offset) {}

  std::size_t offset() const { return offset_; }

private:
  std::size_t offset_;
};

/// The contraction budget ran out: a section closure or an intermediate word
/// grew past the configured limits. Signals either a non-contracting input or
/// caps set too low.
class budget_error : public std::runtime_error {
public:
  explicit budget_error(const std::string& msg) : std::runtime_error(msg) {}
};

/// A structural cap was exceeded (level-quotient degree, subgroup-lattice
/// order, generating-graph order, ...). Unlike budget_error there is nothing
/// to iterate further; the requested object is simply too large.
class cap_error : public std::runtime_error {
public:
  explicit cap_error(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace branchgen
