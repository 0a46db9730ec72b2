#pragma once

namespace branchgen {

inline constexpr const char* kVersion = "0.1.0";

} // namespace branchgen
