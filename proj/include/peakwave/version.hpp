#pragma once

namespace peakwave {

inline constexpr const char* kVersion = "0.1.0";

// Bumped whenever the branch file layout changes.
inline constexpr int kBranchFormatVersion = 1;

}  // namespace peakwave
