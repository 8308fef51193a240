#pragma once

namespace safesets {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace safesets
