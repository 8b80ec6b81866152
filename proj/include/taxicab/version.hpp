#pragma once

namespace taxicab {

inline constexpr const char* kVersion = "1.0.0";

}  // namespace taxicab
