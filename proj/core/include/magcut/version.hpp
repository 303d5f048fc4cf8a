#pragma once

namespace magcut {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace magcut
