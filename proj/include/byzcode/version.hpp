#pragma once

namespace byzcode {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace byzcode
