#pragma once

namespace loguse {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace loguse
