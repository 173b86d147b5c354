#pragma once

namespace evinet {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace evinet
