#pragma once

namespace bjpa {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace bjpa
