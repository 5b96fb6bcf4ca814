#pragma once

namespace latspec {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace latspec
