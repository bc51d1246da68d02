#pragma once

namespace fad {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace fad
