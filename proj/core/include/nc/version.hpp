#pragma once

namespace nc {

inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace nc
