#pragma once

#include <string_view>

namespace ilconv {

inline constexpr std::string_view kVersion = "0.1.0";
inline constexpr std::string_view kToolName = "ilconv";

} // namespace ilconv
