#pragma once

namespace polarity {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace polarity
