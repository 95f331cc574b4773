#pragma once

namespace ucw {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace ucw
