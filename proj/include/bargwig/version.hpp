#pragma once

namespace bargwig {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace bargwig
