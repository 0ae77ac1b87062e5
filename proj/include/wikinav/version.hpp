#pragma once

namespace wikinav {

inline constexpr const char* kVersion = "1.0.0";

}  // namespace wikinav
