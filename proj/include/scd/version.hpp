#pragma once

namespace scd {
inline constexpr const char* kVersion = "0.1.0";
}
