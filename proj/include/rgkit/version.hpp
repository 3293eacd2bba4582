#pragma once

namespace rg {
inline constexpr const char* kVersion = "0.1.0";
}
