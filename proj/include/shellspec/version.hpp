#pragma once

namespace shellspec {
inline constexpr const char* kVersion = "shellspec 0.1.0";
}
