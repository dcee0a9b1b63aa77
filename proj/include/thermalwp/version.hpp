#pragma once

namespace thermalwp {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace thermalwp
