#pragma once

namespace reconlab {
inline constexpr const char* kVersion = "0.1.0";
}
