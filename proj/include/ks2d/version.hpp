#pragma once

namespace ks2d {

inline constexpr const char* version_string = "ks2d 0.1.0";

}  // namespace ks2d
