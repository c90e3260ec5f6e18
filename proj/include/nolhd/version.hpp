#pragma once

namespace nolhd {

inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace nolhd
