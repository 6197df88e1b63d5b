#pragma once

namespace betafreq {
inline constexpr const char* kVersion = "0.1.0";
}
