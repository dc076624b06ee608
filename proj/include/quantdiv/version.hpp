#pragma once

namespace quantdiv {
inline constexpr const char* kToolVersion = "0.1.0";
}
