#pragma once

namespace hieralign {
inline constexpr const char* kToolVersion = "0.1.0";
}
