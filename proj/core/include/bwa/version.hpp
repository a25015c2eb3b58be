#pragma once

namespace bwa {
inline constexpr const char* version = "0.1.0";
}
