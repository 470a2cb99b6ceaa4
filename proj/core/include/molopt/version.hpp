#pragma once

namespace molopt {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace molopt
