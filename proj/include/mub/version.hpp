#pragma once

namespace mub {

inline constexpr const char* kVersion = "mubcert 0.1.0";

}  // namespace mub
