#pragma once

namespace embias {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace embias
