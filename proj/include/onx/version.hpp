#pragma once

namespace onx {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace onx
