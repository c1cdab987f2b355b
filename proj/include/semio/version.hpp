#pragma once

namespace semio {

inline constexpr const char* version = "0.1.0";

}  // namespace semio
