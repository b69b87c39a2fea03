#pragma once

namespace qwl {

inline constexpr const char* version = "0.1.0";

}
