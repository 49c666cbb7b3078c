#pragma once

namespace lsgas {

inline constexpr const char* kVersion = "0.1.0";

}
