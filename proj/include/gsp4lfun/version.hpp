#pragma once

namespace gsp4lfun {

inline constexpr const char* kVersion = "0.1.0";

}
