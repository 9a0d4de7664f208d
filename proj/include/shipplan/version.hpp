#pragma once

namespace shipplan {

inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace shipplan
