#pragma once

#include <string_view>

namespace mht {

inline constexpr std::string_view kToolVersion = "mht 1.0.0";

}  // namespace mht
