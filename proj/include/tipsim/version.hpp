#pragma once

namespace tipsim {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace tipsim
