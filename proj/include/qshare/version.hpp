#pragma once

namespace qshare {

inline constexpr const char* kVersion = "0.1.0";

} // namespace qshare
