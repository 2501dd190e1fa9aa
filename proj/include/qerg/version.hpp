#pragma once

namespace qerg {

inline constexpr const char* kToolName = "qerg";
inline constexpr const char* kVersion = "0.1.0";

}  // namespace qerg
