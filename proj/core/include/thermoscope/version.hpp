#ifndef THERMOSCOPE_VERSION_HPP
#define THERMOSCOPE_VERSION_HPP

namespace thermoscope {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr const char* kToolName = "thermoscope";

}  // namespace thermoscope

#endif
