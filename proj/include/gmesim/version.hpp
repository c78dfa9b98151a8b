#pragma once

namespace gmesim {

#ifdef GMESIM_VERSION
inline constexpr const char* kVersion = GMESIM_VERSION;
#else
inline constexpr const char* kVersion = "unknown";
#endif

}  // namespace gmesim
