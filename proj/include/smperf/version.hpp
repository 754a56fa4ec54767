#ifndef SMPERF_VERSION_HPP
#define SMPERF_VERSION_HPP

namespace smperf {

inline constexpr const char* kVersion = "smperf 1.0.0";

}  // namespace smperf

#endif
