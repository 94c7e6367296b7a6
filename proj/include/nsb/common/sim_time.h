#pragma once

#include <cmath>
#include <cstdint>

namespace nsb {

// Simulation time in integer microseconds. Integer ticks keep cutting-rule
// boundaries (e.g. "aged exactly 300 ms") exact.
using SimTime = std::int64_t;

inline constexpr SimTime kMicrosPerMs = 1000;
inline constexpr SimTime kMicrosPerSecond = 1000 * kMicrosPerMs;

constexpr SimTime from_ms(std::int64_t ms) { return ms * kMicrosPerMs; }
inline SimTime from_ms_f(double ms) {
  return static_cast<SimTime>(std::llround(ms * kMicrosPerMs));
}
constexpr double to_ms(SimTime t) {
  return static_cast<double>(t) / kMicrosPerMs;
}
constexpr double to_seconds(SimTime t) {
  return static_cast<double>(t) / kMicrosPerSecond;
}

}  // namespace nsb
