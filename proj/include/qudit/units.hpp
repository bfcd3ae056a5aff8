#pragma once

#include <numbers>

namespace qudit {

inline constexpr double two_pi = 2.0 * std::numbers::pi;

// All module-internal frequencies are angular (rad/s); files and CLI flags use GHz.
inline constexpr double ghz_to_rad(double ghz) { return ghz * two_pi * 1e9; }
inline constexpr double rad_to_ghz(double rad) { return rad / (two_pi * 1e9); }

} // namespace qudit
