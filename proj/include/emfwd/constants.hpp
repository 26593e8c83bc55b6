#pragma once

namespace emfwd {

inline constexpr double kPi = 3.14159265358979323846;

// Permeability of free space, H/m. Single shared constant, SI units throughout.
inline constexpr double kMu0 = 4.0e-7 * kPi;

inline constexpr const char* kVersion = "0.1.0";

}  // namespace emfwd
