#pragma once

namespace fso_acq {

inline constexpr double kPlanckConstant = 6.62607015e-34;    // J/Hz (CODATA 2018, exact)
inline constexpr double kSpeedOfLight = 2.99792458e8;        // m/s (exact)
inline constexpr double kEulerGamma = 0.57721566490153286061;
inline constexpr double kPi = 3.14159265358979323846;

}  // namespace fso_acq
