#pragma once

namespace pcvi {

inline constexpr double kSpeedOfLight = 299792458.0;      // m/s
inline constexpr double kHbar = 1.054571817e-34;          // J*s
inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

// HeNe line; every wavelength in the engine is configurable, this is only
// the default used when a setup file does not say otherwise.
inline constexpr double kDefaultWavelength = 632.8e-9;    // m

// Sidereal-day approximation used by the rotation-sensing planner.
inline constexpr double kEarthSpinRate = kTwoPi / 86400.0; // rad/s

} // namespace pcvi
