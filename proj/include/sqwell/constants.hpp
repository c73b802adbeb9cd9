#pragma once

namespace sqwell::constants {

// CODATA 2018, SI units.
inline constexpr double kHbar = 1.054571817e-34;           // J s
inline constexpr double kElectronMass = 9.1093837015e-31;  // kg
inline constexpr double kElectronVolt = 1.602176634e-19;   // J

}  // namespace sqwell::constants
