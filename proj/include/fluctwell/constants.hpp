#pragma once

// CODATA 2018 values, SI units.
namespace fluctwell::constants {

inline constexpr double pi = 3.141592653589793238462643383279502884;
inline constexpr double hbar = 1.054571817e-34;          // J s
inline constexpr double electron_mass = 9.1093837015e-31;  // kg
inline constexpr double atomic_mass_unit = 1.66053906660e-27;  // kg
inline constexpr double angstrom = 1e-10;                 // m

}  // namespace fluctwell::constants
