#pragma once

// Pinned physical constants (CODATA 2018 exact / recommended values).
// Single source of truth: no module redefines these. Code that needs a
// tweakable constant set (e.g. fault-injection tests) builds a Material
// from an explicit PhysicalConstants instance instead of editing globals.

namespace fluxsize {

struct PhysicalConstants {
  double electron_charge = 1.602176634e-19;   // C, magnitude
  double hbar = 1.054571817e-34;              // J s
  double electron_mass = 9.1093837015e-31;    // kg
  double bohr_magneton = 9.2740100783e-24;    // J/T
  double boltzmann = 1.380649e-23;            // J/K

  // von Klitzing resistance h/e^2, ohm
  double klitzing() const {
    return 2.0 * 3.14159265358979323846 * hbar / (electron_charge * electron_charge);
  }
};

inline constexpr PhysicalConstants kConstants{};

inline constexpr double kPi = 3.14159265358979323846;

// BCS weak-coupling ratio Delta(0) = 1.764 kB Tc
inline constexpr double kBcsGapToTc = 1.764;

} // namespace fluxsize
