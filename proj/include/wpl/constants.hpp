#pragma once

// Physical constants (SI, CODATA 2018) and the unit conversions used by the
// scenario layer. The propagation engine works in SI internally; molecular
// inputs (Hartree/Bohr/amu) are converted at the boundary.

namespace wpl::constants {

inline constexpr double hbar = 1.054571817e-34;       // J s
inline constexpr double planck_h = 6.62607015e-34;    // J s
inline constexpr double elementary_charge = 1.602176634e-19;  // C
inline constexpr double electron_mass = 9.1093837015e-31;     // kg
inline constexpr double atomic_mass_unit = 1.66053906660e-27; // kg
inline constexpr double vacuum_permittivity = 8.8541878128e-12; // F/m
inline constexpr double boltzmann = 1.380649e-23;     // J/K
inline constexpr double speed_of_light = 2.99792458e8; // m/s

inline constexpr double hartree = 4.3597447222071e-18; // J
inline constexpr double bohr_radius = 5.29177210903e-11; // m
inline constexpr double electron_volt = 1.602176634e-19; // J

// GaAs 2DEG conventions used by the mesoscopic and Hall modules.
inline constexpr double gaas_effective_mass = 0.067 * electron_mass;
inline constexpr double gaas_epsilon_r = 12.9;

inline constexpr double joule_to_ev(double e) { return e / electron_volt; }
inline constexpr double ev_to_joule(double e) { return e * electron_volt; }
inline constexpr double joule_to_hartree(double e) { return e / hartree; }
inline constexpr double hartree_to_joule(double e) { return e * hartree; }
inline constexpr double meter_to_bohr(double x) { return x / bohr_radius; }
inline constexpr double bohr_to_meter(double x) { return x * bohr_radius; }

}  // namespace wpl::constants
