#pragma once

namespace wpl {

/// CH3I potential-energy-surface constants (Hartree / Bohr units). The
/// defaults are the published parameter set; individual values can be
/// overridden through the [pes] config section.
struct PesParams {
  // ground surface
  double d_e = 0.0874;     // Hartree, Morse depth
  double e_star = 0.0346;  // Hartree, dissociation offset
  double alpha = 0.4914;   // 1/a_B, coupling range
  double beta = 0.899;     // 1/a_B, Morse range
  double r_ci_e = 4.043;   // a_B, C-I equilibrium
  double r_cx_e = 0.6197;  // a_B, C-X equilibrium
  double k = 0.0363;       // Hartree/a_B^2, asymptotic stiffness
  double k_e = 0.1463;     // Hartree/a_B^2, equilibrium stiffness
  // excited surface
  double ex_a = 9.618;     // Hartree
  double ex_alpha = 1.4;   // 1/a_B
  double ex_mix = 0.2;     // dimensionless r_CX admixture
  double ex_b = 2.604;     // Hartree
  double ex_beta = 1.2;    // 1/a_B
  double ex_k = 0.0362;    // Hartree/a_B^2
};

/// Ground-state surface: Morse in r_CI plus a coupled harmonic term in r_CX
/// whose stiffness and equilibrium relax with the C-I separation. Lengths in
/// Bohr radii, result in Hartree. Total function.
double v_ground(double r_cx, double r_ci, const PesParams& p = {});

/// Excited (dissociative) surface, nonnegative on the physical quadrant.
double v_excited(double r_cx, double r_ci, const PesParams& p = {});

}  // namespace wpl
