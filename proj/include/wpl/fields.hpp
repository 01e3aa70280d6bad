#pragma once

#include <functional>

#include "wpl/grid.hpp"

namespace wpl {

/// Uniform external field layout on the 2D simulation plane. The magnetic
/// field is always perpendicular (z); the electric field is along z for the
/// parallel configuration (no in-plane scalar term on this engine) and along
/// x for the crossed / electric-only configurations.
enum class FieldOrientation {
  none,           // free
  electric_only,  // E along x, B = 0
  magnetic_only,  // B along z, E = 0
  parallel,       // E along z, B along z
  crossed         // E along x, B along z
};

struct FieldConfig {
  FieldOrientation orientation = FieldOrientation::none;
  double e_field = 0.0;  // V/m
  double b_field = 0.0;  // tesla
  double mass = 0.0;     // kg
  double charge = 0.0;   // C, signed (-e for electrons)

  /// Larmor frequency e*B/(2m) as quoted in the Hamiltonians (positive).
  double larmor() const;
  /// Signed rotation frequency q*B/(2m); the electron convention of the
  /// printed Hamiltonians corresponds to the negative of larmor().
  double omega_signed() const;
  /// In-plane electric field component (x direction), signed.
  double in_plane_e() const;

  void validate() const;  // throws on inconsistent orientation/field values
};

/// The three-way splitting of the symmetric-gauge magnetic Hamiltonian:
///   H = T_{px,y} + T_{py,x} + V_eff,
///   T_{px,y} = px^2/2m + w y px,   T_{py,x} = py^2/2m - w x py,
///   V_eff    = 1/2 m w^2 (x^2+y^2) + V(x,y),      w = qB/2m (signed).
/// The mixed kinetic terms are diagonal in the (kx,y) and (ky,x)
/// representations; the generators return energies in joules with px = hbar
/// kx. With B = 0 they reduce to the field-free p^2/2m and V.
struct SplitTerms {
  std::function<double(double kx, double y)> t_px_y;
  std::function<double(double ky, double x)> t_py_x;
  RealField v_eff;
};

SplitTerms split_hamiltonian(const FieldConfig& config, const RealField& v);

/// Scalar potential of the uniform-field configuration sampled on the grid:
/// -qE.r for the in-plane electric part plus the Larmor parabola
/// 1/2 m w^2 (x^2+y^2) when B != 0. Momentum-coupled parts live in
/// split_hamiltonian.
RealField uniform_field_potential(const FieldConfig& config, const GridSpec& grid);

/// Only the -qE.r electric part. This is the potential to hand to a
/// propagation plan, which adds the Larmor parabola itself through
/// split_hamiltonian.
RealField electric_potential(const FieldConfig& config, const GridSpec& grid);

}  // namespace wpl
