#pragma once

#include <span>
#include <string>
#include <vector>

#include "wpl/fields.hpp"
#include "wpl/grid.hpp"
#include "wpl/propagator.hpp"

namespace wpl {

/// Localized Gaussian source replacing the point emitter: amplitude
/// `strength`, width `width` (psi ~ exp(-r^2/(2 width^2))) at `position`.
struct SourceSpec {
  Vec2 position;
  double strength = 1.0;
  double width = 0.0;  // m
};

/// Free-space retarded Green function
///   G(r,r';E) = m / (2 pi hbar^2 R) exp(-R sqrt(-2mE)/hbar),  R = |r-r'|,
/// continued to E > 0 with sqrt(-2mE) -> -i hbar k, k = sqrt(2mE)/hbar
/// (outgoing branch). Diverges at R = 0; use the regularized source there.
cplx free_green(const Vec3& r, const Vec3& r_prime, double energy, double mass);
cplx free_green_distance(double separation, double energy, double mass);

/// Threshold law J = prefactor * Theta(hnu - |E_A|) * sqrt(hnu - |E_A|).
double threshold_current(double hnu, double electron_affinity, double prefactor);

/// Numeric total-current pipeline parameters. The propagation grid must be
/// large enough for the absorbing mask to collect all escaping flux.
struct FieldCurrentParams {
  GridSpec grid;
  double dt = 0.0;
  int steps = 0;
  double mask_width = 0.0;    // 0 -> 10% of the grid extent
  double mask_strength = 6.0;
  double eta = 0.0;           // resolvent damping (J)
  Window window = Window::hann;
};

struct CurrentCurve {
  std::vector<double> energy;   // J
  std::vector<double> current;  // normalized to max 1
  std::string config_tag;
  bool decayed = false;         // |C(T)| below the escape diagnostic bound
  double final_autocorr = 0.0;  // |C(T)|
};

/// Places the Gaussian source, propagates it under the uniform-field
/// Hamiltonian with absorbing boundaries, and transforms C(t) into
///   J(E) = -(2/hbar) Im <S|G(E)|S>,
/// normalized to max 1 (the physical prefactor carries unspecified dipole
/// constants). For configurations without magnetic confinement a
/// non-decaying C(t) (grid too small / mask too weak) raises a runtime
/// error; magnetically bound configurations rely on `eta` damping instead.
CurrentCurve field_current(std::span<const double> energies,
                           const FieldConfig& config, const SourceSpec& source,
                           const FieldCurrentParams& params);

}  // namespace wpl
