#pragma once

#include <span>
#include <vector>

#include "wpl/fields.hpp"
#include "wpl/grid.hpp"
#include "wpl/propagator.hpp"

namespace wpl {

/// Transverse channel eigenproblem on a 1D cross-section: finite-difference
/// -(hbar^2/2m) d2/ds2 + V(s) with Dirichlet ends, eigenpairs sorted by
/// energy, eigenfunctions orthonormal w.r.t. the rectangle rule.
struct TransverseModes {
  std::vector<double> thresholds;              // E_n (J), ascending
  std::vector<std::vector<double>> functions;  // functions[n][i] on the section
};

/// `confinement` sampled with uniform `spacing`. Throws when fewer than
/// `count` bound modes exist (threshold below the confinement value at the
/// section ends).
TransverseModes solve_transverse_modes(std::span<const double> confinement,
                                       double spacing, double mass, int count);

/// A lead: an axis-aligned cross-section of the grid plus its channel modes.
/// `vertical` sections (fixed x, extended in y) describe guides along x.
struct LeadSpec {
  int id = 0;
  bool vertical = true;
  double position = 0.0;  // x of the section when vertical, else y
  double lo = 0.0, hi = 0.0;  // transverse extent
  TransverseModes modes;
  // grid attachment (filled by make_lead)
  int fixed_index = 0;           // index of the section line
  std::vector<int> span_indices; // transverse sample indices
};

/// Builds a lead on `grid`, solving `mode_count` modes of the confinement
/// profile cut from `potential` along the section.
LeadSpec make_lead(const GridSpec& grid, int id, bool vertical, double position,
                   double lo, double hi, const RealField& potential, double mass,
                   int mode_count);

/// Product of transverse mode `n` and a longitudinal Gaussian momentum
/// superposition exp(-(u-u0)^2/(4 sigma^2) + i sign k0 u), sigma = 1/(2 dk),
/// normalized. Requires k0 > 3 dk (unidirectional) and the envelope clear of
/// the lead section at t = 0 (4 sigma separation).
ComplexField lead_wavepacket(const GridSpec& grid, const LeadSpec& lead, int mode,
                             double k0, double dk, double launch_center,
                             int travel_sign);

/// Fermi function; T = 0 resolves to the step with f(mu) = 1/2.
double fermi(double energy, double mu, double temperature);

struct Reservoir {
  double mu = 0.0;           // J
  double temperature = 0.0;  // K, >= 0
};

/// r_c = sqrt(2 m E)/(e B). Requires B > 0.
double cyclotron_radius(double energy, double b_field, double mass);

struct TransmissionEntry {
  int lead_in = 0, mode_in = 0;
  int lead_out = 0, mode_out = 0;
  std::vector<double> t2;     // |t|^2 per energy bin
  std::vector<bool> valid;    // false near thresholds / outside the window
};

struct TransmissionTable {
  std::vector<double> energy;  // J
  int incident_lead = 0, incident_mode = 0;
  std::vector<double> incident_spectrum;  // |a_ref(E)|^2 normalization
  std::vector<TransmissionEntry> entries;

  const TransmissionEntry* find(int lead_out, int mode_out) const;
};

/// One wave-packet run: propagate a lead packet through `potential`,
/// Fourier-analyze the mode-projected amplitude at every lead section and
/// divide by the incident amplitude spectrum from a clean-guide reference
/// run of the same packet; amplitudes carry the group-velocity factor
/// sqrt(v_out/v_in). Bins within two grid steps of a mode threshold or with
/// negligible incident weight are flagged invalid.
struct TransmissionJob {
  GridSpec grid;
  RealField potential;
  FieldConfig field;  // mass (+ optional B) of the carriers
  double dt = 0.0;
  int steps = 0;
  double mask_width = 0.0;  // 0 -> 10% of extent
  double mask_strength = 6.0;
  std::vector<LeadSpec> leads;
  int incident_lead_index = 0;
  int incident_mode = 0;
  double k0 = 0.0, dk = 0.0;
  double launch_center = 0.0;
  int travel_sign = +1;
  int sample_stride = 1;
};

TransmissionTable extract_transmission(const TransmissionJob& job,
                                       std::span<const double> energies);

/// Multi-terminal current into lead i:
///   I_i = (e/h) Int dE sum_{j != i, n_i, n_j} |t|^2 (f_i - f_j).
/// T = 0 reservoirs integrate exactly on the piecewise-linear table; finite
/// temperatures use the tabulated grid and require the Fermi difference tail
/// (1e-6) to be covered by the energy window.
double landauer_current(const TransmissionTable& table,
                        std::span<const Reservoir> reservoirs, int lead);

/// Time-integrated gauge-invariant probability flux through a horizontal
/// segment (y = const, x in [x_lo, x_hi]), positive toward +y. Used for the
/// magnetic-focusing transmission estimate.
class FluxRecorder : public Recorder {
 public:
  FluxRecorder(const GridSpec& grid, const FieldConfig& field, double y,
               double x_lo, double x_hi);
  void sample(int step, double t, const ComplexField& field) override;
  /// trapezoid sum of the recorded flux(t)
  double total() const;
  const std::vector<double>& flux() const { return flux_; }

 private:
  FieldConfig config_;
  int iy_;
  int ix_lo_, ix_hi_;
  double last_t_ = 0.0;
  std::vector<double> times_;
  std::vector<double> flux_;
};

}  // namespace wpl
