#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "wpl/grid.hpp"

namespace wpl {

struct Particle {
  Vec2 pos;          // m, in-plane
  Vec2 vel;          // m/s
  double charge = 0; // C, signed
  double mass = 0;   // kg
};

/// Hall-bar layout: a rectangle [0,Lx] x [0,Ly] of mobile electrons above a
/// donor layer of fixed positive charges at vertical offset donor_offset.
/// Donor lateral positions are seeded uniform and immutable during a run.
struct DeviceGeometry {
  double lx = 2.5e-6;            // m
  double ly = 1.0e-6;            // m
  int n_donors = 0;
  double donor_offset = 10e-9;   // m
  double epsilon_r = 12.9;
  double b_field = 0.0;          // tesla, z
  std::uint64_t donor_seed = 1;
  std::vector<Vec2> donor_positions;  // filled by build_geometry
};

DeviceGeometry build_geometry(double lx, double ly, int n_donors,
                              double donor_offset, double epsilon_r,
                              double b_field, std::uint64_t donor_seed);

/// Pairwise Coulomb + donor forces with Plummer softening s:
///   F_k = sum_{l != k} q_k q_l/(4 pi e0 er) (r_k - r_l)/(|r_k-r_l|^2+s^2)^{3/2}
/// (donor separations include the vertical offset). Exact O(N^2), parallel
/// over the target particle with a sequential per-target sum, so results are
/// independent of the thread count.
std::vector<Vec2> coulomb_forces(std::span<const Particle> particles,
                                 const DeviceGeometry& geometry, double softening);

enum class BorisKick {
  printed,   // rotate, then the full Coulomb impulse in one line
  half_kick  // half impulse, rotate, half impulse
};

/// One Boris step with the rational rotation coefficients
/// (1-w^2 dt^2)/(1+w^2 dt^2) and 2 w dt/(1+w^2 dt^2); `omega` is the signed
/// half-cyclotron (Larmor) rotation rate, +eB/2m for electrons in B = +z.
/// Positions advance with the updated velocity.
void boris_step(std::span<Particle> particles, std::span<const Vec2> forces,
                double dt, double omega, BorisKick kick = BorisKick::printed);

/// Instantaneous Coulomb potential of all charges at `point` (same softening
/// as the forces; donors include the vertical offset). Charges closer than
/// `exclude_radius` are skipped (freshly injected electrons at the point).
double point_potential(Vec2 point, std::span<const Particle> particles,
                       const DeviceGeometry& geometry, double softening,
                       double exclude_radius = 0.0);

struct ContactSpec {
  int id = 0;  // 0 source, 1 drain
  std::vector<Vec2> points;   // observation points on the contact strip
  double v_target = 0.0;      // V
  double window = 0.0;        // averaging period dt_av (s)
  double dead_band = 0.0;     // V; 0 -> 1% of |v_target|
  double capture_radius = 0.0;  // m; 0 -> 5% of Ly
  double entry_offset = 0.0;  // m, injection displacement into the device
  double injection_temperature = 4.0;  // K, thermal speed of new electrons
};

/// Window-averaged potentials of one contact.
struct ContactObservation {
  int contact = 0;
  std::vector<double> v_avg;  // per observation point
};

struct ContactAction {
  int contact = 0;
  bool inject = false;
  int inject_point = -1;
  bool remove = false;
  int remove_point = -1;
};

/// Equipotential rule: per contact at most one injection at the largest
/// positive deviation (if it exceeds the dead band) and one removal at the
/// largest negative deviation. Deviations within the band leave the
/// propagation untouched.
std::vector<ContactAction> contact_update(std::span<const ContactSpec> contacts,
                                          std::span<const ContactObservation> observations);

struct HallEvent {
  double t = 0.0;
  int contact = 0;
  enum class Kind { inject, remove, remove_skipped } kind = Kind::inject;
  Vec2 where;
};

struct EnsembleSnapshot {
  double t = 0.0;
  std::vector<Particle> particles;
};

struct HallMaps {
  RealField v_avg;      // V
  RealField current_x;  // A/m (sheet current density)
  RealField current_y;
};

/// Time-averaged potential and cloud-in-cell current-density maps.
/// Requires >= 100 snapshots.
HallMaps accumulate_maps(std::span<const EnsembleSnapshot> snapshots,
                         const DeviceGeometry& geometry, const GridSpec& stats_grid,
                         double softening);

struct HallRunParams {
  double dt = 1e-16;          // s
  int steps = 0;
  int n_initial = 0;          // initial random electrons
  std::uint64_t seed = 2;
  double softening = 1e-9;    // m
  BorisKick kick = BorisKick::printed;
  int snapshot_stride = 0;    // 0 -> steps/200
  GridSpec stats_grid;        // maps resolution
  double convergence_band = 0.0;  // V; 0 -> 20% of |v_target| of contact 0
  double rate_tolerance = 0.10;
  double dwell_fraction = 0.25;   // final fraction of the run that must hold the band
};

struct RunStatistics {
  std::vector<HallEvent> events;
  std::vector<double> window_times;          // control instants
  std::vector<double> extremal_deviation;    // max |dev| over contacts/points per window
  double injection_rate = 0.0;               // events/s over the dwell window
  double removal_rate = 0.0;
  bool band_converged = false;
  bool rates_balanced = false;
  int n_initial = 0;
  int n_final = 0;
  HallMaps maps;
  std::vector<EnsembleSnapshot> snapshots;
};

/// Main loop: forces -> Boris -> specular walls -> potential accumulation ->
/// contact control at every window boundary, with periodic snapshots and the
/// statistical maps accumulated at the end. Deterministic for fixed seeds.
/// Aborts (std::runtime_error) when any speed exceeds c/100.
RunStatistics run_steady_state(const DeviceGeometry& geometry,
                               std::vector<ContactSpec> contacts,
                               const HallRunParams& params);

}  // namespace wpl
