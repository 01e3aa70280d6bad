#pragma once

#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "wpl/fields.hpp"
#include "wpl/grid.hpp"

namespace wpl {

/// Multiplicative boundary absorber, cos^2 ramp: 1 in the interior, falling
/// to exp(-strength) at the grid edge over `ramp_width` on every side.
struct AbsorbingMask {
  RealField profile;
  double ramp_width = 0.0;
  double strength = 0.0;
};

/// Requires ramp_width >= 4*dx and at most half the grid extent per side.
AbsorbingMask make_absorbing_mask(const GridSpec& grid, double ramp_width,
                                  double strength);

/// Hamiltonian of one propagation. `potential` is the bare V(x,y) in joules;
/// when the field configuration carries B != 0 the Larmor parabola is added
/// internally (split_hamiltonian), so it must not be baked into `potential`.
/// Distinct masses per axis support the Jacobi kinetic term of the molecular
/// scenarios; magnetic propagation requires mass_x == mass_y.
struct HamiltonianSpec {
  double mass_x = 0.0;  // kg
  double mass_y = 0.0;  // kg
  RealField potential;
  FieldConfig field;  // orientation none/electric_only -> field-free algorithm
};

/// Time-stepping plan with precomputed per-stage phase tables. Rebuild the
/// plan (make_plan) whenever dt or the Hamiltonian changes.
struct PropagationPlan {
  double dt = 0.0;
  int steps = 0;
  HamiltonianSpec hamiltonian;
  std::optional<AbsorbingMask> mask;
  int sample_stride = 1;
  bool swap_magnetic_stages = false;  // exchange the x/y partial stages

  bool magnetic() const { return hamiltonian.field.b_field != 0.0; }

  // phase tables (filled by make_plan)
  std::vector<cplx> exp_v_half;  // position space, half step
  std::vector<cplx> exp_t;       // field-free kinetic, momentum space
  std::vector<cplx> exp_tx;      // magnetic, (kx, y) mixed representation
  std::vector<cplx> exp_ty;      // magnetic, (ky, x) mixed representation
};

PropagationPlan make_plan(double dt, int steps, HamiltonianSpec hamiltonian,
                          std::optional<AbsorbingMask> mask = std::nullopt,
                          int sample_stride = 1);

/// One symmetrized field-free step
///   psi <- M exp(-i dt V/2h) F^-1 exp(-i dt T/h) F exp(-i dt V/2h) psi
/// (M = absorbing mask if present). Norm-preserving without mask. Rejects
/// magnetic plans and fields not in position representation.
void step_split(ComplexField& field, const PropagationPlan& plan);

/// One symmetrized magnetic step using partial transforms:
///   psi <- M exp(-iV_eff dt/2h) [y-stage] [x-stage] exp(-iV_eff dt/2h) psi,
/// where the x stage multiplies exp(-i dt T_{px,y}/h) in the (kx,y)
/// representation and the y stage exp(-i dt T_{py,x}/h) in (ky,x).
/// Rejects B = 0 plans (use step_split).
void step_split_magnetic(ComplexField& field, const PropagationPlan& plan);

/// Observer invoked at t=0 and after every sample_stride-th step, in the
/// order given; with stride 1 a propagation of N steps produces N+1 samples.
class Recorder {
 public:
  virtual ~Recorder() = default;
  virtual void sample(int step, double t, const ComplexField& field) = 0;
};

/// Runs plan.steps steps (dispatching on the field configuration) and feeds
/// the recorders. Deterministic: fixed stage and recorder order.
ComplexField propagate(ComplexField field, const PropagationPlan& plan,
                       std::span<Recorder* const> recorders = {});

/// C(t) = <initial | psi(t)> at each sample.
class AutocorrelationRecorder : public Recorder {
 public:
  explicit AutocorrelationRecorder(ComplexField initial)
      : initial_(std::move(initial)) {}
  void sample(int step, double t, const ComplexField& field) override;

  const std::vector<cplx>& values() const { return values_; }
  const std::vector<double>& times() const { return times_; }

 private:
  ComplexField initial_;
  std::vector<cplx> values_;
  std::vector<double> times_;
};

/// <r>(t) trace (classical-orbit comparisons).
class CentroidRecorder : public Recorder {
 public:
  void sample(int step, double t, const ComplexField& field) override;
  const std::vector<double>& times() const { return times_; }
  const std::vector<Vec2>& centers() const { return centers_; }

 private:
  std::vector<double> times_;
  std::vector<Vec2> centers_;
};

/// Norm(t) trace.
class NormRecorder : public Recorder {
 public:
  void sample(int step, double t, const ComplexField& field) override;
  const std::vector<double>& norms() const { return norms_; }

 private:
  std::vector<double> norms_;
};

/// Keeps deep copies of the field every snapshot_every samples.
class SnapshotRecorder : public Recorder {
 public:
  explicit SnapshotRecorder(int snapshot_every = 1)
      : every_(snapshot_every < 1 ? 1 : snapshot_every) {}
  void sample(int step, double t, const ComplexField& field) override;
  const std::vector<ComplexField>& snapshots() const { return snapshots_; }
  const std::vector<double>& times() const { return times_; }

 private:
  int every_;
  int count_ = 0;
  std::vector<ComplexField> snapshots_;
  std::vector<double> times_;
};

}  // namespace wpl
