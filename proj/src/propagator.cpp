#include "wpl/propagator.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "wpl/constants.hpp"
#include "wpl/fft.hpp"

namespace wpl {

AbsorbingMask make_absorbing_mask(const GridSpec& grid, double ramp_width,
                                  double strength) {
  if (ramp_width < 4.0 * grid.dx() || ramp_width < 4.0 * grid.dy())
    throw std::invalid_argument("absorbing mask: ramp narrower than 4 grid spacings");
  if (ramp_width > 0.5 * (grid.xmax - grid.xmin) ||
      ramp_width > 0.5 * (grid.ymax - grid.ymin))
    throw std::invalid_argument("absorbing mask: ramp wider than half the grid");
  if (!(strength > 0.0))
    throw std::invalid_argument("absorbing mask: strength must be positive");

  AbsorbingMask mask;
  mask.ramp_width = ramp_width;
  mask.strength = strength;
  mask.profile = RealField(grid, 1.0);

  // one-sided cos^2 ramp: 1 at depth >= w, exp(-strength) at the edge
  auto ramp = [&](double edge_distance) {
    if (edge_distance >= ramp_width) return 1.0;
    const double c = std::cos(0.5 * std::numbers::pi * edge_distance / ramp_width);
    return std::exp(-strength * c * c);
  };

  const auto xs = grid.x_coords();
  const auto ys = grid.y_coords();
  for (int iy = 0; iy < grid.ny; ++iy) {
    const double wy = ramp(ys[iy] - grid.ymin) * ramp(grid.ymax - grid.dy() - ys[iy]);
    for (int ix = 0; ix < grid.nx; ++ix) {
      const double wx = ramp(xs[ix] - grid.xmin) * ramp(grid.xmax - grid.dx() - xs[ix]);
      mask.profile.at(ix, iy) = wx * wy;
    }
  }
  return mask;
}

namespace {

cplx phase_factor(double energy, double dt) {
  const double arg = -energy * dt / constants::hbar;
  return {std::cos(arg), std::sin(arg)};
}

void multiply(ComplexField& f, const std::vector<cplx>& table) {
  const std::size_t n = f.amp.size();
  for (std::size_t i = 0; i < n; ++i) f.amp[i] *= table[i];
}

void multiply_mask(ComplexField& f, const RealField& mask) {
  const std::size_t n = f.amp.size();
  for (std::size_t i = 0; i < n; ++i) f.amp[i] *= mask.v[i];
}

}  // namespace

PropagationPlan make_plan(double dt, int steps, HamiltonianSpec hamiltonian,
                          std::optional<AbsorbingMask> mask, int sample_stride) {
  if (!(dt > 0.0)) throw std::invalid_argument("plan: dt must be positive");
  if (steps < 0) throw std::invalid_argument("plan: negative step count");
  if (!(hamiltonian.mass_x > 0.0) || !(hamiltonian.mass_y > 0.0))
    throw std::invalid_argument("plan: masses must be positive");
  if (sample_stride < 1) throw std::invalid_argument("plan: sample stride must be >= 1");

  const GridSpec& grid = hamiltonian.potential.grid;
  if (grid.size() == 0) throw std::invalid_argument("plan: potential has empty grid");
  if (mask && mask->profile.grid != grid)
    throw std::invalid_argument("plan: mask grid mismatch");

  PropagationPlan plan;
  plan.dt = dt;
  plan.steps = steps;
  plan.mask = std::move(mask);
  plan.sample_stride = sample_stride;

  const bool magnetic = hamiltonian.field.b_field != 0.0;
  if (magnetic) {
    if (hamiltonian.mass_x != hamiltonian.mass_y)
      throw std::invalid_argument("plan: magnetic propagation requires equal masses");
    if (hamiltonian.field.mass != hamiltonian.mass_x)
      throw std::invalid_argument("plan: field config mass differs from grid mass");

    const SplitTerms terms = split_hamiltonian(hamiltonian.field, hamiltonian.potential);
    const auto kx = grid.kx_coords();
    const auto ky = grid.ky_coords();
    const auto xs = grid.x_coords();
    const auto ys = grid.y_coords();

    plan.exp_v_half.resize(grid.size());
    plan.exp_tx.resize(grid.size());
    plan.exp_ty.resize(grid.size());
    for (int iy = 0; iy < grid.ny; ++iy)
      for (int ix = 0; ix < grid.nx; ++ix) {
        const std::size_t i = ix + static_cast<std::size_t>(grid.nx) * iy;
        plan.exp_v_half[i] = phase_factor(terms.v_eff.at(ix, iy), 0.5 * dt);
        plan.exp_tx[i] = phase_factor(terms.t_px_y(kx[ix], ys[iy]), dt);
        plan.exp_ty[i] = phase_factor(terms.t_py_x(ky[iy], xs[ix]), dt);
      }
  } else {
    const double hbar = constants::hbar;
    const auto kx = grid.kx_coords();
    const auto ky = grid.ky_coords();
    plan.exp_v_half.resize(grid.size());
    plan.exp_t.resize(grid.size());
    for (int iy = 0; iy < grid.ny; ++iy)
      for (int ix = 0; ix < grid.nx; ++ix) {
        const std::size_t i = ix + static_cast<std::size_t>(grid.nx) * iy;
        plan.exp_v_half[i] = phase_factor(hamiltonian.potential.at(ix, iy), 0.5 * dt);
        const double t = hbar * hbar * kx[ix] * kx[ix] / (2.0 * hamiltonian.mass_x) +
                         hbar * hbar * ky[iy] * ky[iy] / (2.0 * hamiltonian.mass_y);
        plan.exp_t[i] = phase_factor(t, dt);
      }
  }

  plan.hamiltonian = std::move(hamiltonian);
  return plan;
}

void step_split(ComplexField& field, const PropagationPlan& plan) {
  if (plan.magnetic())
    throw std::invalid_argument("step_split: magnetic plan routed to field-free stepper");
  if (field.rep != Rep::position)
    throw std::invalid_argument("step_split: field must be in position representation");
  if (field.grid != plan.hamiltonian.potential.grid)
    throw std::invalid_argument("step_split: grid mismatch");

  multiply(field, plan.exp_v_half);
  transform_inplace(field, Axis::both, Direction::forward);
  multiply(field, plan.exp_t);
  transform_inplace(field, Axis::both, Direction::inverse);
  multiply(field, plan.exp_v_half);
  if (plan.mask) multiply_mask(field, plan.mask->profile);
}

void step_split_magnetic(ComplexField& field, const PropagationPlan& plan) {
  if (!plan.magnetic())
    throw std::invalid_argument("step_split_magnetic: plan has B = 0 (use step_split)");
  if (field.rep != Rep::position)
    throw std::invalid_argument("step_split_magnetic: field must be in position representation");
  if (field.grid != plan.hamiltonian.potential.grid)
    throw std::invalid_argument("step_split_magnetic: grid mismatch");

  multiply(field, plan.exp_v_half);
  if (!plan.swap_magnetic_stages) {
    transform_inplace(field, Axis::x_only, Direction::forward);
    multiply(field, plan.exp_tx);
    transform_inplace(field, Axis::x_only, Direction::inverse);
    transform_inplace(field, Axis::y_only, Direction::forward);
    multiply(field, plan.exp_ty);
    transform_inplace(field, Axis::y_only, Direction::inverse);
  } else {
    transform_inplace(field, Axis::y_only, Direction::forward);
    multiply(field, plan.exp_ty);
    transform_inplace(field, Axis::y_only, Direction::inverse);
    transform_inplace(field, Axis::x_only, Direction::forward);
    multiply(field, plan.exp_tx);
    transform_inplace(field, Axis::x_only, Direction::inverse);
  }
  multiply(field, plan.exp_v_half);
  if (plan.mask) multiply_mask(field, plan.mask->profile);
}

ComplexField propagate(ComplexField field, const PropagationPlan& plan,
                       std::span<Recorder* const> recorders) {
  const bool magnetic = plan.magnetic();
  for (Recorder* r : recorders) r->sample(0, 0.0, field);
  for (int step = 1; step <= plan.steps; ++step) {
    if (magnetic)
      step_split_magnetic(field, plan);
    else
      step_split(field, plan);
    if (step % plan.sample_stride == 0) {
      const double t = step * plan.dt;
      for (Recorder* r : recorders) r->sample(step, t, field);
    }
  }
  return field;
}

void AutocorrelationRecorder::sample(int, double t, const ComplexField& field) {
  times_.push_back(t);
  values_.push_back(inner_product(initial_, field));
}

void CentroidRecorder::sample(int, double t, const ComplexField& field) {
  times_.push_back(t);
  centers_.push_back(position_expectation(field));
}

void NormRecorder::sample(int, double, const ComplexField& field) {
  norms_.push_back(norm(field));
}

void SnapshotRecorder::sample(int, double t, const ComplexField& field) {
  if (count_++ % every_ == 0) {
    snapshots_.push_back(field);
    times_.push_back(t);
  }
}

}  // namespace wpl
