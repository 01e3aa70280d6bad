#include "wpl/photodetachment.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "wpl/constants.hpp"
#include "wpl/spectral.hpp"

namespace wpl {

cplx free_green_distance(double separation, double energy, double mass) {
  if (!(separation > 0.0))
    throw std::invalid_argument("free_green: coincident points");
  const double hbar = constants::hbar;
  const double prefactor =
      mass / (2.0 * std::numbers::pi * hbar * hbar * separation);
  if (energy < 0.0) {
    const double kappa = std::sqrt(-2.0 * mass * energy) / hbar;
    return {prefactor * std::exp(-kappa * separation), 0.0};
  }
  const double k = std::sqrt(2.0 * mass * energy) / hbar;
  const double arg = k * separation;
  return prefactor * cplx{std::cos(arg), std::sin(arg)};
}

cplx free_green(const Vec3& r, const Vec3& r_prime, double energy, double mass) {
  const double dx = r.x - r_prime.x;
  const double dy = r.y - r_prime.y;
  const double dz = r.z - r_prime.z;
  return free_green_distance(std::sqrt(dx * dx + dy * dy + dz * dz), energy, mass);
}

double threshold_current(double hnu, double electron_affinity, double prefactor) {
  if (!(prefactor > 0.0))
    throw std::invalid_argument("threshold_current: prefactor must be positive");
  const double excess = hnu - std::abs(electron_affinity);
  return excess > 0.0 ? prefactor * std::sqrt(excess) : 0.0;
}

CurrentCurve field_current(std::span<const double> energies,
                           const FieldConfig& config, const SourceSpec& source,
                           const FieldCurrentParams& params) {
  if (energies.size() < 2)
    throw std::invalid_argument("field_current: need an energy grid");
  config.validate();
  const GridSpec& grid = params.grid;
  if (source.width < 3.0 * grid.dx())
    throw std::invalid_argument("field_current: source width below 3*dx");

  const double extent = std::min(grid.xmax - grid.xmin, grid.ymax - grid.ymin);
  const double mask_width = params.mask_width > 0.0 ? params.mask_width : 0.1 * extent;
  AbsorbingMask mask = make_absorbing_mask(grid, mask_width, params.mask_strength);

  HamiltonianSpec h;
  h.mass_x = h.mass_y = config.mass;
  h.potential = electric_potential(config, grid);
  h.field = config;

  PropagationPlan plan = make_plan(params.dt, params.steps, std::move(h),
                                   std::move(mask));

  ComplexField initial = gaussian_packet(
      grid, source.position, {source.width, source.width}, {0.0, 0.0});
  for (cplx& a : initial.amp) a *= source.strength;

  AutocorrelationRecorder autocorr(initial);
  Recorder* recs[] = {&autocorr};
  propagate(initial, plan, recs);

  AutocorrelationSeries series;
  series.dt = plan.dt * plan.sample_stride;
  series.values = autocorr.values();

  CurrentCurve curve;
  curve.final_autocorr = std::abs(series.values.back());
  curve.decayed = curve.final_autocorr < 1e-3;
  if (config.b_field == 0.0 && !curve.decayed)
    throw std::runtime_error(
        "field_current: autocorrelation did not decay (|C(T)| = " +
        std::to_string(curve.final_autocorr) +
        "); enlarge the grid or strengthen the mask");

  // J(E) = -(2/hbar) Im <S|G|S> = (2 pi / hbar) * weighted LDOS
  const SpectrumSeries ldos = spectrum_from_autocorrelation(
      series, params.window, params.eta, energies.front(), energies.back(),
      static_cast<int>(energies.size()));

  curve.energy.assign(energies.begin(), energies.end());
  curve.current.resize(ldos.intensity.size());
  const double scale = 2.0 * std::numbers::pi / constants::hbar;
  for (std::size_t i = 0; i < ldos.intensity.size(); ++i)
    curve.current[i] = scale * ldos.intensity[i];
  const double peak = *std::max_element(curve.current.begin(), curve.current.end());
  if (peak > 0.0)
    for (double& j : curve.current) j /= peak;
  return curve;
}

}  // namespace wpl
