#include "wpl/fields.hpp"

#include <cmath>
#include <stdexcept>

#include "wpl/constants.hpp"

namespace wpl {

double FieldConfig::larmor() const {
  return std::abs(charge) * b_field / (2.0 * mass);
}

double FieldConfig::omega_signed() const {
  return charge * b_field / (2.0 * mass);
}

double FieldConfig::in_plane_e() const {
  switch (orientation) {
    case FieldOrientation::electric_only:
    case FieldOrientation::crossed:
      return e_field;
    default:
      return 0.0;
  }
}

void FieldConfig::validate() const {
  if (!(mass > 0.0)) throw std::invalid_argument("field config: mass must be positive");
  switch (orientation) {
    case FieldOrientation::none:
      if (e_field != 0.0 || b_field != 0.0)
        throw std::invalid_argument("field config: 'none' orientation with nonzero fields");
      break;
    case FieldOrientation::electric_only:
      if (b_field != 0.0)
        throw std::invalid_argument("field config: electric-only with nonzero B");
      break;
    case FieldOrientation::magnetic_only:
      if (e_field != 0.0)
        throw std::invalid_argument("field config: magnetic-only with nonzero E");
      break;
    case FieldOrientation::parallel:
    case FieldOrientation::crossed:
      break;
  }
}

SplitTerms split_hamiltonian(const FieldConfig& config, const RealField& v) {
  config.validate();
  const double hbar = constants::hbar;
  const double m = config.mass;
  const double w = config.omega_signed();

  SplitTerms terms;
  terms.t_px_y = [hbar, m, w](double kx, double y) {
    const double px = hbar * kx;
    return px * px / (2.0 * m) + w * y * px;
  };
  terms.t_py_x = [hbar, m, w](double ky, double x) {
    const double py = hbar * ky;
    return py * py / (2.0 * m) - w * x * py;
  };

  terms.v_eff = v;
  if (w != 0.0) {
    const auto xs = v.grid.x_coords();
    const auto ys = v.grid.y_coords();
    for (int iy = 0; iy < v.grid.ny; ++iy)
      for (int ix = 0; ix < v.grid.nx; ++ix)
        terms.v_eff.at(ix, iy) +=
            0.5 * m * w * w * (xs[ix] * xs[ix] + ys[iy] * ys[iy]);
  }
  return terms;
}

RealField uniform_field_potential(const FieldConfig& config, const GridSpec& grid) {
  config.validate();
  RealField v(grid);
  const auto xs = grid.x_coords();
  const auto ys = grid.y_coords();
  const double ex = config.in_plane_e();
  const double w = config.omega_signed();
  for (int iy = 0; iy < grid.ny; ++iy)
    for (int ix = 0; ix < grid.nx; ++ix) {
      double val = -config.charge * ex * xs[ix];
      if (w != 0.0)
        val += 0.5 * config.mass * w * w * (xs[ix] * xs[ix] + ys[iy] * ys[iy]);
      v.at(ix, iy) = val;
    }
  return v;
}

RealField electric_potential(const FieldConfig& config, const GridSpec& grid) {
  config.validate();
  RealField v(grid);
  const auto xs = grid.x_coords();
  const double ex = config.in_plane_e();
  for (int iy = 0; iy < grid.ny; ++iy)
    for (int ix = 0; ix < grid.nx; ++ix)
      v.at(ix, iy) = -config.charge * ex * xs[ix];
  return v;
}

}  // namespace wpl
