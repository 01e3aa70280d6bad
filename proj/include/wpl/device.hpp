#pragma once

#include <cstdint>
#include <vector>

#include "wpl/grid.hpp"

namespace wpl {

/// Parametric quantum-point-contact device: a smooth barrier strip along
/// y = barrier_y spanning the grid, pierced by one constriction per entry in
/// `qpc_x` (error-function wall/gap profiles), plus an optional
/// Gaussian-correlated disorder background. The smooth-wall shape is an
/// artifact of this toolkit; only the constriction layout and the disorder
/// scale are physical inputs.
struct QpcDeviceParams {
  std::vector<double> qpc_x;        // constriction centers (m)
  std::vector<double> gap_widths;   // opening widths, one per QPC (m)
  double barrier_y = 0.0;           // barrier strip center (m)
  double barrier_thickness = 0.0;   // strip full thickness (m)
  double wall_height = 0.0;         // J
  double edge_smoothing = 0.0;      // erf ramp scale (m); 0 -> 2*dx
  double disorder_rms = 0.0;        // J
  double disorder_correlation = 50e-9;  // m
  std::uint64_t seed = 0;
};

/// Deterministic for a fixed seed; rejects gaps narrower than 2*dx and
/// constrictions outside the grid. With disorder_rms = 0 the result is
/// symmetric under y-reflection about barrier_y.
RealField qpc_device_potential(const QpcDeviceParams& params, const GridSpec& grid);

/// Zero-mean Gaussian random field with Gaussian correlation (length
/// `correlation`), sample RMS scaled exactly to `rms`. Spectral synthesis;
/// bit-identical for a fixed seed.
RealField correlated_disorder(const GridSpec& grid, double rms,
                              double correlation, std::uint64_t seed);

/// Straight waveguide along x: smooth confining walls at |y-center| > w/2.
RealField waveguide_potential(const GridSpec& grid, double center_y,
                              double width, double wall_height,
                              double smoothing);

/// Two-lead Aharonov-Bohm ring: an annular channel of mean radius `radius`
/// and channel width `width` centered at the origin, with horizontal leads
/// of the same width attached on the left and right along y = 0.
RealField ab_ring_potential(const GridSpec& grid, double radius, double width,
                            double wall_height, double smoothing);

/// Adds a rectangular smooth-walled obstacle (used to terminate a guide).
void add_barrier(RealField& v, double x0, double x1, double y0, double y1,
                 double height, double smoothing);

}  // namespace wpl
