#include "wpl/device.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "wpl/fft.hpp"

namespace wpl {

namespace {

// Smooth indicator of |q| < half_width, erf ramp of scale s.
double inside_band(double q, double half_width, double s) {
  return 0.5 * (std::erf((half_width - std::abs(q)) / s) + 1.0);
}

// Smooth indicator of q < edge.
double below_edge(double q, double edge, double s) {
  return 0.5 * (std::erf((edge - q) / s) + 1.0);
}

}  // namespace

RealField correlated_disorder(const GridSpec& grid, double rms,
                              double correlation, std::uint64_t seed) {
  RealField out(grid);
  out.tag = "disorder seed=" + std::to_string(seed);
  if (rms == 0.0) return out;
  if (!(correlation > 0.0))
    throw std::invalid_argument("disorder: correlation length must be positive");

  ComplexField noise(grid);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (cplx& c : noise.amp) c = cplx{gauss(rng), 0.0};

  transform_inplace(noise, Axis::both, Direction::forward);
  const auto kx = grid.kx_coords();
  const auto ky = grid.ky_coords();
  const double l2 = 0.25 * correlation * correlation;
  for (int iy = 0; iy < grid.ny; ++iy)
    for (int ix = 0; ix < grid.nx; ++ix) {
      const double k2 = kx[ix] * kx[ix] + ky[iy] * ky[iy];
      noise.at(ix, iy) *= std::exp(-k2 * l2);
    }
  transform_inplace(noise, Axis::both, Direction::inverse);

  double mean = 0.0;
  for (const cplx& c : noise.amp) mean += c.real();
  mean /= static_cast<double>(noise.amp.size());
  double var = 0.0;
  for (const cplx& c : noise.amp) {
    const double d = c.real() - mean;
    var += d * d;
  }
  var /= static_cast<double>(noise.amp.size());
  if (var == 0.0) throw std::runtime_error("disorder: degenerate sample variance");
  const double scale = rms / std::sqrt(var);
  for (std::size_t i = 0; i < out.v.size(); ++i)
    out.v[i] = (noise.amp[i].real() - mean) * scale;
  return out;
}

RealField qpc_device_potential(const QpcDeviceParams& params, const GridSpec& grid) {
  if (params.qpc_x.empty())
    throw std::invalid_argument("qpc device: need at least one constriction");
  if (params.qpc_x.size() != params.gap_widths.size())
    throw std::invalid_argument("qpc device: one gap width per constriction");
  for (double w : params.gap_widths)
    if (w < 2.0 * grid.dx())
      throw std::invalid_argument("qpc device: gap narrower than 2*dx");
  for (double x : params.qpc_x)
    if (x < grid.xmin || x >= grid.xmax)
      throw std::invalid_argument("qpc device: constriction outside grid");
  if (params.barrier_y < grid.ymin || params.barrier_y >= grid.ymax)
    throw std::invalid_argument("qpc device: barrier outside grid");
  if (!(params.barrier_thickness > 0.0) || !(params.wall_height > 0.0))
    throw std::invalid_argument("qpc device: barrier thickness and wall height must be positive");

  const double s = params.edge_smoothing > 0.0 ? params.edge_smoothing : 2.0 * grid.dx();
  RealField v(grid);
  const auto xs = grid.x_coords();
  const auto ys = grid.y_coords();
  for (int iy = 0; iy < grid.ny; ++iy) {
    const double strip = inside_band(ys[iy] - params.barrier_y,
                                     0.5 * params.barrier_thickness, s);
    for (int ix = 0; ix < grid.nx; ++ix) {
      double closed = strip;
      for (std::size_t q = 0; q < params.qpc_x.size(); ++q) {
        // multiply by the smooth "outside this gap" factor
        closed *= 1.0 - inside_band(xs[ix] - params.qpc_x[q],
                                    0.5 * params.gap_widths[q], s);
      }
      v.at(ix, iy) = params.wall_height * closed;
    }
  }

  if (params.disorder_rms > 0.0) {
    const RealField d = correlated_disorder(grid, params.disorder_rms,
                                            params.disorder_correlation,
                                            params.seed);
    for (std::size_t i = 0; i < v.v.size(); ++i) v.v[i] += d.v[i];
    v.tag = d.tag;
  }
  return v;
}

RealField waveguide_potential(const GridSpec& grid, double center_y,
                              double width, double wall_height,
                              double smoothing) {
  RealField v(grid);
  const auto ys = grid.y_coords();
  for (int iy = 0; iy < grid.ny; ++iy) {
    const double open = inside_band(ys[iy] - center_y, 0.5 * width, smoothing);
    const double val = wall_height * (1.0 - open);
    for (int ix = 0; ix < grid.nx; ++ix) v.at(ix, iy) = val;
  }
  return v;
}

RealField ab_ring_potential(const GridSpec& grid, double radius, double width,
                            double wall_height, double smoothing) {
  RealField v(grid);
  const auto xs = grid.x_coords();
  const auto ys = grid.y_coords();
  const double lead_reach = radius - 0.25 * width;  // leads overlap the ring band
  for (int iy = 0; iy < grid.ny; ++iy) {
    const double y = ys[iy];
    const double in_channel_y = inside_band(y, 0.5 * width, smoothing);
    for (int ix = 0; ix < grid.nx; ++ix) {
      const double x = xs[ix];
      const double r = std::hypot(x, y);
      const double in_ring = inside_band(r - radius, 0.5 * width, smoothing);
      const double in_left = in_channel_y * below_edge(x, -lead_reach, smoothing);
      const double in_right = in_channel_y * below_edge(-x, -lead_reach, smoothing);
      const double closed = (1.0 - in_ring) * (1.0 - in_left) * (1.0 - in_right);
      v.at(ix, iy) = wall_height * closed;
    }
  }
  return v;
}

void add_barrier(RealField& v, double x0, double x1, double y0, double y1,
                 double height, double smoothing) {
  const auto xs = v.grid.x_coords();
  const auto ys = v.grid.y_coords();
  const double cx = 0.5 * (x0 + x1), cy = 0.5 * (y0 + y1);
  const double hx = 0.5 * (x1 - x0), hy = 0.5 * (y1 - y0);
  for (int iy = 0; iy < v.grid.ny; ++iy) {
    const double fy = inside_band(ys[iy] - cy, hy, smoothing);
    for (int ix = 0; ix < v.grid.nx; ++ix)
      v.at(ix, iy) += height * fy * inside_band(xs[ix] - cx, hx, smoothing);
  }
}

}  // namespace wpl
