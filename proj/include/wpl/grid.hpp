#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace wpl {

using cplx = std::complex<double>;

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};

/// Rectangular 2D grid. Points are x_i = xmin + i*dx with dx = (xmax-xmin)/nx,
/// i.e. xmax itself is not a grid point (periodic convention, as required for
/// the discrete Fourier transforms).
struct GridSpec {
  int nx = 0;
  int ny = 0;
  double xmin = 0.0, xmax = 0.0;
  double ymin = 0.0, ymax = 0.0;

  double dx() const { return (xmax - xmin) / nx; }
  double dy() const { return (ymax - ymin) / ny; }
  std::size_t size() const { return static_cast<std::size_t>(nx) * ny; }

  /// Validates and returns the spec. Throws std::invalid_argument when
  /// nx/ny are odd or < 8, or when an extent is empty.
  static GridSpec make(int nx, int ny, double xmin, double xmax, double ymin,
                       double ymax);

  std::vector<double> x_coords() const;
  std::vector<double> y_coords() const;
  /// Wavenumbers in standard DFT ordering: 2*pi/(n*d) * {0, 1, ..., n/2-1,
  /// -n/2, ..., -1}. The Nyquist bin carries the negative sign.
  std::vector<double> kx_coords() const;
  std::vector<double> ky_coords() const;

  bool operator==(const GridSpec&) const = default;
};

enum class Rep { position, momentum, mixed_kx, mixed_ky };

/// Complex amplitudes on a grid, row-major with x fastest:
/// amp[ix + nx*iy]. The representation tag tracks which axes are currently
/// in momentum space.
struct ComplexField {
  GridSpec grid;
  Rep rep = Rep::position;
  std::vector<cplx> amp;

  ComplexField() = default;
  explicit ComplexField(const GridSpec& g, Rep r = Rep::position)
      : grid(g), rep(r), amp(g.size(), cplx{0.0, 0.0}) {}

  cplx& at(int ix, int iy) { return amp[ix + static_cast<std::size_t>(grid.nx) * iy]; }
  const cplx& at(int ix, int iy) const {
    return amp[ix + static_cast<std::size_t>(grid.nx) * iy];
  }
};

/// Real scalar field on a grid (potentials, accumulated maps), same layout
/// as ComplexField.
struct RealField {
  GridSpec grid;
  std::vector<double> v;
  std::string tag;  // optional provenance note (e.g. disorder seed)

  RealField() = default;
  explicit RealField(const GridSpec& g, double fill = 0.0)
      : grid(g), v(g.size(), fill) {}

  double& at(int ix, int iy) { return v[ix + static_cast<std::size_t>(grid.nx) * iy]; }
  const double& at(int ix, int iy) const {
    return v[ix + static_cast<std::size_t>(grid.nx) * iy];
  }
};

/// Normalized Gaussian wave packet
///   psi(r) ~ exp(-(x-x0)^2/(2 ax^2) - (y-y0)^2/(2 ay^2)) exp(i k0.r).
/// Widths follow the coherent-state convention psi ~ exp(-r^2/(2 a^2)).
/// Requires the center inside the grid and widths >= 3*dx (resolution guard).
ComplexField gaussian_packet(const GridSpec& grid, Vec2 center, Vec2 widths,
                             Vec2 mean_k);

/// Rectangle-rule inner product  sum conj(a) b dx dy. Both fields must share
/// the grid and be in position representation.
cplx inner_product(const ComplexField& a, const ComplexField& b);

double norm(const ComplexField& f);
void normalize(ComplexField& f);

/// <r> of |psi|^2 (position representation).
Vec2 position_expectation(const ComplexField& f);
/// Second central moments (sigma_x^2, sigma_y^2) of |psi|^2.
Vec2 position_variance(const ComplexField& f);

}  // namespace wpl
