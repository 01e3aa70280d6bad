#include "wpl/grid.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace wpl {

GridSpec GridSpec::make(int nx, int ny, double xmin, double xmax, double ymin,
                        double ymax) {
  if (nx < 8 || ny < 8)
    throw std::invalid_argument("grid: nx and ny must be >= 8");
  if (nx % 2 != 0 || ny % 2 != 0)
    throw std::invalid_argument("grid: nx and ny must be even");
  if (!(xmax > xmin) || !(ymax > ymin))
    throw std::invalid_argument("grid: extents must satisfy xmax > xmin and ymax > ymin");
  return GridSpec{nx, ny, xmin, xmax, ymin, ymax};
}

namespace {

std::vector<double> linear_coords(int n, double lo, double d) {
  std::vector<double> c(n);
  for (int i = 0; i < n; ++i) c[i] = lo + i * d;
  return c;
}

std::vector<double> dft_wavenumbers(int n, double d) {
  const double dk = 2.0 * std::numbers::pi / (n * d);
  std::vector<double> k(n);
  for (int i = 0; i < n; ++i) k[i] = dk * (i < n / 2 ? i : i - n);
  return k;
}

}  // namespace

std::vector<double> GridSpec::x_coords() const { return linear_coords(nx, xmin, dx()); }
std::vector<double> GridSpec::y_coords() const { return linear_coords(ny, ymin, dy()); }
std::vector<double> GridSpec::kx_coords() const { return dft_wavenumbers(nx, dx()); }
std::vector<double> GridSpec::ky_coords() const { return dft_wavenumbers(ny, dy()); }

ComplexField gaussian_packet(const GridSpec& grid, Vec2 center, Vec2 widths,
                             Vec2 mean_k) {
  if (center.x < grid.xmin || center.x >= grid.xmax || center.y < grid.ymin ||
      center.y >= grid.ymax)
    throw std::invalid_argument("gaussian_packet: center outside grid");
  if (widths.x < 3.0 * grid.dx() || widths.y < 3.0 * grid.dy())
    throw std::invalid_argument("gaussian_packet: width below 3 grid spacings");

  ComplexField f(grid);
  const auto xs = grid.x_coords();
  const auto ys = grid.y_coords();
  for (int iy = 0; iy < grid.ny; ++iy) {
    const double qy = (ys[iy] - center.y) / widths.y;
    for (int ix = 0; ix < grid.nx; ++ix) {
      const double qx = (xs[ix] - center.x) / widths.x;
      const double envelope = std::exp(-0.5 * (qx * qx + qy * qy));
      const double phase = mean_k.x * xs[ix] + mean_k.y * ys[iy];
      f.at(ix, iy) = envelope * cplx{std::cos(phase), std::sin(phase)};
    }
  }
  normalize(f);
  return f;
}

cplx inner_product(const ComplexField& a, const ComplexField& b) {
  if (a.grid != b.grid)
    throw std::invalid_argument("inner_product: grid mismatch");
  if (a.rep != Rep::position || b.rep != Rep::position)
    throw std::invalid_argument("inner_product: fields must be in position representation");
  cplx acc{0.0, 0.0};
  const std::size_t n = a.amp.size();
  for (std::size_t i = 0; i < n; ++i) acc += std::conj(a.amp[i]) * b.amp[i];
  return acc * (a.grid.dx() * a.grid.dy());
}

double norm(const ComplexField& f) {
  double acc = 0.0;
  for (const cplx& c : f.amp) acc += std::norm(c);
  return std::sqrt(acc * f.grid.dx() * f.grid.dy());
}

void normalize(ComplexField& f) {
  const double n = norm(f);
  if (n == 0.0) throw std::invalid_argument("normalize: zero field");
  const double s = 1.0 / n;
  for (cplx& c : f.amp) c *= s;
}

Vec2 position_expectation(const ComplexField& f) {
  const auto xs = f.grid.x_coords();
  const auto ys = f.grid.y_coords();
  double w = 0.0, mx = 0.0, my = 0.0;
  for (int iy = 0; iy < f.grid.ny; ++iy)
    for (int ix = 0; ix < f.grid.nx; ++ix) {
      const double p = std::norm(f.at(ix, iy));
      w += p;
      mx += p * xs[ix];
      my += p * ys[iy];
    }
  return {mx / w, my / w};
}

Vec2 position_variance(const ComplexField& f) {
  const Vec2 mean = position_expectation(f);
  const auto xs = f.grid.x_coords();
  const auto ys = f.grid.y_coords();
  double w = 0.0, vx = 0.0, vy = 0.0;
  for (int iy = 0; iy < f.grid.ny; ++iy)
    for (int ix = 0; ix < f.grid.nx; ++ix) {
      const double p = std::norm(f.at(ix, iy));
      w += p;
      vx += p * (xs[ix] - mean.x) * (xs[ix] - mean.x);
      vy += p * (ys[iy] - mean.y) * (ys[iy] - mean.y);
    }
  return {vx / w, vy / w};
}

}  // namespace wpl
