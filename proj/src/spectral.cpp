#include "wpl/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "wpl/constants.hpp"
#include "wpl/fft.hpp"

namespace wpl {

namespace {

double window_weight(Window w, double t, double total) {
  if (w == Window::none || total <= 0.0) return 1.0;
  const double c = std::cos(0.5 * std::numbers::pi * t / total);
  return c * c;  // Hann taper on the half axis
}

}  // namespace

SpectrumSeries spectrum_from_autocorrelation(const AutocorrelationSeries& series,
                                             Window window, double eta,
                                             double e_min, double e_max,
                                             int n_energies) {
  if (series.values.empty())
    throw std::invalid_argument("spectrum: empty autocorrelation series");
  if (!(series.dt > 0.0))
    throw std::invalid_argument("spectrum: sample spacing must be positive");
  if (eta < 0.0) throw std::invalid_argument("spectrum: eta must be >= 0");
  if (!(e_max > e_min) || n_energies < 2)
    throw std::invalid_argument("spectrum: bad energy grid");

  const double hbar = constants::hbar;
  const std::size_t n = series.values.size();
  const double total = series.dt * (n - 1);

  // trapezoid weights and window folded into the integrand once
  std::vector<cplx> integrand(n);
  for (std::size_t j = 0; j < n; ++j) {
    double w = window_weight(window, j * series.dt, total) * series.dt;
    if (j == 0 || j + 1 == n) w *= 0.5;
    integrand[j] = series.values[j] * w;
  }

  SpectrumSeries out;
  out.window = window;
  out.eta = eta;
  out.energy.resize(n_energies);
  out.intensity.resize(n_energies);
  const double de = (e_max - e_min) / (n_energies - 1);
  const double damp = std::exp(-eta * series.dt / hbar);

  for (int ie = 0; ie < n_energies; ++ie) {
    const double e = e_min + ie * de;
    const double arg = e * series.dt / hbar;
    const cplx z = damp * cplx{std::cos(arg), std::sin(arg)};
    cplx acc{0.0, 0.0};
    cplx zj{1.0, 0.0};
    for (std::size_t j = 0; j < n; ++j) {
      acc += integrand[j] * zj;
      zj *= z;
    }
    const cplx green = acc / cplx{0.0, hbar};  // (1/ih) * integral
    out.energy[ie] = e;
    out.intensity[ie] = -green.imag() / std::numbers::pi;
  }
  return out;
}

PeakList find_peaks(const SpectrumSeries& spectrum, double prominence_rel) {
  const auto& v = spectrum.intensity;
  const auto& e = spectrum.energy;
  PeakList peaks;
  if (v.size() < 3) return peaks;

  const double vmax = *std::max_element(v.begin(), v.end());
  if (!(vmax > 0.0)) return peaks;
  const double threshold = prominence_rel * vmax;

  for (std::size_t j = 1; j + 1 < v.size(); ++j) {
    if (!(v[j] >= v[j - 1] && v[j] > v[j + 1])) continue;

    // topographic prominence: lowest point on the walk to higher ground,
    // on each side; the key saddle is the higher of the two minima
    double left_min = v[j];
    for (std::size_t i = j; i-- > 0;) {
      left_min = std::min(left_min, v[i]);
      if (v[i] > v[j]) break;
    }
    double right_min = v[j];
    for (std::size_t i = j + 1; i < v.size(); ++i) {
      right_min = std::min(right_min, v[i]);
      if (v[i] > v[j]) break;
    }
    const double prominence = v[j] - std::max(left_min, right_min);
    if (prominence < threshold) continue;

    // 3-point parabolic refinement
    const double denom = v[j - 1] - 2.0 * v[j] + v[j + 1];
    double shift = 0.0;
    if (denom < 0.0) shift = 0.5 * (v[j - 1] - v[j + 1]) / denom;
    shift = std::clamp(shift, -0.5, 0.5);
    const double de = e[j + 1] - e[j];
    Peak p;
    p.energy = e[j] + shift * de;
    p.height = v[j] - 0.25 * (v[j - 1] - v[j + 1]) * shift;

    // half width at half maximum (linear interpolation outward)
    const double half = 0.5 * p.height;
    double lo = e.front(), hi = e.back();
    for (std::size_t i = j; i-- > 0;)
      if (v[i] <= half) {
        lo = e[i] + (e[i + 1] - e[i]) * (half - v[i]) / (v[i + 1] - v[i]);
        break;
      }
    for (std::size_t i = j + 1; i < v.size(); ++i)
      if (v[i] <= half) {
        hi = e[i - 1] + (e[i] - e[i - 1]) * (v[i - 1] - half) / (v[i - 1] - v[i]);
        break;
      }
    p.half_width = 0.5 * (hi - lo);
    peaks.push_back(p);
  }
  return peaks;
}

namespace {

class ProjectionRecorder : public Recorder {
 public:
  ProjectionRecorder(const GridSpec& grid, double energy, double total_time,
                     double sample_dt, std::size_t n_samples, Window window)
      : energy_(energy),
        total_(total_time),
        dt_(sample_dt),
        n_samples_(n_samples),
        window_(window),
        accum_(grid),
        rect_(grid) {}

  void sample(int, double t, const ComplexField& field) override {
    const double arg = energy_ * t / constants::hbar;
    const cplx rot{std::cos(arg), std::sin(arg)};  // e^{+iEt/h}
    double w = dt_;
    if (index_ == 0 || index_ + 1 == n_samples_) w *= 0.5;
    const cplx cw = rot * (w * window_weight(window_, t, total_));
    const cplx cr = rot * w;
    const std::size_t n = accum_.amp.size();
    for (std::size_t i = 0; i < n; ++i) {
      accum_.amp[i] += cw * field.amp[i];
      rect_.amp[i] += cr * field.amp[i];
    }
    ++index_;
    if (index_ == (n_samples_ + 1) / 2) half_norm_ = norm(rect_);
  }

  ComplexField take_state() { return std::move(accum_); }
  double norm_ratio() const {
    const double full = norm(rect_);
    return half_norm_ > 0.0 ? full / half_norm_ : 0.0;
  }

 private:
  double energy_;
  double total_;
  double dt_;
  std::size_t n_samples_;
  Window window_;
  std::size_t index_ = 0;
  double half_norm_ = 0.0;
  ComplexField accum_;
  ComplexField rect_;
};

}  // namespace

ProjectionResult project_eigenstate(const ComplexField& initial,
                                    const PropagationPlan& plan, double energy,
                                    Window window) {
  if (plan.steps < 2)
    throw std::invalid_argument("project_eigenstate: need at least 2 steps");
  const std::size_t n_samples = plan.steps / plan.sample_stride + 1;
  const double sample_dt = plan.dt * plan.sample_stride;
  const double total = plan.dt * plan.steps;

  ProjectionRecorder rec(initial.grid, energy, total, sample_dt, n_samples, window);
  Recorder* recs[] = {&rec};
  propagate(initial, plan, recs);

  ProjectionResult out;
  out.state = rec.take_state();
  out.norm_ratio = rec.norm_ratio();
  out.converged = out.norm_ratio > 1.5;
  if (norm(out.state) == 0.0)
    throw std::runtime_error("project_eigenstate: zero projection");
  normalize(out.state);
  return out;
}

namespace {

// H psi with kinetic terms applied spectrally; magnetic cross terms are
// multiplications in their mixed representations.
ComplexField apply_hamiltonian(const ComplexField& psi, const PropagationPlan& plan) {
  const GridSpec& grid = psi.grid;
  const double hbar = constants::hbar;
  const HamiltonianSpec& h = plan.hamiltonian;

  ComplexField result(grid);
  if (!plan.magnetic()) {
    ComplexField k = transform(psi, Axis::both, Direction::forward);
    const auto kx = grid.kx_coords();
    const auto ky = grid.ky_coords();
    for (int iy = 0; iy < grid.ny; ++iy)
      for (int ix = 0; ix < grid.nx; ++ix) {
        const double t = hbar * hbar * kx[ix] * kx[ix] / (2.0 * h.mass_x) +
                         hbar * hbar * ky[iy] * ky[iy] / (2.0 * h.mass_y);
        k.at(ix, iy) *= t;
      }
    transform_inplace(k, Axis::both, Direction::inverse);
    for (int iy = 0; iy < grid.ny; ++iy)
      for (int ix = 0; ix < grid.nx; ++ix)
        result.at(ix, iy) = k.at(ix, iy) + h.potential.at(ix, iy) * psi.at(ix, iy);
    return result;
  }

  const SplitTerms terms = split_hamiltonian(h.field, h.potential);
  const auto kx = grid.kx_coords();
  const auto ky = grid.ky_coords();
  const auto xs = grid.x_coords();
  const auto ys = grid.y_coords();

  ComplexField mx = transform(psi, Axis::x_only, Direction::forward);
  for (int iy = 0; iy < grid.ny; ++iy)
    for (int ix = 0; ix < grid.nx; ++ix) mx.at(ix, iy) *= terms.t_px_y(kx[ix], ys[iy]);
  transform_inplace(mx, Axis::x_only, Direction::inverse);

  ComplexField my = transform(psi, Axis::y_only, Direction::forward);
  for (int iy = 0; iy < grid.ny; ++iy)
    for (int ix = 0; ix < grid.nx; ++ix) my.at(ix, iy) *= terms.t_py_x(ky[iy], xs[ix]);
  transform_inplace(my, Axis::y_only, Direction::inverse);

  for (int iy = 0; iy < grid.ny; ++iy)
    for (int ix = 0; ix < grid.nx; ++ix)
      result.at(ix, iy) = mx.at(ix, iy) + my.at(ix, iy) +
                          terms.v_eff.at(ix, iy) * psi.at(ix, iy);
  return result;
}

}  // namespace

double energy_expectation(const ComplexField& field, const PropagationPlan& plan) {
  const ComplexField hpsi = apply_hamiltonian(field, plan);
  return inner_product(field, hpsi).real();
}

double stationarity_residual(const ComplexField& field, const PropagationPlan& plan) {
  ComplexField hpsi = apply_hamiltonian(field, plan);
  const double e = inner_product(field, hpsi).real();
  const double hnorm = norm(hpsi);
  if (hnorm == 0.0) return 0.0;
  for (std::size_t i = 0; i < hpsi.amp.size(); ++i) hpsi.amp[i] -= e * field.amp[i];
  return norm(hpsi) / hnorm;
}

}  // namespace wpl
