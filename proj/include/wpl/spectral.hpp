#pragma once

#include <vector>

#include "wpl/grid.hpp"
#include "wpl/propagator.hpp"

namespace wpl {

/// Uniformly sampled autocorrelation C(t_j), t_j = j*dt.
struct AutocorrelationSeries {
  double dt = 0.0;  // sample spacing (s)
  std::vector<cplx> values;
  int stride = 1;  // recorder stride that produced it (metadata)

  double total_time() const { return values.empty() ? 0.0 : dt * (values.size() - 1); }
};

enum class Window { none, hann };

/// Weighted local density of states on an energy grid (joules):
///   S(E) = -(1/pi) Im[ (1/ih) Int_0^T dt e^{i(E+i eta)t/h} w(t) C(t) ],
/// half-axis transform, trapezoid rule, optional Hann taper w(t) =
/// cos^2(pi t / 2T). eta >= 0 is the resolvent damping energy.
struct SpectrumSeries {
  std::vector<double> energy;     // J, monotone
  std::vector<double> intensity;  // 1/J
  Window window = Window::hann;
  double eta = 0.0;
};

SpectrumSeries spectrum_from_autocorrelation(const AutocorrelationSeries& series,
                                             Window window, double eta,
                                             double e_min, double e_max,
                                             int n_energies);

struct Peak {
  double energy = 0.0;      // refined position (J)
  double height = 0.0;
  double half_width = 0.0;  // half width at half maximum estimate (J)
};
using PeakList = std::vector<Peak>;

/// Local maxima with topographic prominence above `prominence_rel` times the
/// spectrum maximum, positions refined by a 3-point parabola. Sorted by
/// energy; may be empty.
PeakList find_peaks(const SpectrumSeries& spectrum, double prominence_rel);

/// Eigenstate filter: accumulates Int_0^T dt w(t) e^{+iEt/h} psi(t) over a
/// fresh propagation of `initial` and normalizes. The phase sign is the one
/// that leaves a stationary state invariant under e^{-iHt/h} evolution.
/// `norm_ratio` compares the (unwindowed) accumulated norm at T vs T/2:
/// ~2 for a discrete level, ~1 in a continuum; converged = ratio > 1.5.
struct ProjectionResult {
  ComplexField state;
  double norm_ratio = 0.0;
  bool converged = false;
};

ProjectionResult project_eigenstate(const ComplexField& initial,
                                    const PropagationPlan& plan, double energy,
                                    Window window = Window::hann);

/// Relative eigen-residual ||(H - <H>) psi|| / ||H psi|| with the kinetic
/// term applied spectrally (per-axis masses; magnetic terms in their mixed
/// representations). Expects a normalized field.
double stationarity_residual(const ComplexField& field,
                             const PropagationPlan& plan);

/// <H> of a normalized field under the plan's Hamiltonian (joules).
double energy_expectation(const ComplexField& field, const PropagationPlan& plan);

}  // namespace wpl
