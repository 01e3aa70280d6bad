#include "wpl/mesoscopic.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "wpl/constants.hpp"

namespace wpl {

TransverseModes solve_transverse_modes(std::span<const double> confinement,
                                       double spacing, double mass, int count) {
  const int n = static_cast<int>(confinement.size());
  if (n < 8) throw std::invalid_argument("transverse_modes: section too short");
  if (!(spacing > 0.0) || !(mass > 0.0))
    throw std::invalid_argument("transverse_modes: bad spacing or mass");
  if (count < 1) throw std::invalid_argument("transverse_modes: count must be >= 1");

  const double t0 = constants::hbar * constants::hbar / (2.0 * mass * spacing * spacing);
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    h(i, i) = 2.0 * t0 + confinement[i];
    if (i + 1 < n) {
      h(i, i + 1) = -t0;
      h(i + 1, i) = -t0;
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("transverse_modes: eigensolver failed");

  const double edge = std::max(confinement.front(), confinement.back());
  TransverseModes modes;
  for (int m = 0; m < count; ++m) {
    const double e = solver.eigenvalues()(m);
    if (e >= edge)
      throw std::invalid_argument("transverse_modes: fewer bound modes than requested");
    std::vector<double> f(n);
    double nrm = 0.0;
    for (int i = 0; i < n; ++i) {
      f[i] = solver.eigenvectors()(i, m);
      nrm += f[i] * f[i];
    }
    nrm = std::sqrt(nrm * spacing);
    // fix the overall sign: positive mean of the first half
    double head = 0.0;
    for (int i = 0; i < n / 2; ++i) head += f[i];
    const double sign = head < 0.0 ? -1.0 : 1.0;
    for (double& v : f) v *= sign / nrm;
    modes.thresholds.push_back(e);
    modes.functions.push_back(std::move(f));
  }
  return modes;
}

namespace {

int nearest_index(double value, double lo, double spacing, int n) {
  int i = static_cast<int>(std::lround((value - lo) / spacing));
  return std::clamp(i, 0, n - 1);
}

}  // namespace

LeadSpec make_lead(const GridSpec& grid, int id, bool vertical, double position,
                   double lo, double hi, const RealField& potential, double mass,
                   int mode_count) {
  if (!(hi > lo)) throw std::invalid_argument("make_lead: empty section");
  LeadSpec lead;
  lead.id = id;
  lead.vertical = vertical;
  lead.position = position;
  lead.lo = lo;
  lead.hi = hi;

  if (vertical) {
    lead.fixed_index = nearest_index(position, grid.xmin, grid.dx(), grid.nx);
    const int j0 = nearest_index(lo, grid.ymin, grid.dy(), grid.ny);
    const int j1 = nearest_index(hi, grid.ymin, grid.dy(), grid.ny);
    for (int j = j0; j <= j1; ++j) lead.span_indices.push_back(j);
    std::vector<double> profile;
    for (int j : lead.span_indices)
      profile.push_back(potential.at(lead.fixed_index, j));
    lead.modes = solve_transverse_modes(profile, grid.dy(), mass, mode_count);
  } else {
    lead.fixed_index = nearest_index(position, grid.ymin, grid.dy(), grid.ny);
    const int i0 = nearest_index(lo, grid.xmin, grid.dx(), grid.nx);
    const int i1 = nearest_index(hi, grid.xmin, grid.dx(), grid.nx);
    for (int i = i0; i <= i1; ++i) lead.span_indices.push_back(i);
    std::vector<double> profile;
    for (int i : lead.span_indices)
      profile.push_back(potential.at(i, lead.fixed_index));
    lead.modes = solve_transverse_modes(profile, grid.dx(), mass, mode_count);
  }
  return lead;
}

ComplexField lead_wavepacket(const GridSpec& grid, const LeadSpec& lead, int mode,
                             double k0, double dk, double launch_center,
                             int travel_sign) {
  if (mode < 0 || mode >= static_cast<int>(lead.modes.functions.size()))
    throw std::invalid_argument("lead_wavepacket: mode index out of range");
  if (!(k0 - 3.0 * dk > 0.0))
    throw std::invalid_argument("lead_wavepacket: k0 must exceed 3*dk (unidirectional)");
  if (travel_sign != 1 && travel_sign != -1)
    throw std::invalid_argument("lead_wavepacket: travel_sign must be +-1");

  const double sigma = 1.0 / (2.0 * dk);
  const double section = lead.position;
  // the device lies beyond the section; keep the envelope clear of it
  if (std::abs(launch_center - section) < 4.0 * sigma)
    throw std::invalid_argument("lead_wavepacket: packet overlaps the device region");
  if ((section - launch_center) * travel_sign < 0.0)
    throw std::invalid_argument("lead_wavepacket: packet moving away from the device");

  ComplexField f(grid);
  const auto& phi = lead.modes.functions[mode];
  const auto us = lead.vertical ? grid.x_coords() : grid.y_coords();
  const double k_signed = travel_sign * k0;

  for (std::size_t s = 0; s < lead.span_indices.size(); ++s) {
    const int jt = lead.span_indices[s];
    for (int ju = 0; ju < (lead.vertical ? grid.nx : grid.ny); ++ju) {
      const double u = us[ju] - launch_center;
      const double envelope = std::exp(-u * u / (4.0 * sigma * sigma));
      const double arg = k_signed * us[ju];
      const cplx value = phi[s] * envelope * cplx{std::cos(arg), std::sin(arg)};
      if (lead.vertical)
        f.at(ju, jt) = value;
      else
        f.at(jt, ju) = value;
    }
  }
  normalize(f);
  return f;
}

double fermi(double energy, double mu, double temperature) {
  if (temperature < 0.0) throw std::invalid_argument("fermi: negative temperature");
  if (temperature == 0.0) {
    if (energy < mu) return 1.0;
    if (energy > mu) return 0.0;
    return 0.5;
  }
  const double x = (energy - mu) / (constants::boltzmann * temperature);
  if (x > 700.0) return 0.0;
  if (x < -700.0) return 1.0;
  return 1.0 / (std::exp(x) + 1.0);
}

double cyclotron_radius(double energy, double b_field, double mass) {
  if (!(b_field > 0.0)) throw std::invalid_argument("cyclotron_radius: B must be > 0");
  return std::sqrt(2.0 * mass * energy) / (constants::elementary_charge * b_field);
}

const TransmissionEntry* TransmissionTable::find(int lead_out, int mode_out) const {
  for (const TransmissionEntry& e : entries)
    if (e.lead_out == lead_out && e.mode_out == mode_out) return &e;
  return nullptr;
}

namespace {

/// Mode-projected complex amplitude at every lead section, each sample.
class LeadAmplitudeRecorder : public Recorder {
 public:
  LeadAmplitudeRecorder(const GridSpec& grid, const std::vector<LeadSpec>& leads)
      : grid_(grid), leads_(leads) {
    amplitudes_.resize(leads.size());
    for (std::size_t l = 0; l < leads.size(); ++l)
      amplitudes_[l].resize(leads[l].modes.functions.size());
  }

  void sample(int, double t, const ComplexField& field) override {
    times_.push_back(t);
    for (std::size_t l = 0; l < leads_.size(); ++l) {
      const LeadSpec& lead = leads_[l];
      const double ds = lead.vertical ? grid_.dy() : grid_.dx();
      for (std::size_t n = 0; n < lead.modes.functions.size(); ++n) {
        const auto& phi = lead.modes.functions[n];
        cplx acc{0.0, 0.0};
        for (std::size_t s = 0; s < lead.span_indices.size(); ++s) {
          const int jt = lead.span_indices[s];
          const cplx v = lead.vertical ? field.at(lead.fixed_index, jt)
                                       : field.at(jt, lead.fixed_index);
          acc += phi[s] * v;
        }
        amplitudes_[l][n].push_back(acc * ds);
      }
    }
  }

  const std::vector<double>& times() const { return times_; }
  const std::vector<cplx>& amplitude(std::size_t lead, std::size_t mode) const {
    return amplitudes_[lead][mode];
  }

 private:
  GridSpec grid_;
  std::vector<LeadSpec> leads_;
  std::vector<double> times_;
  std::vector<std::vector<std::vector<cplx>>> amplitudes_;  // [lead][mode][t]
};

/// Plain half-axis Fourier transform sum_t a(t) e^{iEt/h} dt.
cplx time_transform(std::span<const cplx> a, double dt, double energy) {
  const double arg = energy * dt / constants::hbar;
  const cplx z{std::cos(arg), std::sin(arg)};
  cplx zj{1.0, 0.0};
  cplx acc{0.0, 0.0};
  for (std::size_t j = 0; j < a.size(); ++j) {
    double w = dt;
    if (j == 0 || j + 1 == a.size()) w *= 0.5;
    acc += a[j] * (w * zj);
    zj *= z;
  }
  return acc;
}

RealField reference_guide_potential(const GridSpec& grid, const RealField& device,
                                    const LeadSpec& lead) {
  // translate the lead's confinement profile along the guide axis
  RealField ref(grid);
  if (lead.vertical) {
    for (int iy = 0; iy < grid.ny; ++iy) {
      const double v = device.at(lead.fixed_index, iy);
      for (int ix = 0; ix < grid.nx; ++ix) ref.at(ix, iy) = v;
    }
  } else {
    for (int ix = 0; ix < grid.nx; ++ix) {
      const double v = device.at(ix, lead.fixed_index);
      for (int iy = 0; iy < grid.ny; ++iy) ref.at(ix, iy) = v;
    }
  }
  return ref;
}

}  // namespace

TransmissionTable extract_transmission(const TransmissionJob& job,
                                       std::span<const double> energies) {
  if (job.leads.empty()) throw std::invalid_argument("extract_transmission: no leads");
  if (job.incident_lead_index < 0 ||
      job.incident_lead_index >= static_cast<int>(job.leads.size()))
    throw std::invalid_argument("extract_transmission: bad incident lead index");
  const LeadSpec& incident = job.leads[job.incident_lead_index];

  const double extent = std::min(job.grid.xmax - job.grid.xmin,
                                 job.grid.ymax - job.grid.ymin);
  const double mask_width = job.mask_width > 0.0 ? job.mask_width : 0.1 * extent;

  ComplexField packet = lead_wavepacket(job.grid, incident, job.incident_mode,
                                        job.k0, job.dk, job.launch_center,
                                        job.travel_sign);

  auto run = [&](const RealField& potential) {
    HamiltonianSpec h;
    h.mass_x = h.mass_y = job.field.mass;
    h.potential = potential;
    h.field = job.field;
    PropagationPlan plan =
        make_plan(job.dt, job.steps, std::move(h),
                  make_absorbing_mask(job.grid, mask_width, job.mask_strength),
                  job.sample_stride);
    auto rec = std::make_unique<LeadAmplitudeRecorder>(job.grid, job.leads);
    Recorder* recs[] = {rec.get()};
    propagate(packet, plan, recs);
    return rec;
  };

  auto ref_rec = run(reference_guide_potential(job.grid, job.potential, incident));
  auto dev_rec = run(job.potential);

  const double sample_dt = job.dt * job.sample_stride;
  const double mass = job.field.mass;
  const int ne = static_cast<int>(energies.size());

  TransmissionTable table;
  table.energy.assign(energies.begin(), energies.end());
  table.incident_lead = incident.id;
  table.incident_mode = job.incident_mode;

  // incident normalization from the reference run at the incident section
  std::vector<double> inc_spec(ne);
  {
    const auto& a = ref_rec->amplitude(job.incident_lead_index, job.incident_mode);
    for (int ie = 0; ie < ne; ++ie)
      inc_spec[ie] = std::norm(time_transform(a, sample_dt, energies[ie]));
  }
  table.incident_spectrum = inc_spec;
  const double inc_max = *std::max_element(inc_spec.begin(), inc_spec.end());
  if (!(inc_max > 0.0))
    throw std::runtime_error("extract_transmission: empty incident spectrum");

  const double e_in_threshold = incident.modes.thresholds[job.incident_mode];
  const double de_margin =
      2.0 * (energies.back() - energies.front()) / std::max(1, ne - 1);

  auto group_velocity = [&](double e, double threshold) {
    const double excess = e - threshold;
    if (excess <= 0.0) return 0.0;
    return std::sqrt(2.0 * excess / mass);
  };

  for (std::size_t l = 0; l < job.leads.size(); ++l) {
    const LeadSpec& lead = job.leads[l];
    const bool is_incident_lead =
        static_cast<int>(l) == job.incident_lead_index;
    for (std::size_t n = 0; n < lead.modes.functions.size(); ++n) {
      const auto& a_dev = dev_rec->amplitude(l, n);
      std::vector<cplx> a_used(a_dev.begin(), a_dev.end());
      if (is_incident_lead) {
        // subtract the incident passage; what remains is the reflected wave
        const auto& a_ref = ref_rec->amplitude(l, n);
        for (std::size_t j = 0; j < a_used.size(); ++j) a_used[j] -= a_ref[j];
      }

      TransmissionEntry entry;
      entry.lead_in = incident.id;
      entry.mode_in = job.incident_mode;
      entry.lead_out = lead.id;
      entry.mode_out = static_cast<int>(n);
      entry.t2.resize(ne);
      entry.valid.resize(ne);
      const double e_out_threshold = lead.modes.thresholds[n];
      for (int ie = 0; ie < ne; ++ie) {
        const double e = energies[ie];
        const double v_in = group_velocity(e, e_in_threshold);
        const double v_out = group_velocity(e, e_out_threshold);
        const bool usable = inc_spec[ie] > 1e-4 * inc_max &&
                            e > e_in_threshold + de_margin &&
                            e > e_out_threshold + de_margin;
        entry.valid[ie] = usable;
        if (!usable || v_in == 0.0) {
          entry.t2[ie] = 0.0;
          continue;
        }
        const double amp2 = std::norm(time_transform(a_used, sample_dt, e));
        entry.t2[ie] = (v_out / v_in) * amp2 / inc_spec[ie];
      }
      table.entries.push_back(std::move(entry));
    }
  }
  return table;
}

double landauer_current(const TransmissionTable& table,
                        std::span<const Reservoir> reservoirs, int lead) {
  if (table.energy.size() < 2)
    throw std::invalid_argument("landauer_current: empty table");
  const auto& eg = table.energy;

  // linear interpolation of |t|^2 on the tabulated grid
  auto t2_at = [&](const TransmissionEntry& entry, double e) {
    auto it = std::upper_bound(eg.begin(), eg.end(), e);
    if (it == eg.begin() || it == eg.end())
      throw std::invalid_argument("landauer_current: energy window too narrow");
    const std::size_t hi = it - eg.begin();
    const double w = (e - eg[hi - 1]) / (eg[hi] - eg[hi - 1]);
    return (1.0 - w) * entry.t2[hi - 1] + w * entry.t2[hi];
  };

  const double quantum = constants::elementary_charge / constants::planck_h;
  double current = 0.0;

  for (const TransmissionEntry& entry : table.entries) {
    if (entry.lead_out != lead) continue;
    if (entry.lead_in == lead) continue;
    const Reservoir& ri = reservoirs[lead];
    const Reservoir& rj = reservoirs[entry.lead_in];
    if (ri.mu == rj.mu && ri.temperature == rj.temperature) continue;

    if (ri.temperature == 0.0 && rj.temperature == 0.0) {
      // exact integral of the piecewise-linear table between the mu's;
      // f_i - f_j = +1 on (mu_j, mu_i) when mu_i > mu_j
      const double lo = std::min(ri.mu, rj.mu);
      const double hi = std::max(ri.mu, rj.mu);
      const double sign = ri.mu > rj.mu ? 1.0 : -1.0;
      if (lo < eg.front() || hi > eg.back())
        throw std::invalid_argument("landauer_current: energy window too narrow");
      // integrate t2 over [lo, hi]
      double acc = 0.0;
      double prev_e = lo;
      double prev_t = t2_at(entry, lo);
      for (std::size_t i = 0; i < eg.size(); ++i) {
        if (eg[i] <= lo) continue;
        if (eg[i] >= hi) break;
        acc += 0.5 * (prev_t + entry.t2[i]) * (eg[i] - prev_e);
        prev_e = eg[i];
        prev_t = entry.t2[i];
      }
      acc += 0.5 * (prev_t + t2_at(entry, hi)) * (hi - prev_e);
      current += quantum * sign * acc;
      continue;
    }

    // finite temperature: trapezoid on the tabulated grid with tail check
    const double tail = 1e-6;
    const double df_lo = std::abs(fermi(eg.front(), ri.mu, ri.temperature) -
                                  fermi(eg.front(), rj.mu, rj.temperature));
    const double df_hi = std::abs(fermi(eg.back(), ri.mu, ri.temperature) -
                                  fermi(eg.back(), rj.mu, rj.temperature));
    if (df_lo > tail || df_hi > tail)
      throw std::invalid_argument(
          "landauer_current: energy window truncates the Fermi tails (|df| = " +
          std::to_string(std::max(df_lo, df_hi)) + " at the window edge)");
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < eg.size(); ++i) {
      auto integrand = [&](std::size_t j) {
        const double df = fermi(eg[j], ri.mu, ri.temperature) -
                          fermi(eg[j], rj.mu, rj.temperature);
        return entry.t2[j] * df;
      };
      acc += 0.5 * (integrand(i) + integrand(i + 1)) * (eg[i + 1] - eg[i]);
    }
    current += quantum * acc;
  }
  return current;
}

FluxRecorder::FluxRecorder(const GridSpec& grid, const FieldConfig& field,
                           double y, double x_lo, double x_hi)
    : config_(field) {
  iy_ = nearest_index(y, grid.ymin, grid.dy(), grid.ny);
  ix_lo_ = nearest_index(x_lo, grid.xmin, grid.dx(), grid.nx);
  ix_hi_ = nearest_index(x_hi, grid.xmin, grid.dx(), grid.nx);
  if (iy_ < 1) iy_ = 1;
  if (iy_ > grid.ny - 2) iy_ = grid.ny - 2;
}

void FluxRecorder::sample(int, double t, const ComplexField& field) {
  const GridSpec& grid = field.grid;
  const double hbar = constants::hbar;
  const double m = config_.mass;
  const auto xs = grid.x_coords();
  const double b = config_.b_field;

  double flux = 0.0;
  for (int ix = ix_lo_; ix <= ix_hi_; ++ix) {
    const cplx psi = field.at(ix, iy_);
    const cplx dpsi_dy =
        (field.at(ix, iy_ + 1) - field.at(ix, iy_ - 1)) / (2.0 * grid.dy());
    double j = (hbar / m) * std::imag(std::conj(psi) * dpsi_dy);
    if (b != 0.0) {
      const double a_y = 0.5 * b * xs[ix];  // symmetric gauge
      j -= config_.charge * a_y / m * std::norm(psi);
    }
    flux += j * grid.dx();
  }
  times_.push_back(t);
  flux_.push_back(flux);
}

double FluxRecorder::total() const {
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < times_.size(); ++i)
    acc += 0.5 * (flux_[i] + flux_[i + 1]) * (times_[i + 1] - times_[i]);
  return acc;
}

}  // namespace wpl
