#include "wpl/hall.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "wpl/constants.hpp"

namespace wpl {

namespace {

constexpr double kFourPiEps0 = 4.0 * 3.14159265358979323846 * 8.8541878128e-12;

double coulomb_prefactor(double epsilon_r) { return 1.0 / (kFourPiEps0 * epsilon_r); }

}  // namespace

DeviceGeometry build_geometry(double lx, double ly, int n_donors,
                              double donor_offset, double epsilon_r,
                              double b_field, std::uint64_t donor_seed) {
  if (!(lx > 0.0) || !(ly > 0.0))
    throw std::invalid_argument("geometry: device extents must be positive");
  if (n_donors <= 0) throw std::invalid_argument("geometry: need donors");
  if (!(donor_offset > 0.0))
    throw std::invalid_argument("geometry: donor offset must be positive");

  DeviceGeometry g;
  g.lx = lx;
  g.ly = ly;
  g.n_donors = n_donors;
  g.donor_offset = donor_offset;
  g.epsilon_r = epsilon_r;
  g.b_field = b_field;
  g.donor_seed = donor_seed;
  std::mt19937_64 rng(donor_seed);
  std::uniform_real_distribution<double> ux(0.0, lx), uy(0.0, ly);
  g.donor_positions.reserve(n_donors);
  for (int i = 0; i < n_donors; ++i) g.donor_positions.push_back({ux(rng), uy(rng)});
  return g;
}

std::vector<Vec2> coulomb_forces(std::span<const Particle> particles,
                                 const DeviceGeometry& geometry, double softening) {
  if (softening < 0.0) throw std::invalid_argument("forces: negative softening");
  const double pref = coulomb_prefactor(geometry.epsilon_r);
  const double s2 = softening * softening;
  const double dz2 = geometry.donor_offset * geometry.donor_offset;
  const double donor_q = constants::elementary_charge;
  const int n = static_cast<int>(particles.size());

  std::vector<Vec2> forces(n);
#pragma omp parallel for schedule(static)
  for (int k = 0; k < n; ++k) {
    const Particle& pk = particles[k];
    double fx = 0.0, fy = 0.0;
    for (int l = 0; l < n; ++l) {
      if (l == k) continue;
      const double dx = pk.pos.x - particles[l].pos.x;
      const double dy = pk.pos.y - particles[l].pos.y;
      const double r2 = dx * dx + dy * dy + s2;
      const double inv = 1.0 / (r2 * std::sqrt(r2));
      const double c = pk.charge * particles[l].charge * inv;
      fx += c * dx;
      fy += c * dy;
    }
    for (const Vec2& d : geometry.donor_positions) {
      const double dx = pk.pos.x - d.x;
      const double dy = pk.pos.y - d.y;
      const double r2 = dx * dx + dy * dy + dz2 + s2;
      const double inv = 1.0 / (r2 * std::sqrt(r2));
      const double c = pk.charge * donor_q * inv;
      fx += c * dx;
      fy += c * dy;
    }
    forces[k] = {pref * fx, pref * fy};
  }
  return forces;
}

void boris_step(std::span<Particle> particles, std::span<const Vec2> forces,
                double dt, double omega, BorisKick kick) {
  if (!(dt > 0.0)) throw std::invalid_argument("boris_step: dt must be positive");
  if (forces.size() != particles.size())
    throw std::invalid_argument("boris_step: force/particle count mismatch");

  const double wt = omega * dt;
  const double denom = 1.0 + wt * wt;
  const double c_rot = (1.0 - wt * wt) / denom;  // cos of the Boris rotation
  const double s_rot = 2.0 * wt / denom;         // sin of the Boris rotation

  for (std::size_t k = 0; k < particles.size(); ++k) {
    Particle& p = particles[k];
    const double ax = forces[k].x / p.mass;
    const double ay = forces[k].y / p.mass;
    double vx = p.vel.x, vy = p.vel.y;
    if (kick == BorisKick::printed) {
      // as printed: rotate, then the full impulse
      const double rx = c_rot * vx - s_rot * vy;
      const double ry = s_rot * vx + c_rot * vy;
      vx = rx + ax * dt;
      vy = ry + ay * dt;
    } else {
      vx += 0.5 * ax * dt;
      vy += 0.5 * ay * dt;
      const double rx = c_rot * vx - s_rot * vy;
      const double ry = s_rot * vx + c_rot * vy;
      vx = rx + 0.5 * ax * dt;
      vy = ry + 0.5 * ay * dt;
    }
    p.vel = {vx, vy};
    p.pos.x += dt * vx;
    p.pos.y += dt * vy;
  }
}

double point_potential(Vec2 point, std::span<const Particle> particles,
                       const DeviceGeometry& geometry, double softening,
                       double exclude_radius) {
  const double pref = coulomb_prefactor(geometry.epsilon_r);
  const double s2 = softening * softening;
  const double dz2 = geometry.donor_offset * geometry.donor_offset;
  const double ex2 = exclude_radius * exclude_radius;
  double v = 0.0;
  for (const Particle& p : particles) {
    const double dx = point.x - p.pos.x;
    const double dy = point.y - p.pos.y;
    const double d2 = dx * dx + dy * dy;
    if (d2 <= ex2) continue;
    v += p.charge / std::sqrt(d2 + s2);
  }
  for (const Vec2& d : geometry.donor_positions) {
    const double dx = point.x - d.x;
    const double dy = point.y - d.y;
    v += constants::elementary_charge / std::sqrt(dx * dx + dy * dy + dz2 + s2);
  }
  return pref * v;
}

std::vector<ContactAction> contact_update(std::span<const ContactSpec> contacts,
                                          std::span<const ContactObservation> observations) {
  if (contacts.size() != observations.size())
    throw std::invalid_argument("contact_update: one observation set per contact");

  std::vector<ContactAction> actions;
  for (std::size_t c = 0; c < contacts.size(); ++c) {
    const ContactSpec& spec = contacts[c];
    const ContactObservation& obs = observations[c];
    if (obs.v_avg.size() != spec.points.size())
      throw std::invalid_argument("contact_update: stale observations");
    const double band =
        spec.dead_band > 0.0 ? spec.dead_band : 0.01 * std::abs(spec.v_target);

    ContactAction action;
    action.contact = spec.id;
    double best_pos = band, best_neg = -band;
    for (std::size_t i = 0; i < obs.v_avg.size(); ++i) {
      const double dev = obs.v_avg[i] - spec.v_target;
      if (dev > best_pos) {
        best_pos = dev;
        action.inject = true;
        action.inject_point = static_cast<int>(i);
      }
      if (dev < best_neg) {
        best_neg = dev;
        action.remove = true;
        action.remove_point = static_cast<int>(i);
      }
    }
    actions.push_back(action);
  }
  return actions;
}

HallMaps accumulate_maps(std::span<const EnsembleSnapshot> snapshots,
                         const DeviceGeometry& geometry, const GridSpec& stats_grid,
                         double softening) {
  if (snapshots.size() < 100)
    throw std::invalid_argument("accumulate_maps: need at least 100 snapshots");

  HallMaps maps;
  maps.v_avg = RealField(stats_grid);
  maps.current_x = RealField(stats_grid);
  maps.current_y = RealField(stats_grid);

  const double dx = stats_grid.dx(), dy = stats_grid.dy();
  const double cell_area = dx * dy;

  for (const EnsembleSnapshot& snap : snapshots) {
#pragma omp parallel for schedule(static)
    for (int iy = 0; iy < stats_grid.ny; ++iy) {
      for (int ix = 0; ix < stats_grid.nx; ++ix) {
        const Vec2 point{stats_grid.xmin + ix * dx, stats_grid.ymin + iy * dy};
        maps.v_avg.at(ix, iy) +=
            point_potential(point, snap.particles, geometry, softening);
      }
    }
    // cloud-in-cell deposition of q*v
    for (const Particle& p : snap.particles) {
      const double gx = (p.pos.x - stats_grid.xmin) / dx;
      const double gy = (p.pos.y - stats_grid.ymin) / dy;
      const int ix = static_cast<int>(std::floor(gx));
      const int iy = static_cast<int>(std::floor(gy));
      const double fx = gx - ix, fy = gy - iy;
      const double w[2][2] = {{(1 - fx) * (1 - fy), (1 - fx) * fy},
                              {fx * (1 - fy), fx * fy}};
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
          const int jx = ix + a, jy = iy + b;
          if (jx < 0 || jx >= stats_grid.nx || jy < 0 || jy >= stats_grid.ny)
            continue;
          maps.current_x.at(jx, jy) += w[a][b] * p.charge * p.vel.x / cell_area;
          maps.current_y.at(jx, jy) += w[a][b] * p.charge * p.vel.y / cell_area;
        }
    }
  }

  const double inv = 1.0 / static_cast<double>(snapshots.size());
  for (double& v : maps.v_avg.v) v *= inv;
  for (double& v : maps.current_x.v) v *= inv;
  for (double& v : maps.current_y.v) v *= inv;
  return maps;
}

namespace {

void reflect_walls(Particle& p, const DeviceGeometry& g) {
  if (p.pos.x < 0.0) {
    p.pos.x = -p.pos.x;
    p.vel.x = -p.vel.x;
  } else if (p.pos.x > g.lx) {
    p.pos.x = 2.0 * g.lx - p.pos.x;
    p.vel.x = -p.vel.x;
  }
  if (p.pos.y < 0.0) {
    p.pos.y = -p.pos.y;
    p.vel.y = -p.vel.y;
  } else if (p.pos.y > g.ly) {
    p.pos.y = 2.0 * g.ly - p.pos.y;
    p.vel.y = -p.vel.y;
  }
  // pathological multi-wall crossings clamp to the interior
  p.pos.x = std::clamp(p.pos.x, 0.0, g.lx);
  p.pos.y = std::clamp(p.pos.y, 0.0, g.ly);
}

}  // namespace

RunStatistics run_steady_state(const DeviceGeometry& geometry,
                               std::vector<ContactSpec> contacts,
                               const HallRunParams& params) {
  if (params.steps < 1) throw std::invalid_argument("hall run: no steps");
  if (contacts.empty()) throw std::invalid_argument("hall run: no contacts");
  for (ContactSpec& c : contacts) {
    if (c.points.empty()) throw std::invalid_argument("hall run: contact without points");
    if (!(c.window > 0.0)) throw std::invalid_argument("hall run: contact window must be positive");
    if (c.dead_band <= 0.0) c.dead_band = 0.01 * std::abs(c.v_target);
    if (c.capture_radius <= 0.0) c.capture_radius = 0.05 * geometry.ly;
    if (c.entry_offset == 0.0) c.entry_offset = 0.02 * geometry.lx;
  }

  const double m_eff = constants::gaas_effective_mass;
  const double q_e = -constants::elementary_charge;
  // signed rotation rate: -qB/2m = +eB/2m for electrons in B = +z
  const double omega = -q_e * geometry.b_field / (2.0 * m_eff);
  const double speed_limit = constants::speed_of_light / 100.0;

  std::mt19937_64 rng(params.seed);
  std::uniform_real_distribution<double> ux(0.0, geometry.lx), uy(0.0, geometry.ly);

  std::vector<Particle> particles;
  particles.reserve(params.n_initial + 256);
  for (int i = 0; i < params.n_initial; ++i)
    particles.push_back({{ux(rng), uy(rng)}, {0.0, 0.0}, q_e, m_eff});

  const int control_stride = std::max(
      1, static_cast<int>(std::lround(contacts[0].window / params.dt)));
  const int snapshot_stride =
      params.snapshot_stride > 0 ? params.snapshot_stride
                                 : std::max(1, params.steps / 200);
  const double band = params.convergence_band > 0.0
                          ? params.convergence_band
                          : 0.2 * std::abs(contacts[0].v_target);

  RunStatistics stats;
  stats.n_initial = params.n_initial;

  // per-contact per-point window accumulators
  std::vector<std::vector<double>> accum(contacts.size());
  for (std::size_t c = 0; c < contacts.size(); ++c)
    accum[c].assign(contacts[c].points.size(), 0.0);
  int accum_count = 0;

  auto thermal_speed = [&](double temperature) {
    std::normal_distribution<double> gauss(
        0.0, std::sqrt(constants::boltzmann * std::max(temperature, 0.0) / m_eff));
    return Vec2{gauss(rng), gauss(rng)};
  };

  for (int step = 1; step <= params.steps; ++step) {
    const std::vector<Vec2> forces =
        coulomb_forces(particles, geometry, params.softening);
    boris_step(particles, forces, params.dt, omega, params.kick);
    for (Particle& p : particles) reflect_walls(p, geometry);

    if (step % 64 == 0) {
      for (const Particle& p : particles)
        if (std::hypot(p.vel.x, p.vel.y) > speed_limit)
          throw std::runtime_error(
              "hall run: blow-up detected (speed " +
              std::to_string(std::hypot(p.vel.x, p.vel.y)) + " m/s at step " +
              std::to_string(step) + ")");
    }

    for (std::size_t c = 0; c < contacts.size(); ++c)
      for (std::size_t i = 0; i < contacts[c].points.size(); ++i)
        accum[c][i] += point_potential(contacts[c].points[i], particles, geometry,
                                       params.softening);
    ++accum_count;

    if (step % control_stride == 0) {
      const double t = step * params.dt;
      std::vector<ContactObservation> observations;
      double extremal = 0.0;
      for (std::size_t c = 0; c < contacts.size(); ++c) {
        ContactObservation obs;
        obs.contact = contacts[c].id;
        obs.v_avg.resize(accum[c].size());
        for (std::size_t i = 0; i < accum[c].size(); ++i) {
          obs.v_avg[i] = accum[c][i] / accum_count;
          extremal = std::max(extremal,
                              std::abs(obs.v_avg[i] - contacts[c].v_target));
        }
        observations.push_back(std::move(obs));
        accum[c].assign(accum[c].size(), 0.0);
      }
      accum_count = 0;
      stats.window_times.push_back(t);
      stats.extremal_deviation.push_back(extremal);

      const auto actions = contact_update(contacts, observations);
      for (std::size_t c = 0; c < actions.size(); ++c) {
        const ContactAction& action = actions[c];
        const ContactSpec& spec = contacts[c];
        if (action.inject) {
          Vec2 at = spec.points[action.inject_point];
          // displace the fresh electron toward the device interior
          at.x += at.x < 0.5 * geometry.lx ? spec.entry_offset : -spec.entry_offset;
          Particle fresh{at, thermal_speed(spec.injection_temperature), q_e, m_eff};
          particles.push_back(fresh);
          stats.events.push_back({t, spec.id, HallEvent::Kind::inject, at});
        }
        if (action.remove) {
          const Vec2 at = spec.points[action.remove_point];
          int best = -1;
          double best_d2 = spec.capture_radius * spec.capture_radius;
          for (std::size_t k = 0; k < particles.size(); ++k) {
            const double dx = particles[k].pos.x - at.x;
            const double dy = particles[k].pos.y - at.y;
            const double d2 = dx * dx + dy * dy;
            if (d2 < best_d2) {
              best_d2 = d2;
              best = static_cast<int>(k);
            }
          }
          if (best >= 0) {
            const Vec2 removed_at = particles[best].pos;
            particles.erase(particles.begin() + best);
            stats.events.push_back({t, spec.id, HallEvent::Kind::remove, removed_at});
          } else {
            stats.events.push_back({t, spec.id, HallEvent::Kind::remove_skipped, at});
          }
        }
      }
    }

    if (step % snapshot_stride == 0)
      stats.snapshots.push_back({step * params.dt, particles});
  }

  stats.n_final = static_cast<int>(particles.size());

  // convergence: the band must hold over the dwell tail, and injection/removal
  // rates must balance there
  const std::size_t n_windows = stats.window_times.size();
  const std::size_t dwell_start =
      n_windows - static_cast<std::size_t>(params.dwell_fraction * n_windows);
  stats.band_converged = n_windows > 4;
  for (std::size_t w = dwell_start; w < n_windows; ++w)
    if (stats.extremal_deviation[w] > band) stats.band_converged = false;

  const double t_dwell_start =
      n_windows > 0 ? stats.window_times[dwell_start > 0 ? dwell_start - 1 : 0] : 0.0;
  const double t_end = params.steps * params.dt;
  const double dwell_span = std::max(t_end - t_dwell_start, params.dt);
  int injections = 0, removals = 0;
  for (const HallEvent& ev : stats.events) {
    if (ev.t <= t_dwell_start) continue;
    if (ev.kind == HallEvent::Kind::inject) ++injections;
    if (ev.kind == HallEvent::Kind::remove) ++removals;
  }
  stats.injection_rate = injections / dwell_span;
  stats.removal_rate = removals / dwell_span;
  const double rate_max = std::max(stats.injection_rate, stats.removal_rate);
  stats.rates_balanced =
      rate_max == 0.0 ||
      std::abs(stats.injection_rate - stats.removal_rate) <=
          params.rate_tolerance * rate_max;

  if (stats.snapshots.size() >= 100 && params.stats_grid.size() > 0)
    stats.maps = accumulate_maps(stats.snapshots, geometry, params.stats_grid,
                                 params.softening);
  return stats;
}

}  // namespace wpl
