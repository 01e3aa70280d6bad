#include "wpl/jacobi.hpp"

#include <stdexcept>

namespace wpl {

JacobiSystem jacobi_reduce(std::span<const double> masses) {
  if (masses.size() < 2)
    throw std::invalid_argument("jacobi_reduce: need at least two masses");
  for (double m : masses)
    if (!(m > 0.0)) throw std::invalid_argument("jacobi_reduce: masses must be positive");

  const std::size_t n = masses.size();
  JacobiSystem sys;
  sys.masses.assign(masses.begin(), masses.end());
  sys.reduced_masses.reserve(n - 1);
  sys.coefficients.reserve(n - 1);

  double cluster = 0.0;  // mass of particles 1..j
  for (std::size_t j = 0; j + 1 < n; ++j) {
    cluster += masses[j];
    sys.reduced_masses.push_back(1.0 / (1.0 / cluster + 1.0 / masses[j + 1]));

    std::vector<double> row(n, 0.0);
    for (std::size_t i = 0; i <= j; ++i) row[i] = masses[i] / cluster;
    row[j + 1] = -1.0;
    sys.coefficients.push_back(std::move(row));
  }
  sys.total_mass = cluster + masses[n - 1];
  return sys;
}

}  // namespace wpl
