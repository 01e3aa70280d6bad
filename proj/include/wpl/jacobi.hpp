#pragma once

#include <span>
#include <vector>

namespace wpl {

/// Mass-weighted relative coordinates for an N-particle chain:
///   xi_j = (M_1 r_1 + ... + M_j r_j)/(M_1+...+M_j) - r_{j+1},  j < N,
/// each carrying the reduced mass 1/mu_j = (sum_{i<=j} M_i)^-1 + M_{j+1}^-1.
/// Units follow the input masses (amu in the molecular scenarios).
struct JacobiSystem {
  std::vector<double> masses;
  std::vector<double> reduced_masses;  // mu_1 .. mu_{N-1}
  double total_mass = 0.0;
  /// coefficients[j][i]: weight of particle position r_i in xi_{j+1}
  /// (r_{j+2} enters with weight -1; trailing entries are zero).
  std::vector<std::vector<double>> coefficients;
};

/// Requires N >= 2 and positive masses.
JacobiSystem jacobi_reduce(std::span<const double> masses);

}  // namespace wpl
