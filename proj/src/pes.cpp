#include "wpl/pes.hpp"

#include <cmath>

namespace wpl {

double v_ground(double r_cx, double r_ci, const PesParams& p) {
  const double dci = r_ci - p.r_ci_e;
  const double morse = std::exp(-p.beta * dci) - 1.0;
  const double relax = std::exp(-p.alpha * dci);
  const double stiffness = p.k + (p.k_e - p.k) * relax;
  const double stretch = r_cx - p.r_cx_e * relax;
  return -p.d_e - p.e_star + p.d_e * morse * morse +
         0.5 * stiffness * stretch * stretch;
}

double v_excited(double r_cx, double r_ci, const PesParams& p) {
  return p.ex_a * std::exp(-p.ex_alpha * (r_ci + p.ex_mix * r_cx)) +
         p.ex_b * std::exp(-p.ex_beta * r_ci) +
         0.5 * p.ex_k * r_cx * r_cx;
}

}  // namespace wpl
