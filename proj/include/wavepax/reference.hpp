#pragma once

#include <vector>

#include "wavepax/decompose.hpp"
#include "wavepax/grid.hpp"
#include "wavepax/oscillator.hpp"
#include "wavepax/riccati.hpp"

namespace wavepax {

// Observation geometry: Omega is the ball of diameter diam_omega at the
// origin, contained in the ball of radius R0, contained in [-R, R]^dim.
struct DomainSpec {
  double diam_omega = 2.0;
  double R0 = 1.0;
  double R = 2.0;
  int dim = 1;

  void validate() const;
};

// Brute-force spectral reference for d_t u + i(-k1 Lap + k2|x|^2) u = 0.
struct ReferenceSolution {
  GridSpec grid;
  std::vector<double> t_samples;
  std::vector<Field> fields;
  double mass_drift = 0.0;  // max relative deviation of ||u(t)||_2

  const Field& at_sample(std::size_t i) const { return fields[i]; }
};

// Strang splitting, coefficients frozen at step midpoints:
//   e^{-i k2 |x|^2 dt/2}  e^{-i k1 |xi|^2 dt}  e^{-i k2 |x|^2 dt/2}.
// Stores `store`+1 evenly spaced snapshots (always including t=0 and T).
// Throws GridError when boundary mass exceeds 1e-10 of the total.
ReferenceSolution split_step_solve(const OscillatorSpec& osc, const Field& u0,
                                   const GridSpec& grid, double T, int steps,
                                   int store = 64);

// ||u||_{L2((0,T) x omega)} with omega the grid minus the ball of diameter
// diam_omega: trapezoid in t over the stored snapshots of the grid
// quadrature of |u|^2 outside the ball, square-rooted.
double l2_norm_spacetime(const ReferenceSolution& sol, const DomainSpec& dom);

struct ParametrixComparison {
  double error = 0.0;  // time-integrated L2 distance
  // (tail + (e^N N eps0)^dim ||u0||) T while the scheme term is informative
  // ((e^N N eps0)^dim <= 1e6). Mixtures whose N is a packet count rather
  // than a Hermite order blow that term up, and the bound reported is the
  // t = 0 residual carried unitarily, ||diff(0)|| sqrt(T).
  double bound = 0.0;
  bool ok = false;
};

// Time-integrated parametrix error against the reference, compared with the
// two-term bound plus `slack` for the oracle's own error.
ParametrixComparison compare_parametrix(const ReferenceSolution& sol,
                                        const GaussianMixture& mix,
                                        const RiccatiSolution& ric,
                                        double slack = 1e-4);

}  // namespace wavepax
