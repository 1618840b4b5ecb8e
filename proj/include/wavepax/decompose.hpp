#pragma once

#include <functional>
#include <vector>

#include "wavepax/hermite.hpp"
#include "wavepax/types.hpp"

namespace wavepax {

// Finite Gaussian mixture sum_n c_n e^{-|x + a_n|^2}. Note the sign: a
// packet with center vector a_n sits at the point -a_n.
struct GaussianMixture {
  int dim = 1;
  int N = 0;
  double eps0 = 0.0;
  std::vector<std::vector<double>> centers;  // the a_n
  std::vector<double> coeffs;                // the c_n
  double eta = 0.0;                          // certified L2 residual
  double tail = 0.0;                         // Hermite tail estimate E_N

  double eval(const std::vector<double>& x) const;
  double max_center() const;      // max_n |a_n| (sup norm over entries)
  double center_spread() const;   // alpha_N = max_{n,m} |a_n - a_m|
  bool all_positive() const;
  void validate() const;
};

// Forward-difference Gaussian coefficients from Hermite coefficients,
//   c_n = (1/(n! sqrt(pi))) sum_{k=n}^{N} (-1)^{n-k} / ((k-n)! (2 eps0)^k)
//         * (-1)^k sqrt(2^k k! sqrt(pi)) d_k
// applied along each axis of the coefficient box. All k-terms share one
// sign, so the sums do not cancel.
std::vector<double> gaussian_coeffs(const HermiteCoeffs& d, double eps0, int N);

struct DecomposeOptions {
  int grid_points = 0;   // residual grid per axis; 0 = 4096 (dim 1) / 512 (else)
  int tail_orders = 40;  // extra orders used to estimate E_N
  int quad_nodes = 0;    // Gauss-Hermite nodes; 0 = automatic
};

// Gaussian mixture with centers a_n = n eps0 on the index box, measured L2
// residual (eta) and Hermite tail estimate. Requires N > 2, eps0 in (0,1).
// Throws ConsistencyError if the measured residual breaks the
// finite-difference bound (e^N N eps0)^dim ||f|| + E_N by a clear factor.
GaussianMixture decompose(const std::function<double(const std::vector<double>&)>& f,
                          int N, double eps0, int dim,
                          const DecomposeOptions& opts = {});

struct StepExtension {
  std::function<double(const std::vector<double>&)> phi;
  GaussianMixture mixture;
  double sup_bound = 0.0;  // per-coordinate: 2 e^{-M^2/4} + 2 dx M
};

// Compactly supported piecewise-C1 extension of the characteristic function
// of the half-width M/2 box (erf-profile shoulders, smooth cutoff on
// [9M, 10M]) together with its positive-coefficient Riemann-sum mixture.
// `shift` translates the construction; M >= 2, dx in (0,1).
StepExtension step_extension(double M, double dx, const std::vector<double>& shift,
                             int dim);

// all c_n > 0 and measured L2 residual against f at most eta
bool class_A_check(const GaussianMixture& mix,
                   const std::function<double(const std::vector<double>&)>& f,
                   double eta);

// L2 distance between the mixture and f on a dense uniform grid covering
// every center plus 8 widths of padding.
double mixture_l2_residual(const GaussianMixture& mix,
                           const std::function<double(const std::vector<double>&)>& f,
                           int grid_points = 0);

}  // namespace wavepax
