#pragma once

#include <vector>

#include "wavepax/decompose.hpp"
#include "wavepax/reference.hpp"
#include "wavepax/riccati.hpp"

namespace wavepax {

// Wavepacket spread  A(t) = 2 |y2|^2 / (1 + 16 y3^2)
double spread_A(const RiccatiSolution& ric, double t);

// erfc(x) >= sqrt(2e/pi) (sqrt(beta-1)/beta) e^{-beta x^2},  x >= 0, beta > 1
double erfc_lb(double x, double beta);

// eps(t,R) = min{ pi^{(d-1)/4} e^{1/4} 2^{-3d/4} e^{-A R^2}, (pi/8)^{d/4} }
double epsilon_lower(const RiccatiSolution& ric, double t, double R, int dim);

// delta(t,R0) = e^{1/4} A^{(d-1)/4} R0^{(d-1)/2} 2^{-(d/4+1)} (4pi)^{-1/4} e^{-A R0^2},
// R0 >= 1
double delta_lower(const RiccatiSolution& ric, double t, double R0, int dim);

// C_T = (pi/2)^{d/2} sqrt(T) (int_0^T eps(t,R) delta(t,R0) dt)^{-1} with a
// composite trapezoid rule on 2048/stride + 1 samples. Throws
// CertificateError when the integral degenerates.
double observability_constant(const RiccatiSolution& ric, const DomainSpec& dom,
                              double T, int stride = 1);

struct ReqCheck {
  bool ok = false;        // eps N LHS(t) <= RHS(t) on all of [0, T]
  double margin = 0.0;    // min_t (RHS - eps N LHS)
  double eps_max = 0.0;   // min_t RHS / (N LHS)
  bool raw_ok = false;    // the displayed comparison LHS <= RHS without eps N
};

// Smallness condition on the packet spacing,
//   LHS(t) = sqrt(1+16 y3^2)/(2|y2|) e^{(2|y2|^2 R0^2 + 2|y2| N R0)/(1+16 y3^2)}
//          + sqrt(2 pi) (N+1)/|y2| e^{2 N^2/(1+16 y3^2)}
//   RHS(t) = (1/2) int_{r>R0} e^{-A r^2} dr
// tested in the worked-example form eps N LHS <= RHS.
ReqCheck check_req(int N, double eps, const RiccatiSolution& ric,
                   const DomainSpec& dom, double T);

struct R1Check {
  bool ok = false;
  double rhs_max = 0.0;
};

// Placement condition: R1 must exceed, for all t in [0,T],
//   sqrt((alphaN^2 + 2 - 2 log sqrt(|y2|/(1+16 y3^2))) / (4 y2^2/(1+16 y3^2)))
//   + alphaN/y2 + diam_omega/2
R1Check check_R1(double alphaN, double R1, double diam_omega,
                 const RiccatiSolution& ric, double T);

// Mass of the shifted-Gaussian solution u0 = e^{-|x+delta|^2} in [R,inf)^d:
//   (pi/(4A))^{d/2} |gamma(t)|^2 erfc(sqrt(A)(delta/y2 + R))^d
double counterexample_mass(double delta_shift, const RiccatiSolution& ric,
                           double t, double R, int dim);

// eps(t,R) sum|c_n| <= sum ||c_n phi_n(t,.)||_{L2([-R,R]^d)} by grid quadrature
bool lower_inner_check(const GaussianMixture& mix, const RiccatiSolution& ric,
                       double t, double R, int grid_points = 0);

// (2 e^{-M^2/4} + M dx)^d < (e-1)/(4e) ||phi||_{L2}
bool linfty_check(double M, double dx, int dim, double phi_l2);

struct ObservabilityCertificate {
  double T = 0.0;
  double C_T = 0.0;
  ReqCheck req;
  R1Check r1;
  double A_min = 0.0, A_max = 0.0;
  std::vector<double> t_samples, A_samples, eps_samples, delta_samples;
};

ObservabilityCertificate certify(const RiccatiSolution& ric, const DomainSpec& dom,
                                 double T, int N, double eps, double alphaN,
                                 double R1);

}  // namespace wavepax
