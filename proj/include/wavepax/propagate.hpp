#pragma once

#include <complex>
#include <vector>

#include "wavepax/decompose.hpp"
#include "wavepax/grid.hpp"
#include "wavepax/oscillator.hpp"
#include "wavepax/riccati.hpp"

namespace wavepax {

// Single propagated Gaussian wavepacket,
//   phi_a(t,x) = (a(t)^2/(1-4i y3))^{d/2} e^{i y1 |x|^2 - |y2 x + a|^2/(1-4i y3)}
// equal to e^{-|x+a|^2} at t = 0.
struct PropagatedPacket {
  std::vector<double> center;          // the vector a
  const RiccatiSolution* riccati = nullptr;

  std::complex<double> eval(double t, const std::vector<double>& x) const;
};

std::complex<double> propagate_packet(const std::vector<double>& center,
                                      const RiccatiSolution& ric, double t,
                                      const std::vector<double>& x);

// prefactor gamma(t) = (a^2/(1-4i y3))^{d/2}, principal branch. Throws
// ConsistencyError if 1 - 4i y3 ever leaves the right half-plane on the
// sample mesh (it cannot while y3 <= 0).
std::complex<double> packet_prefactor(const RiccatiSolution& ric, double t, int dim);

struct ParametrixField {
  GridSpec grid;
  double t = 0.0;
  Field values;
};

// sum_n c_n phi_n(t, x) on the grid
ParametrixField parametrix(const GaussianMixture& mix, const RiccatiSolution& ric,
                           double t, const GridSpec& grid);

// FIO application to gridded data:
//   u(t,x) = a^d e^{i y1 |x|^2} (F^{-1}[e^{i y3 |eta|^2} \hat u_0])(y2 x)
// realized with the DFT and exact evaluation of the band-limited interpolant
// at the scaled points. Throws GridError when u0 carries boundary mass.
Field fio_apply(const Field& u0, const GridSpec& grid, const RiccatiSolution& ric,
                double t);

// normalized discrete residual of d_t u + i(-k1 Lap + k2 |x|^2) u = 0 from
// three consecutive time slices (centered difference in t, spectral
// Laplacian in x).
double pde_residual(const Field& u_prev, const Field& u_mid, const Field& u_next,
                    double t, double h, const OscillatorSpec& osc,
                    const GridSpec& grid);

}  // namespace wavepax
