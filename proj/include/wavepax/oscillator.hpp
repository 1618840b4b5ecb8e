#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "wavepax/types.hpp"

namespace wavepax {

enum class Preset { free, harmonic, caldirola_kanai, power_law, tabulated };

Preset preset_from_name(const std::string& name);
std::string preset_name(Preset p);

// Time-dependent quadratic operator  L = -kappa1(t) Lap + kappa2(t)|x|^2
// with kappa1 bounded below by a positive constant and kappa2 >= 0.
struct OscillatorSpec {
  Preset preset = Preset::tabulated;
  std::map<std::string, double> params;
  std::function<double(double)> kappa1;
  std::function<double(double)> kappa2;

  // Throws ParameterError if kappa1 <= 0 or kappa2 < 0 anywhere on a
  // 256-point sample of [0, T].
  void validate_on(double T) const;
};

// Presets:
//   free:            kappa1 = 1,            kappa2 = 0
//   harmonic:        kappa1 = 1/2,          kappa2 = 1/2
//   caldirola_kanai: kappa1 = e^{-2at}/2,   kappa2 = e^{2at} sigma^2/2   (params a, sigma)
//   power_law:       kappa1 = (t+d)^{-a}/2, kappa2 = sigma^2 (t+d)^b/2  (params a, b, sigma, d_offset)
OscillatorSpec make_oscillator(Preset preset,
                               const std::map<std::string, double>& params = {});
OscillatorSpec make_oscillator(std::function<double(double)> kappa1,
                               std::function<double(double)> kappa2);

struct FlowOptions {
  double rel_tol = 1e-9;
  double abs_tol = 1e-12;
  int mesh = 2048;          // dense output samples on [0, T]
  double zero_tol = 1e-6;   // |x| threshold declaring a zero crossing
};

// Hamiltonian trajectory x' = 2 kappa1 p, p' = -2 kappa2 x from (1, 0).
// One scalar trajectory: coordinates decouple and start identically.
struct HamiltonianFlow {
  std::vector<double> t;
  std::vector<double> x, p;
  std::vector<double> dx, dp;  // RHS at the samples, for interpolation
  Horizon T_D;                 // first zero crossing of x, if any

  double x_at(double time) const;
  double p_at(double time) const;
};

HamiltonianFlow hamiltonian_flow(const OscillatorSpec& osc, double T,
                                 const FlowOptions& opts = {});
inline HamiltonianFlow hamiltonian_flow(const OscillatorSpec& osc, double T,
                                        double tol) {
  FlowOptions o;
  o.rel_tol = tol;
  o.abs_tol = tol * 1e-3;
  return hamiltonian_flow(osc, T, o);
}

// max over interior mesh points of |x' - 2 k1 p| + |p' + 2 k2 x|, with the
// derivatives re-estimated by 4th-order central differences.
double flow_residual(const HamiltonianFlow& flow, const OscillatorSpec& osc);

}  // namespace wavepax
