#pragma once

#include <vector>

#include "wavepax/oscillator.hpp"
#include "wavepax/types.hpp"

namespace wavepax {

struct RiccatiOptions {
  double rel_tol = 1e-9;
  double abs_tol = 1e-12;
  int mesh = 2048;          // dense output samples per horizon
  double margin = 1e-3;     // trim below T_D
  double blowup = 1e8;      // |y1| beyond this aborts with a HorizonError
};

struct RiccatiPoint {
  double y1, y2, y3, amp;
};

// Phase coefficients of the FIO solution,
//   y1' = -4 k1 y1^2 - k2   y1(0) = 0
//   y2' = -4 k1 y1 y2       y2(0) = 1
//   y3' = -k1 y2^2          y3(0) = 0
// plus the transport amplitude a' = -2 y1 k1 a, a(0) = 1. The amplitude is
// integrated on its own so that a^2 = y2 stays a genuine cross-check.
struct RiccatiSolution {
  std::vector<double> t;
  std::vector<double> y1, y2, y3, amp;
  std::vector<double> dy1, dy2, dy3, damp;
  double horizon = 0.0;   // last reported time (trimmed below T_D)
  Horizon flow_horizon;   // T_D of the underlying flow

  // Cubic Hermite interpolation; throws HorizonError past the horizon.
  RiccatiPoint at(double time) const;
};

RiccatiSolution solve_riccati(const OscillatorSpec& osc, double T,
                              const RiccatiOptions& opts = {});
inline RiccatiSolution solve_riccati(const OscillatorSpec& osc, double T,
                                     double tol) {
  RiccatiOptions o;
  o.rel_tol = tol;
  o.abs_tol = tol * 1e-3;
  return solve_riccati(osc, T, o);
}

// Integrates the linear reduction v'' - R v' + S v = 0 with S = 4 k1 k2,
// R = (ln k1)', v(0)=1, v'(0)=0 and returns max_t |y1 - v'/(4 k1 v)|.
// Throws ConsistencyError if v crosses zero inside the horizon.
double linear_reduction_check(const OscillatorSpec& osc,
                              const RiccatiSolution& sol);

// e^{-4 K0 K t} <= y2 <= e^{4 K0 K t} and y3 <= 0 at every sample.
bool gronwall_bounds_check(const RiccatiSolution& sol, double K0, double K);

// max over interior samples of the ODE residuals of the system above,
// derivatives re-estimated by 4th-order central differences.
double riccati_residual(const RiccatiSolution& sol, const OscillatorSpec& osc);

// Closed forms for golden tests, selectable by preset:
//   free:     (0, 1, -t)
//   harmonic: (-tan(t)/2, sec(t), -tan(t)/2)
//   ck with a > sigma (lambda = sqrt(a^2 - sigma^2)):
//     y1 = e^{2at}/2 (lambda - a^2/lambda) sinh(lt) / (cosh(lt) + a/lambda sinh(lt))
//     y2 = lambda e^{at} / (lambda cosh(lt) + a sinh(lt))
//     y3 = -sinh(lt) / (2a sinh(lt) + 2 lambda cosh(lt))
// Throws DomainError for presets without a listed form.
RiccatiPoint riccati_closed_form(Preset preset,
                                 const std::map<std::string, double>& params,
                                 double t);

}  // namespace wavepax
