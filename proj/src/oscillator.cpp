#include "wavepax/oscillator.hpp"

#include <cmath>

#include "ode.hpp"

namespace wavepax {

Preset preset_from_name(const std::string& name) {
  if (name == "free") return Preset::free;
  if (name == "harmonic") return Preset::harmonic;
  if (name == "ck" || name == "caldirola_kanai") return Preset::caldirola_kanai;
  if (name == "power_law") return Preset::power_law;
  if (name == "tabulated") return Preset::tabulated;
  throw ParameterError("unknown oscillator preset '" + name + "'");
}

std::string preset_name(Preset p) {
  switch (p) {
    case Preset::free: return "free";
    case Preset::harmonic: return "harmonic";
    case Preset::caldirola_kanai: return "ck";
    case Preset::power_law: return "power_law";
    case Preset::tabulated: return "tabulated";
  }
  return "?";
}

namespace {

double require_param(const std::map<std::string, double>& params,
                     const std::string& key, bool positive) {
  auto it = params.find(key);
  if (it == params.end())
    throw ParameterError("missing oscillator parameter '" + key + "'");
  if (positive && !(it->second > 0.0))
    throw ParameterError("oscillator parameter '" + key + "' must be positive");
  return it->second;
}

}  // namespace

void OscillatorSpec::validate_on(double T) const {
  if (!kappa1 || !kappa2) throw ParameterError("oscillator has no coefficients");
  for (int i = 0; i <= 256; ++i) {
    const double t = T * double(i) / 256.0;
    const double k1 = kappa1(t), k2 = kappa2(t);
    if (!(k1 > 0.0) || !std::isfinite(k1))
      throw ParameterError("kappa1(t) must stay positive (t=" + std::to_string(t) + ")");
    if (k2 < 0.0 || !std::isfinite(k2))
      throw ParameterError("kappa2(t) must stay nonnegative (t=" + std::to_string(t) + ")");
  }
}

OscillatorSpec make_oscillator(Preset preset,
                               const std::map<std::string, double>& params) {
  OscillatorSpec osc;
  osc.preset = preset;
  osc.params = params;
  switch (preset) {
    case Preset::free:
      osc.kappa1 = [](double) { return 1.0; };
      osc.kappa2 = [](double) { return 0.0; };
      break;
    case Preset::harmonic:
      osc.kappa1 = [](double) { return 0.5; };
      osc.kappa2 = [](double) { return 0.5; };
      break;
    case Preset::caldirola_kanai: {
      const double a = require_param(params, "a", true);
      const double s = require_param(params, "sigma", true);
      osc.kappa1 = [a](double t) { return std::exp(-2.0 * a * t) / 2.0; };
      osc.kappa2 = [a, s](double t) { return std::exp(2.0 * a * t) * s * s / 2.0; };
      break;
    }
    case Preset::power_law: {
      const double a = require_param(params, "a", true);
      const double b = require_param(params, "b", true);
      const double s = require_param(params, "sigma", true);
      const double d = require_param(params, "d_offset", true);
      osc.kappa1 = [a, d](double t) { return 0.5 / std::pow(t + d, a); };
      osc.kappa2 = [b, s, d](double t) { return 0.5 * s * s * std::pow(t + d, b); };
      break;
    }
    case Preset::tabulated:
      throw ParameterError("tabulated preset needs explicit coefficient functions");
  }
  return osc;
}

OscillatorSpec make_oscillator(std::function<double(double)> kappa1,
                               std::function<double(double)> kappa2) {
  OscillatorSpec osc;
  osc.preset = Preset::tabulated;
  osc.kappa1 = std::move(kappa1);
  osc.kappa2 = std::move(kappa2);
  return osc;
}

double HamiltonianFlow::x_at(double time) const {
  return detail::hermite_interp(t, x, dx, time);
}
double HamiltonianFlow::p_at(double time) const {
  return detail::hermite_interp(t, p, dp, time);
}

HamiltonianFlow hamiltonian_flow(const OscillatorSpec& osc, double T,
                                 const FlowOptions& opts) {
  if (!(T > 0.0)) throw DomainError("flow horizon T must be positive");
  osc.validate_on(T);

  detail::Rhs rhs = [&osc](const detail::State& y, detail::State& dydt, double t) {
    dydt[0] = 2.0 * osc.kappa1(t) * y[1];
    dydt[1] = -2.0 * osc.kappa2(t) * y[0];
  };
  auto sol = detail::integrate_mesh(rhs, {1.0, 0.0}, T, opts.mesh, opts.rel_tol,
                                    opts.abs_tol);
  if (sol.stopped)
    throw HorizonError("flow integration stalled (step-size underflow)",
                       sol.stop_time);

  HamiltonianFlow flow;
  flow.t = sol.t;
  flow.x.resize(sol.y.size());
  flow.p.resize(sol.y.size());
  flow.dx.resize(sol.y.size());
  flow.dp.resize(sol.y.size());
  for (std::size_t i = 0; i < sol.y.size(); ++i) {
    flow.x[i] = sol.y[i][0];
    flow.p[i] = sol.y[i][1];
    flow.dx[i] = sol.dy[i][0];
    flow.dp[i] = sol.dy[i][1];
  }

  // First zero of x: scan the mesh for a sign change (bisection on the
  // interpolant) or a dip below the zero tolerance.
  flow.T_D = Horizon::infinite();
  for (std::size_t i = 1; i < flow.x.size(); ++i) {
    if (flow.x[i - 1] * flow.x[i] <= 0.0 && flow.x[i - 1] != flow.x[i]) {
      double lo = flow.t[i - 1], hi = flow.t[i];
      double flo = flow.x[i - 1];
      for (int it = 0; it < 200 && hi - lo > 1e-14 * (1.0 + hi); ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = flow.x_at(mid);
        if (flo * fm <= 0.0) hi = mid; else { lo = mid; flo = fm; }
      }
      flow.T_D = Horizon::at(0.5 * (lo + hi));
      break;
    }
    if (std::abs(flow.x[i]) < opts.zero_tol) {
      flow.T_D = Horizon::at(flow.t[i]);
      break;
    }
  }
  return flow;
}

double flow_residual(const HamiltonianFlow& flow, const OscillatorSpec& osc) {
  const auto dxn = detail::central_diff(flow.t, flow.x);
  const auto dpn = detail::central_diff(flow.t, flow.p);
  double worst = 0.0;
  for (std::size_t i = 2; i + 2 < flow.t.size(); ++i) {
    const double t = flow.t[i];
    const double r = std::abs(dxn[i] - 2.0 * osc.kappa1(t) * flow.p[i]) +
                     std::abs(dpn[i] + 2.0 * osc.kappa2(t) * flow.x[i]);
    worst = std::max(worst, r);
  }
  return worst;
}

}  // namespace wavepax
