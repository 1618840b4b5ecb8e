#include "wavepax/riccati.hpp"

#include <algorithm>
#include <cmath>

#include "ode.hpp"

namespace wavepax {

RiccatiPoint RiccatiSolution::at(double time) const {
  if (time < -1e-12 || time > horizon * (1.0 + 1e-12) + 1e-300)
    throw HorizonError("riccati evaluation past horizon", horizon);
  time = std::clamp(time, 0.0, horizon);
  return {detail::hermite_interp(t, y1, dy1, time),
          detail::hermite_interp(t, y2, dy2, time),
          detail::hermite_interp(t, y3, dy3, time),
          detail::hermite_interp(t, amp, damp, time)};
}

RiccatiSolution solve_riccati(const OscillatorSpec& osc, double T,
                              const RiccatiOptions& opts) {
  if (!(T > 0.0)) throw DomainError("riccati horizon T must be positive");

  FlowOptions fo;
  fo.rel_tol = opts.rel_tol;
  fo.abs_tol = opts.abs_tol;
  auto flow = hamiltonian_flow(osc, T, fo);

  double T_eff = T;
  if (flow.T_D.is_finite())
    T_eff = std::min(T, flow.T_D.time() - opts.margin);
  if (!(T_eff > 0.0))
    throw HorizonError("requested horizon collides with the flow zero", 0.0);

  detail::Rhs rhs = [&osc](const detail::State& y, detail::State& dydt, double t) {
    const double k1 = osc.kappa1(t), k2 = osc.kappa2(t);
    dydt[0] = -4.0 * k1 * y[0] * y[0] - k2;
    dydt[1] = -4.0 * k1 * y[0] * y[1];
    dydt[2] = -k1 * y[1] * y[1];
    dydt[3] = -2.0 * y[0] * k1 * y[3];
  };
  const double cap = opts.blowup;
  auto stop = [cap](double, const detail::State& y) {
    return std::abs(y[0]) > cap || !std::isfinite(y[0]);
  };
  auto sol = detail::integrate_mesh(rhs, {0.0, 1.0, 0.0, 1.0}, T_eff, opts.mesh,
                                    opts.rel_tol, opts.abs_tol, stop);
  if (sol.stopped)
    throw HorizonError("riccati solution blew up before the requested horizon",
                       sol.stop_time);

  RiccatiSolution out;
  out.t = sol.t;
  out.horizon = T_eff;
  out.flow_horizon = flow.T_D;
  const std::size_t n = sol.y.size();
  out.y1.resize(n); out.y2.resize(n); out.y3.resize(n); out.amp.resize(n);
  out.dy1.resize(n); out.dy2.resize(n); out.dy3.resize(n); out.damp.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.y1[i] = sol.y[i][0];
    out.y2[i] = sol.y[i][1];
    out.y3[i] = sol.y[i][2];
    out.amp[i] = sol.y[i][3];
    out.dy1[i] = sol.dy[i][0];
    out.dy2[i] = sol.dy[i][1];
    out.dy3[i] = sol.dy[i][2];
    out.damp[i] = sol.dy[i][3];
  }
  return out;
}

double linear_reduction_check(const OscillatorSpec& osc,
                              const RiccatiSolution& sol) {
  // (ln k1)' by central difference; k1 is a black box here.
  auto logk1_dt = [&osc](double t) {
    const double h = 1e-6 * (1.0 + std::abs(t));
    const double tm = std::max(t - h, 0.0);
    return (std::log(osc.kappa1(t + h)) - std::log(osc.kappa1(tm))) / (t + h - tm);
  };
  detail::Rhs rhs = [&](const detail::State& y, detail::State& dydt, double t) {
    dydt[0] = y[1];
    dydt[1] = logk1_dt(t) * y[1] - 4.0 * osc.kappa1(t) * osc.kappa2(t) * y[0];
  };
  auto v = detail::integrate_mesh(rhs, {1.0, 0.0}, sol.horizon,
                                  int(sol.t.size()) - 1, 1e-10, 1e-13);
  double worst = 0.0;
  for (std::size_t i = 0; i < sol.t.size(); ++i) {
    const double vi = v.y[i][0], vpi = v.y[i][1];
    if (!(vi > 0.0) && sol.y2[i] > 0.0)
      throw ConsistencyError("linear reduction crossed zero inside the horizon");
    worst = std::max(worst,
                     std::abs(sol.y1[i] - vpi / (4.0 * osc.kappa1(sol.t[i]) * vi)));
  }
  return worst;
}

bool gronwall_bounds_check(const RiccatiSolution& sol, double K0, double K) {
  const double slack = 1e-12;
  for (std::size_t i = 0; i < sol.t.size(); ++i) {
    const double b = 4.0 * K0 * K * sol.t[i];
    if (sol.y2[i] < std::exp(-b) * (1.0 - slack) - slack) return false;
    if (sol.y2[i] > std::exp(b) * (1.0 + slack) + slack) return false;
    if (sol.y3[i] > slack) return false;
  }
  return true;
}

RiccatiPoint riccati_closed_form(Preset preset,
                                 const std::map<std::string, double>& params,
                                 double t) {
  switch (preset) {
    case Preset::free:
      return {0.0, 1.0, -t, 1.0};
    case Preset::harmonic: {
      const double y2 = 1.0 / std::cos(t);
      return {-std::tan(t) / 2, y2, -std::tan(t) / 2, std::sqrt(y2)};
    }
    case Preset::caldirola_kanai: {
      const double a = params.at("a"), s = params.at("sigma");
      if (!(a > s))
        throw DomainError("ck closed form listed for the overdamped case a > sigma");
      const double lam = std::sqrt(a * a - s * s);
      const double ch = std::cosh(lam * t), sh = std::sinh(lam * t);
      const double y1 =
          std::exp(2 * a * t) / 2 * (lam - a * a / lam) * sh / (ch + a / lam * sh);
      const double y2 = lam * std::exp(a * t) / (lam * ch + a * sh);
      const double y3 = -sh / (2 * a * sh + 2 * lam * ch);
      return {y1, y2, y3, std::sqrt(y2)};
    }
    default:
      throw DomainError("no closed form listed for this preset");
  }
}

double riccati_residual(const RiccatiSolution& sol, const OscillatorSpec& osc) {
  const auto d1 = detail::central_diff(sol.t, sol.y1);
  const auto d2 = detail::central_diff(sol.t, sol.y2);
  const auto d3 = detail::central_diff(sol.t, sol.y3);
  double worst = 0.0;
  for (std::size_t i = 2; i + 2 < sol.t.size(); ++i) {
    const double k1 = osc.kappa1(sol.t[i]), k2 = osc.kappa2(sol.t[i]);
    const double r1 = d1[i] + 4.0 * k1 * sol.y1[i] * sol.y1[i] + k2;
    const double r2 = d2[i] + 4.0 * k1 * sol.y1[i] * sol.y2[i];
    const double r3 = d3[i] + k1 * sol.y2[i] * sol.y2[i];
    // scale by the local solution size so the cusp does not dominate
    const double s = 1.0 + std::abs(sol.y1[i]) + sol.y2[i];
    worst = std::max(worst, (std::abs(r1) + std::abs(r2) + std::abs(r3)) / s);
  }
  return worst;
}

}  // namespace wavepax
