#pragma once

// Internal: dense-output adaptive integration and mesh interpolation.

#include <boost/numeric/odeint.hpp>
#include <functional>
#include <vector>

#include "wavepax/types.hpp"

namespace wavepax::detail {

using State = std::vector<double>;
using Rhs = std::function<void(const State&, State&, double)>;

struct MeshSolution {
  std::vector<double> t;               // uniform mesh, t[0]=0
  std::vector<State> y;                // states at mesh points
  std::vector<State> dy;               // RHS at mesh points
  bool stopped = false;                // stop predicate fired
  double stop_time = 0.0;              // last completed step time when stopped
};

// Integrates y' = f(t,y) on [0,T] with a dopri5 dense-output stepper and
// samples the solution on a uniform mesh of `mesh`+1 points. `stop` is
// evaluated at each accepted step end; when it returns true the integration
// halts and the mesh is truncated to the points already filled.
inline MeshSolution integrate_mesh(const Rhs& f, const State& y0, double T,
                                   int mesh, double rel_tol, double abs_tol,
                                   const std::function<bool(double, const State&)>& stop = {}) {
  namespace odeint = boost::numeric::odeint;
  MeshSolution out;
  out.t.resize(mesh + 1);
  for (int i = 0; i <= mesh; ++i) out.t[i] = T * double(i) / double(mesh);
  out.y.reserve(mesh + 1);
  out.dy.reserve(mesh + 1);

  // the step cap keeps the dense-output interpolant at the accuracy of the
  // steps themselves; without it smooth problems take strides so large that
  // interpolated mesh values degrade to ~1e-8
  auto stepper = odeint::make_dense_output(abs_tol, rel_tol, T / 256.0,
                                           odeint::runge_kutta_dopri5<State>());
  stepper.initialize(y0, 0.0, T / 1024.0);

  auto push = [&](double t) {
    State s(y0.size()), d(y0.size());
    stepper.calc_state(t, s);
    f(s, d, t);
    out.y.push_back(s);
    out.dy.push_back(d);
  };
  {
    // no interpolation data exists before the first step
    State d(y0.size());
    f(y0, d, 0.0);
    out.y.push_back(y0);
    out.dy.push_back(d);
  }

  std::size_t next = 1;
  while (stepper.current_time() < T && next < out.t.size()) {
    try {
      stepper.do_step(f);
    } catch (const std::exception&) {
      // controller gave up (step-size underflow near a singularity)
      out.stopped = true;
      out.stop_time = next > 0 ? out.t[next - 1] : 0.0;
      out.t.resize(next);
      return out;
    }
    const double t1 = stepper.current_time();
    while (next < out.t.size() && out.t[next] <= t1) {
      push(out.t[next]);
      ++next;
    }
    if (stop && stop(t1, stepper.current_state())) {
      out.stopped = true;
      out.stop_time = out.t[next - 1];
      out.t.resize(next);
      return out;
    }
  }
  // last mesh point can be missed by floating-point comparison
  while (next < out.t.size()) {
    push(out.t[next]);
    ++next;
  }
  return out;
}

// Cubic Hermite interpolation on a uniform mesh with stored derivatives.
inline double hermite_interp(const std::vector<double>& t,
                             const std::vector<double>& v,
                             const std::vector<double>& dv, double tq) {
  const std::size_t n = t.size();
  if (n == 1) return v[0];
  const double h = t[1] - t[0];
  auto i = static_cast<std::size_t>((tq - t[0]) / h);
  if (i >= n - 1) i = n - 2;
  const double s = (tq - t[i]) / h;
  const double s2 = s * s, s3 = s2 * s;
  return (2 * s3 - 3 * s2 + 1) * v[i] + (s3 - 2 * s2 + s) * h * dv[i] +
         (-2 * s3 + 3 * s2) * v[i + 1] + (s3 - s2) * h * dv[i + 1];
}

// 4th-order central difference of a uniformly sampled series; one-sided
// 2nd-order at the ends.
inline std::vector<double> central_diff(const std::vector<double>& t,
                                        const std::vector<double>& v) {
  const std::size_t n = t.size();
  std::vector<double> d(n, 0.0);
  if (n < 2) return d;
  const double h = t[1] - t[0];
  for (std::size_t i = 2; i + 2 < n; ++i)
    d[i] = (-v[i + 2] + 8 * v[i + 1] - 8 * v[i - 1] + v[i - 2]) / (12 * h);
  if (n >= 3) {
    d[0] = (-3 * v[0] + 4 * v[1] - v[2]) / (2 * h);
    d[1] = (v[2] - v[0]) / (2 * h);
    d[n - 2] = (v[n - 1] - v[n - 3]) / (2 * h);
    d[n - 1] = (3 * v[n - 1] - 4 * v[n - 2] + v[n - 3]) / (2 * h);
  }
  return d;
}

}  // namespace wavepax::detail
