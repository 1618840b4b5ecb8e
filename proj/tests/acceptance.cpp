// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Tolerances are pinned here, not configurable.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <vector>

#include "wavepax/io.hpp"
#include "wavepax/propagate.hpp"

using namespace wavepax;
using cplx = std::complex<double>;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kE = std::numbers::e;

int failures = 0;

struct Criterion {
  const char* name;
  double budget_s;
  std::function<bool(std::string&)> run;
};

void run_criterion(int id, const Criterion& c) {
  std::string detail;
  bool ok = false;
  const auto start = std::chrono::steady_clock::now();
  try {
    ok = c.run(detail);
  } catch (const std::exception& e) {
    detail = std::string("exception: ") + e.what();
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  if (secs > c.budget_s) {
    ok = false;
    detail += " [over budget]";
  }
  std::printf("[%s] criterion %2d: %-42s (%6.2fs)%s%s\n", ok ? "PASS" : "FAIL",
              id, c.name, secs, detail.empty() ? "" : "  ", detail.c_str());
  if (!ok) ++failures;
}

double scaled_err(double got, double want) {
  return std::abs(got - want) / (1.0 + std::abs(want));
}

Field grid_eval(const GridSpec& g,
                const std::function<double(double)>& f) {
  Field u(g.total());
  for (int i = 0; i < g.points_per_dim; ++i) u[i] = f(g.coord(i));
  return u;
}

// ---------------------------------------------------------------- criteria

bool c1_riccati_golden(std::string& detail) {
  // each of the three solves must individually land under one second
  double worst = 0.0, slowest = 0.0;
  auto timed = [&slowest](const std::function<double()>& f) {
    const auto t0 = std::chrono::steady_clock::now();
    const double dev = f();
    slowest = std::max(
        slowest,
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count());
    return dev;
  };
  worst = std::max(worst, timed([] {
    auto sol = solve_riccati(make_oscillator(Preset::free), 2.0);
    double w = 0.0;
    for (std::size_t i = 0; i < sol.t.size(); ++i)
      w = std::max({w, scaled_err(sol.y1[i], 0.0), scaled_err(sol.y2[i], 1.0),
                    scaled_err(sol.y3[i], -sol.t[i])});
    return w;
  }));
  worst = std::max(worst, timed([] {
    auto sol = solve_riccati(make_oscillator(Preset::harmonic), 2.0);
    double w = 0.0;
    for (std::size_t i = 0; i < sol.t.size(); ++i) {
      const double t = sol.t[i];
      w = std::max({w, scaled_err(sol.y1[i], -std::tan(t) / 2),
                    scaled_err(sol.y2[i], 1.0 / std::cos(t)),
                    scaled_err(sol.y3[i], -std::tan(t) / 2)});
    }
    return w;
  }));
  worst = std::max(worst, timed([] {
    const double a = 1.5, s = 1.0, lam = std::sqrt(a * a - s * s);
    auto sol = solve_riccati(
        make_oscillator(Preset::caldirola_kanai, {{"a", a}, {"sigma", s}}), 2.0);
    double w = 0.0;
    for (std::size_t i = 0; i < sol.t.size(); ++i) {
      const double t = sol.t[i];
      const double ch = std::cosh(lam * t), sh = std::sinh(lam * t);
      const double y1e =
          std::exp(2 * a * t) / 2 * (lam - a * a / lam) * sh / (ch + a / lam * sh);
      const double y2e = lam * std::exp(a * t) / (lam * ch + a * sh);
      const double y3e = -sh / (2 * a * sh + 2 * lam * ch);
      w = std::max({w, scaled_err(sol.y1[i], y1e), scaled_err(sol.y2[i], y2e),
                    scaled_err(sol.y3[i], y3e)});
    }
    return w;
  }));
  char buf[120];
  std::snprintf(buf, sizeof buf, "max scaled dev %.2e, slowest %.2fs", worst,
                slowest);
  detail = buf;
  return worst <= 1e-7 && slowest < 1.0;
}

bool c2_amplitude_identity(std::string& detail) {
  std::vector<OscillatorSpec> oscs;
  oscs.push_back(make_oscillator(Preset::free));
  oscs.push_back(make_oscillator(Preset::harmonic));
  oscs.push_back(
      make_oscillator(Preset::caldirola_kanai, {{"a", 1.5}, {"sigma", 1.0}}));
  oscs.push_back(make_oscillator(
      Preset::power_law, {{"a", 0.5}, {"b", 1.0}, {"sigma", 0.8}, {"d_offset", 1.0}}));
  double worst = 0.0;
  for (const auto& osc : oscs) {
    auto sol = solve_riccati(osc, 1.4);
    for (std::size_t i = 0; i < sol.t.size(); ++i)
      worst = std::max(worst, std::abs(sol.y2[i] - sol.amp[i] * sol.amp[i]) /
                                  (1.0 + std::abs(sol.y2[i])));
  }
  char buf[80];
  std::snprintf(buf, sizeof buf, "max |y2 - a^2| %.2e", worst);
  detail = buf;
  return worst <= 1e-8;
}

bool c3_orthonormality(std::string& detail) {
  auto rule = gauss_hermite(64);
  std::vector<std::vector<double>> hv(rule.nodes.size());
  for (std::size_t i = 0; i < rule.nodes.size(); ++i)
    hv[i] = hermite_fn_all(20, rule.nodes[i]);
  double worst = 0.0;
  for (int n = 0; n <= 20; ++n)
    for (int m = 0; m <= 20; ++m) {
      double s = 0.0;
      for (std::size_t i = 0; i < rule.nodes.size(); ++i)
        s += std::exp(rule.log_what[i]) * hv[i][n] * hv[i][m];
      worst = std::max(worst, std::abs(s - (n == m ? 1.0 : 0.0)));
    }
  char buf[80];
  std::snprintf(buf, sizeof buf, "max dev %.2e", worst);
  detail = buf;
  return worst < 1e-10;
}

bool c4_approx_bound(std::string& detail) {
  std::mt19937 rng(20260809);
  std::uniform_int_distribution<int> uN(3, 5);
  std::uniform_real_distribution<double> ue(0.005, 0.05), ua(-1.0, 1.0);
  double worst_ratio = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const int N = uN(rng);
    const double eps0 = ue(rng);
    std::vector<double> alphas(N + 1);
    for (auto& v : alphas) v = ua(rng);
    auto f = [&alphas, N](const std::vector<double>& x) {
      const auto h = hermite_fn_all(N, x[0]);
      double s = 0.0;
      for (int k = 0; k <= N; ++k) s += alphas[k] * h[k];
      return s * std::exp(-0.5 * x[0] * x[0]);
    };
    auto mix = decompose(f, N, eps0, 1);
    // ||f|| on a dense grid
    double nrm = 0.0;
    const int pts = 1 << 13;
    const double lo = -(N * eps0 + 8.0), hi = N * eps0 + 8.0;
    const double h = (hi - lo) / (pts - 1);
    for (int i = 0; i < pts; ++i) {
      const double v = f({lo + i * h});
      nrm += v * v * ((i == 0 || i == pts - 1) ? 0.5 : 1.0);
    }
    nrm = std::sqrt(nrm * h);
    const double bound = std::exp(double(N)) * N * eps0 * nrm + 1e-8;
    if (mix.eta > bound) return false;
    worst_ratio = std::max(worst_ratio, mix.eta / bound);
  }
  char buf[80];
  std::snprintf(buf, sizeof buf, "worst residual/bound %.3f", worst_ratio);
  detail = buf;
  return true;
}

bool c5_step_extension(std::string& detail) {
  double worst_ratio = 0.0;
  for (double M : {2.0, 4.0, 6.0}) {
    for (double dx : {1e-2, 1e-3}) {
      auto se = step_extension(M, dx, {0.0}, 1);
      double sup = 0.0;
      const int samples = 10000;
      for (int i = 0; i <= samples; ++i) {
        const double x = -11 * M + 22 * M * double(i) / samples;
        sup = std::max(sup, std::abs(se.phi({x}) - se.mixture.eval({x})));
      }
      const double bound = 2 * std::exp(-M * M / 4) + 2 * dx * M;
      if (sup > bound) return false;
      worst_ratio = std::max(worst_ratio, sup / bound);
    }
  }
  char buf[80];
  std::snprintf(buf, sizeof buf, "worst sup/bound %.3f", worst_ratio);
  detail = buf;
  return true;
}

bool c6_twoterm(std::string& detail) {
  GaussianMixture mix;
  mix.dim = 1;
  mix.N = 2;
  mix.eps0 = 0.1;
  mix.centers = {{0.0}, {0.1}, {0.2}};
  mix.coeffs = {0.5, 0.3, 0.2};
  GridSpec g{1, 24.0, 4096};
  char buf[160];
  std::string parts;
  std::vector<OscillatorSpec> oscs;
  oscs.push_back(make_oscillator(Preset::harmonic));
  oscs.push_back(
      make_oscillator(Preset::caldirola_kanai, {{"a", 1.5}, {"sigma", 1.0}}));
  for (const auto& osc : oscs) {
    auto ric = solve_riccati(osc, 1.0);
    Field u0(g.total());
    for (int i = 0; i < g.points_per_dim; ++i) u0[i] = mix.eval({g.coord(i)});
    auto sol = split_step_solve(osc, u0, g, 1.0, 1024, 32);
    auto cmp = compare_parametrix(sol, mix, ric, 1e-4);
    std::snprintf(buf, sizeof buf, " err %.2e<=bound %.2e", cmp.error, cmp.bound + 1e-4);
    parts += buf;
    if (!cmp.ok) {
      detail = parts;
      return false;
    }
  }
  detail = parts;
  return true;
}

bool c7_splitstep_oracle(std::string& detail) {
  // free-particle closed form at T = 1
  GridSpec g{1, 48.0, 4096};
  auto fr = make_oscillator(Preset::free);
  auto sol = split_step_solve(fr, grid_eval(g, [](double x) {
                                return std::exp(-x * x);
                              }),
                              g, 1.0, 1024, 4);
  double err = 0.0;
  for (int i = 0; i < g.points_per_dim; ++i) {
    const double x = g.coord(i);
    const cplx w(1.0, 4.0);
    err += std::norm(sol.fields.back()[i] - std::pow(w, -0.5) * std::exp(-x * x / w));
  }
  err = std::sqrt(err * g.spacing());
  if (err > 1e-7) return false;
  if (sol.mass_drift > 1e-6) return false;

  // second order in dt, measured against the harmonic closed form (the free
  // case splits exactly, so its dt error is zero)
  GridSpec gh{1, 16.0, 2048};
  auto hm = make_oscillator(Preset::harmonic);
  auto ric = solve_riccati(hm, 1.0);
  GaussianMixture one;
  one.dim = 1;
  one.N = 1;
  one.eps0 = 0.1;
  one.centers = {{0.0}};
  one.coeffs = {1.0};
  const Field ue = parametrix(one, ric, 0.8, gh).values;
  std::vector<double> errs;
  for (int steps : {256, 512, 1024}) {
    auto s = split_step_solve(hm, grid_eval(gh, [](double x) {
                                return std::exp(-x * x);
                              }),
                              gh, 0.8, steps, 2);
    errs.push_back(grid_l2_diff(gh, s.fields.back(), ue));
  }
  const double r1 = errs[0] / errs[1], r2 = errs[1] / errs[2];
  char buf[120];
  std::snprintf(buf, sizeof buf, "free err %.2e, drift %.2e, ratios %.2f %.2f",
                err, sol.mass_drift, r1, r2);
  detail = buf;
  return std::abs(r1 - 4.0) <= 0.3 && std::abs(r2 - 4.0) <= 0.3;
}

bool c8_constants(std::string& detail) {
  // erfc lower bound on 1e4 random samples
  std::mt19937 rng(99);
  std::uniform_real_distribution<double> ux(0.0, 6.0), ub(1.0 + 1e-9, 10.0);
  for (int i = 0; i < 10000; ++i) {
    const double x = ux(rng), beta = ub(rng);
    if (erfc_lb(x, beta) > std::erfc(x) * (1 + 1e-13) + 1e-300) return false;
  }

  DomainSpec dom{2.0, 1.0, 2.0, 1};
  std::vector<std::pair<const char*, OscillatorSpec>> presets;
  presets.emplace_back("free", make_oscillator(Preset::free));
  presets.emplace_back("harmonic", make_oscillator(Preset::harmonic));
  presets.emplace_back("ck", make_oscillator(Preset::caldirola_kanai,
                                             {{"a", 1.5}, {"sigma", 1.0}}));
  presets.emplace_back(
      "power_law", make_oscillator(Preset::power_law, {{"a", 0.5},
                                                       {"b", 1.0},
                                                       {"sigma", 0.8},
                                                       {"d_offset", 1.0}}));
  std::string parts;
  for (auto& [name, osc] : presets) {
    auto ric = solve_riccati(osc, 1.0);
    const double T = std::min(1.0, ric.horizon);
    auto req0 = check_req(3, 0.0, ric, dom, T);
    if (!(req0.eps_max > 0.0)) return false;
    auto cert = certify(ric, dom, T, 3, req0.eps_max / 2, 0.0, 10.0);
    if (!(cert.C_T > 0.0) || !std::isfinite(cert.C_T)) return false;
    if (!cert.req.ok) return false;
    for (double v : cert.eps_samples)
      if (!(v > 0.0)) return false;
    for (double v : cert.delta_samples)
      if (!(v > 0.0)) return false;
    // Richardson ratio of the certificate integral
    const double i1 = 1.0 / observability_constant(ric, dom, T, 1);
    const double i2 = 1.0 / observability_constant(ric, dom, T, 2);
    const double i4 = 1.0 / observability_constant(ric, dom, T, 4);
    const double ratio = (i4 - i2) / (i2 - i1);
    if (!(ratio > 3.0 && ratio < 5.0)) return false;
    char buf[80];
    std::snprintf(buf, sizeof buf, " %s C_T=%.3g r=%.2f", name, cert.C_T, ratio);
    parts += buf;
  }
  detail = parts;
  return true;
}

bool c9_observability(std::string& detail) {
  char buf[200];
  auto fr = make_oscillator(Preset::free);
  auto ric = solve_riccati(fr, 1.0);

  // (a) class-A mixture passing (req): free, d = 1, R0 = 2, T = 1
  DomainSpec dom{4.0, 2.0, 2.0, 1};
  auto req = check_req(3, 0.0, ric, dom, 1.0);
  if (!(req.eps_max > 0.0)) return false;
  const double eps = req.eps_max / 2;
  if (!check_req(3, eps, ric, dom, 1.0).ok) return false;

  GaussianMixture mix;
  mix.dim = 1;
  mix.N = 3;
  mix.eps0 = eps;
  mix.coeffs = {0.4, 0.3, 0.2, 0.1};
  for (int n = 0; n < 4; ++n) mix.centers.push_back({n * eps});

  GridSpec g{1, 48.0, 4096};
  Field u0(g.total());
  for (int i = 0; i < g.points_per_dim; ++i) u0[i] = mix.eval({g.coord(i)});
  const double u0_norm = grid_l2(g, u0);
  auto sol = split_step_solve(fr, u0, g, 1.0, 1024, 64);
  const double unorm = l2_norm_spacetime(sol, dom);
  const double CT = observability_constant(ric, dom, 1.0);
  const bool ok_a = u0_norm <= CT * unorm;
  std::snprintf(buf, sizeof buf, "(a) %.4g <= %.4g", u0_norm, CT * unorm);
  detail = buf;
  if (!ok_a) return false;

  // (b) step extension placed per (R1), C_T = e/((e-1)T). M = 6 keeps the
  // shoulder kinks at the e^{-9} scale; sharper extensions radiate a real
  // high-frequency fringe past the boundary-mass guard.
  const double M = 6.0, dx = 1e-3;
  const double alphaN = 2.0 * M;
  auto r1probe = check_R1(alphaN, 0.0, 2.0, ric, 1.0);
  const double shift = -(r1probe.rhs_max + 2.0 + M);  // packets at shift-M..shift+M
  auto se = step_extension(M, dx, {shift}, 1);
  const double R1 = se.mixture.max_center();
  if (!check_R1(alphaN, R1, 2.0, ric, 1.0).ok) return false;

  const double eta = mixture_l2_residual(se.mixture, se.phi, 1 << 13);
  GridSpec gb{1, 96.0, 8192};
  Field phi0(gb.total());
  for (int i = 0; i < gb.points_per_dim; ++i) phi0[i] = se.phi({gb.coord(i)});
  const double phinorm = grid_l2(gb, phi0);
  auto solb = split_step_solve(fr, phi0, gb, 1.0, 1024, 64);
  DomainSpec domb{2.0, 1.0, 2.0, 1};
  const double unorm_b = l2_norm_spacetime(solb, domb);
  const double CTb = kE / (kE - 1.0);
  const bool ok_b = phinorm - eta <= CTb * (unorm_b + 1.0 * eta);
  if (!linfty_check(M, dx, 1, phinorm)) return false;
  std::snprintf(buf, sizeof buf,
                "(a) %.4g <= %.4g; (b) %.4g <= %.4g (eta %.2e)", u0_norm,
                CT * unorm, phinorm - eta, CTb * (unorm_b + eta), eta);
  detail = buf;
  return ok_b;
}

bool c10_counterexample(std::string& detail) {
  auto ric = solve_riccati(make_oscillator(Preset::free), 1.0);
  const double t = 0.7, R = 1.0;
  // closed form vs quadrature where the mass is representable
  for (double shift : {0.0, 0.5, 1.0, 2.0, 3.0}) {
    const double closed = counterexample_mass(shift, ric, t, R, 1);
    const int n = 200000;
    const double h = 40.0 / n;
    double quad = 0.0;
    for (int k = 0; k <= n; ++k) {
      const double x = R + k * h;
      quad += std::norm(propagate_packet({shift}, ric, t, {x})) *
              ((k == 0 || k == n) ? 0.5 : 1.0);
    }
    quad *= h;
    if (std::abs(closed - quad) > 1e-6) return false;
  }
  // monotone vanishing along the sweep to shift = 20
  double prev = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= 200; ++i) {
    const double m = counterexample_mass(20.0 * i / 200, ric, t, R, 1);
    if (m >= prev) return false;
    prev = m;
  }
  char buf[80];
  std::snprintf(buf, sizeof buf, "final mass %.2e", prev);
  detail = buf;
  return prev < 1e-30;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {"riccati golden forms", 3.0, c1_riccati_golden},
      {"amplitude identity y2 = a^2", 10.0, c2_amplitude_identity},
      {"hermite orthonormality", 1.0, c3_orthonormality},
      {"gaussian approximation bound", 10.0, c4_approx_bound},
      {"step-extension sup bound", 5.0, c5_step_extension},
      {"parametrix two-term bound", 120.0, c6_twoterm},
      {"split-step oracle quality", 60.0, c7_splitstep_oracle},
      {"certificate constants", 60.0, c8_constants},
      {"observability inequalities", 120.0, c9_observability},
      {"counterexample masses", 30.0, c10_counterexample},
  };
  int id = 1;
  for (const auto& c : criteria) run_criterion(id++, c);
  if (failures) {
    std::printf("%d criterion(s) FAILED\n", failures);
    return 1;
  }
  std::printf("all %zu criteria passed\n", criteria.size());
  return 0;
}
