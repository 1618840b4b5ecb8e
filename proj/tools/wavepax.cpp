// wavepax: batch front door for the wavepacket/observability library.
//
//   wavepax <flow|riccati|decompose|propagate|certify|validate|counterexample>
//           --config <path> [--out <dir>] [--seed <u64>]
//
// Exit codes: 0 success, 2 config error, 3 numeric/horizon error.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>

#include "wavepax/fft.hpp"
#include "wavepax/io.hpp"
#include "wavepax/propagate.hpp"

namespace fs = std::filesystem;
using namespace wavepax;

namespace {

struct Cli {
  std::string config_path;
  std::string out_dir = ".";
  std::optional<std::uint64_t> seed;
  json config;
  std::string hash;

  fs::path out(const std::string& name) const { return fs::path(out_dir) / name; }
};

json load_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ParameterError("cannot open config file " + path);
  try {
    return json::parse(f);
  } catch (const json::exception& e) {
    throw ParameterError(std::string("config is not valid JSON: ") + e.what());
  }
}

OscillatorSpec oscillator_from(const json& cfg) {
  if (!cfg.contains("oscillator"))
    throw ParameterError("config: missing 'oscillator'");
  const auto& o = cfg.at("oscillator");
  const auto preset = preset_from_name(o.value("preset", std::string()));
  std::map<std::string, double> params;
  if (o.contains("params"))
    for (auto& [k, v] : o.at("params").items()) params[k] = v.get<double>();
  return make_oscillator(preset, params);
}

double horizon_from(const json& cfg) {
  if (!cfg.contains("T")) throw ParameterError("config: missing 'T'");
  const double T = cfg.at("T").get<double>();
  if (!(T > 0.0)) throw ParameterError("config: T must be positive");
  return T;
}

DomainSpec domain_from(const json& cfg) {
  if (!cfg.contains("domain")) throw ParameterError("config: missing 'domain'");
  const auto& d = cfg.at("domain");
  DomainSpec dom;
  dom.diam_omega = d.value("diam_omega", 2.0);
  dom.R0 = d.value("R0", 1.0);
  dom.R = d.value("R", dom.R0);
  dom.dim = d.value("dim", 1);
  dom.validate();
  return dom;
}

GridSpec grid_from(const json& cfg, int dim) {
  GridSpec g;
  g.dim = dim;
  if (cfg.contains("grid")) {
    const auto& gj = cfg.at("grid");
    g.half_width = gj.value("half_width", 24.0);
    g.points_per_dim = gj.value("points_per_dim", 4096);
  }
  g.validate();
  return g;
}

// initial data: an explicit mixture, a step extension, a Hermite profile
// (decomposed on demand), or a seeded random mixture
struct InitialData {
  GaussianMixture mixture;
  std::function<double(const std::vector<double>&)> f;  // exact profile
};

InitialData initial_data_from(const json& cfg, const Cli& cli) {
  if (!cfg.contains("initial_data"))
    throw ParameterError("config: missing 'initial_data'");
  const auto& idj = cfg.at("initial_data");
  const std::string type = idj.value("type", std::string());
  InitialData id;

  if (type == "mixture") {
    id.mixture.centers = idj.at("centers").get<std::vector<std::vector<double>>>();
    id.mixture.coeffs = idj.at("coeffs").get<std::vector<double>>();
    if (id.mixture.centers.empty())
      throw ParameterError("initial_data: empty mixture");
    id.mixture.dim = int(id.mixture.centers.front().size());
    id.mixture.N = std::max<int>(1, int(id.mixture.centers.size()) - 1);
    id.mixture.eps0 = idj.value("eps0", 0.0);
    id.mixture.eta = idj.value("eta", 0.0);
    id.mixture.validate();
    auto mix = id.mixture;
    id.f = [mix](const std::vector<double>& x) { return mix.eval(x); };
  } else if (type == "step_extension") {
    const double M = idj.at("M").get<double>();
    const double dx = idj.at("dx").get<double>();
    auto shift = idj.value("shift", std::vector<double>{0.0});
    auto se = step_extension(M, dx, shift, int(shift.size()));
    id.mixture = se.mixture;
    id.f = se.phi;
  } else if (type == "hermite_list") {
    const auto alphas = idj.at("alphas").get<std::vector<double>>();
    auto f1 = [alphas](double x) {
      double s = 0.0;
      const auto h = hermite_fn_all(int(alphas.size()) - 1, x);
      for (std::size_t k = 0; k < alphas.size(); ++k) s += alphas[k] * h[k];
      return s * std::exp(-0.5 * x * x);
    };
    id.f = [f1](const std::vector<double>& x) { return f1(x[0]); };
    const int N = std::max<int>(3, int(alphas.size()) - 1);
    id.mixture = decompose(id.f, N, cfg.value("eps0", 0.02), 1);
  } else if (type == "random_mixture") {
    std::uint64_t seed = idj.value("seed", std::uint64_t(0));
    if (cli.seed) seed = *cli.seed;  // flag wins
    const int count = idj.value("count", 3);
    const double spread = idj.value("spread", 0.5);
    const int dim = idj.value("dim", 1);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uc(0.1, 1.0), ua(-spread, spread);
    id.mixture.dim = dim;
    id.mixture.N = std::max(1, count - 1);
    id.mixture.eps0 = spread;
    for (int k = 0; k < count; ++k) {
      std::vector<double> c(dim);
      for (auto& v : c) v = ua(rng);
      id.mixture.centers.push_back(c);
      id.mixture.coeffs.push_back(uc(rng));
    }
    auto mix = id.mixture;
    id.f = [mix](const std::vector<double>& x) { return mix.eval(x); };
  } else {
    throw ParameterError("initial_data: unknown type '" + type + "'");
  }
  return id;
}

Field field_on_grid(const std::function<double(const std::vector<double>&)>& f,
                    const GridSpec& g) {
  Field u(g.total());
  std::vector<int> idx(g.dim, 0);
  std::vector<double> x(g.dim);
  for (std::size_t i = 0; i < u.size(); ++i) {
    for (int a = 0; a < g.dim; ++a) x[a] = g.coord(idx[a]);
    u[i] = f(x);
    for (int a = g.dim - 1; a >= 0; --a) {
      if (++idx[a] < g.points_per_dim) break;
      idx[a] = 0;
    }
  }
  return u;
}

void write_report(const Cli& cli, const std::string& name, json body) {
  body["config_hash"] = cli.hash;
  std::ofstream f(cli.out(name));
  if (!f) throw Error("cannot open output " + cli.out(name).string());
  f << body.dump(2) << '\n';
}

json horizon_json(const Horizon& h) {
  if (h.is_finite()) return h.time();
  return "inf";
}

int run_flow(const Cli& cli) {
  auto osc = oscillator_from(cli.config);
  const double T = horizon_from(cli.config);
  auto flow = hamiltonian_flow(osc, T);
  write_flow_csv(cli.out("flow.csv").string(), flow);
  write_report(cli, "flow_report.json",
               {{"T", T}, {"T_D", horizon_json(flow.T_D)}});
  std::cout << "flow: T_D = "
            << (flow.T_D.is_finite() ? std::to_string(flow.T_D.time()) : "inf")
            << "\n";
  return 0;
}

int run_riccati(const Cli& cli) {
  auto osc = oscillator_from(cli.config);
  const double T = horizon_from(cli.config);
  auto sol = solve_riccati(osc, T);
  write_riccati_csv(cli.out("riccati.csv").string(), sol);
  write_report(cli, "riccati_report.json",
               {{"T", T},
                {"horizon", sol.horizon},
                {"T_D", horizon_json(sol.flow_horizon)}});
  std::cout << "riccati: horizon = " << sol.horizon << "\n";
  return 0;
}

int run_decompose(const Cli& cli) {
  auto id = initial_data_from(cli.config, cli);
  const double residual = mixture_l2_residual(id.mixture, id.f);
  {
    std::ofstream f(cli.out("mixture.json"));
    f << mixture_to_json(id.mixture).dump(2) << '\n';
  }
  if (cli.config.at("initial_data").value("type", std::string()) == "hermite_list") {
    const auto d = hermite_coeffs(id.f, id.mixture.N, 1);
    write_coeffs_csv(cli.out("coeffs.csv").string(), d);
  }
  write_report(cli, "decompose_report.json",
               {{"packets", id.mixture.coeffs.size()},
                {"eta", id.mixture.eta},
                {"tail", id.mixture.tail},
                {"measured_residual", residual},
                {"class_A", id.mixture.all_positive()}});
  std::cout << "decompose: " << id.mixture.coeffs.size()
            << " packets, residual " << residual << "\n";
  return 0;
}

int run_propagate(const Cli& cli) {
  auto osc = oscillator_from(cli.config);
  const double T = horizon_from(cli.config);
  auto id = initial_data_from(cli.config, cli);
  auto ric = solve_riccati(osc, T);
  auto grid = grid_from(cli.config, id.mixture.dim);
  auto times = cli.config.value("times", std::vector<double>{T});
  json dumps = json::array();
  for (double t : times) {
    auto field = parametrix(id.mixture, ric, t, grid);
    char name[64];
    std::snprintf(name, sizeof name, "field_t%.6f.bin", t);
    write_field_dump(cli.out(name).string(), grid, t, field.values);
    dumps.push_back(name);
    if (grid.dim == 1) {
      std::snprintf(name, sizeof name, "field_t%.6f.csv", t);
      write_field_csv(cli.out(name).string(), grid, field.values);
    }
  }
  write_report(cli, "propagate_report.json",
               {{"times", times}, {"dumps", dumps}, {"horizon", ric.horizon}});
  std::cout << "propagate: " << times.size() << " snapshots\n";
  return 0;
}

int run_certify(const Cli& cli) {
  auto osc = oscillator_from(cli.config);
  const double T = horizon_from(cli.config);
  auto dom = domain_from(cli.config);
  const auto cj = cli.config.value("certify", json::object());
  const int N = cj.value("N", 3);
  const double eps = cj.value("eps", 0.0);
  const double alphaN = cj.value("alphaN", 0.0);
  const double R1 = cj.value("R1", 2.0 * dom.R0);

  auto ric = solve_riccati(osc, T);
  auto cert = certify(ric, dom, std::min(T, ric.horizon), N, eps, alphaN, R1);
  write_certificate_csv(cli.out("certificate.csv").string(), cert);
  write_report(cli, "certificate.json", certificate_to_json(cert));
  std::cout << "certify: C_T = " << cert.C_T
            << ", req " << (cert.req.ok ? "ok" : "FAIL")
            << ", R1 " << (cert.r1.ok ? "ok" : "FAIL") << "\n";
  return 0;
}

int run_validate(const Cli& cli) {
  auto osc = oscillator_from(cli.config);
  const double T = horizon_from(cli.config);
  auto id = initial_data_from(cli.config, cli);
  auto ric = solve_riccati(osc, T);
  auto grid = grid_from(cli.config, id.mixture.dim);
  const int steps = cli.config.value("steps", int(1024 * std::ceil(T)));
  const int store = cli.config.value("store", 32);

  auto u0 = field_on_grid(id.f, grid);
  auto sol = split_step_solve(osc, u0, grid, std::min(T, ric.horizon), steps, store);
  auto cmp = compare_parametrix(sol, id.mixture, ric);
  write_report(cli, "validate_report.json",
               {{"error", cmp.error},
                {"bound", cmp.bound},
                {"ok", cmp.ok},
                {"mass_drift", sol.mass_drift},
                {"steps", steps}});
  std::cout << "validate: error " << cmp.error << " vs bound " << cmp.bound
            << (cmp.ok ? " (ok)" : " (FAIL)") << "\n";
  return cmp.ok ? 0 : 3;
}

int run_counterexample(const Cli& cli) {
  auto osc = oscillator_from(cli.config);
  const double T = horizon_from(cli.config);
  auto ric = solve_riccati(osc, T);
  const auto cj = cli.config.value("counterexample", json::object());
  const double t = cj.value("t", std::min(0.7, ric.horizon));
  const double R = cj.value("R", 1.0);
  const double shift_max = cj.value("shift_max", 20.0);
  const int steps = cj.value("shift_steps", 40);
  const int dim = cj.value("dim", 1);

  std::ofstream csv(cli.out("counterexample.csv"));
  csv << "shift,mass_closed_form,mass_quadrature\n" << std::setprecision(17);
  bool monotone = true;
  double prev = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= steps; ++i) {
    const double shift = shift_max * double(i) / steps;
    const double closed = counterexample_mass(shift, ric, t, R, dim);
    // quadrature cross-check of the same mass (1-d only; cheap)
    double quad = closed;
    if (dim == 1) {
      const int n = 20000;
      const double h = 40.0 / n;
      quad = 0.0;
      for (int k = 0; k <= n; ++k) {
        const double x = R + k * h;
        quad += std::norm(propagate_packet({shift}, ric, t, {x})) *
                ((k == 0 || k == n) ? 0.5 : 1.0);
      }
      quad *= h;
    }
    csv << shift << ',' << closed << ',' << quad << '\n';
    if (closed > prev) monotone = false;
    prev = closed;
  }
  write_report(cli, "counterexample_report.json",
               {{"t", t},
                {"R", R},
                {"monotone_decreasing", monotone},
                {"final_mass", prev}});
  std::cout << "counterexample: final mass " << prev
            << (monotone ? " (monotone)" : " (NOT monotone)") << "\n";
  return monotone ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gaussian wavepacket parametrix and observability certificates"};
  app.require_subcommand(1);

  Cli cli;
  std::uint64_t seed_value = 0;
  std::vector<CLI::App*> subs;
  for (const char* name : {"flow", "riccati", "decompose", "propagate", "certify",
                           "validate", "counterexample"}) {
    auto* sub = app.add_subcommand(name);
    sub->add_option("--config", cli.config_path, "config JSON path")->required();
    sub->add_option("--out", cli.out_dir, "output directory");
    sub->add_option("--seed", seed_value, "seed for random test mixtures");
    subs.push_back(sub);
  }

  CLI11_PARSE(app, argc, argv);

  try {
    cli.config = load_config(cli.config_path);
    for (auto* sub : subs)
      if (sub->parsed() && sub->count("--seed")) cli.seed = seed_value;
    // flags win over config-file fields
    if (!cli.seed && cli.config.contains("seed"))
      cli.seed = cli.config.at("seed").get<std::uint64_t>();
    cli.hash = config_hash(cli.config);
    fs::create_directories(cli.out_dir);

    const std::string sub = app.get_subcommands().front()->get_name();
    if (sub == "flow") return run_flow(cli);
    if (sub == "riccati") return run_riccati(cli);
    if (sub == "decompose") return run_decompose(cli);
    if (sub == "propagate") return run_propagate(cli);
    if (sub == "certify") return run_certify(cli);
    if (sub == "validate") return run_validate(cli);
    if (sub == "counterexample") return run_counterexample(cli);
    std::cerr << "unknown subcommand\n";
    return 2;
  } catch (const ParameterError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const json::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
