#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "wavepax/observability.hpp"
#include "wavepax/propagate.hpp"
#include "wavepax/reference.hpp"

namespace py = pybind11;
using namespace wavepax;

namespace {

OscillatorSpec make_osc_py(const std::string& preset,
                           const std::map<std::string, double>& params) {
  return make_oscillator(preset_from_name(preset), params);
}

py::array_t<std::complex<double>> field_to_numpy(const GridSpec& g, const Field& u) {
  if (g.dim == 1)
    return py::array_t<std::complex<double>>({std::size_t(g.points_per_dim)},
                                             u.data());
  if (g.dim == 2)
    return py::array_t<std::complex<double>>(
        {std::size_t(g.points_per_dim), std::size_t(g.points_per_dim)}, u.data());
  return py::array_t<std::complex<double>>(
      {std::size_t(g.points_per_dim), std::size_t(g.points_per_dim),
       std::size_t(g.points_per_dim)},
      u.data());
}

Field numpy_to_field(const GridSpec& g, py::array_t<std::complex<double>> a) {
  auto buf = a.request();
  if (std::size_t(buf.size) != g.total())
    throw DomainError("field size does not match grid");
  const auto* p = static_cast<const std::complex<double>*>(buf.ptr);
  return Field(p, p + buf.size);
}

}  // namespace

PYBIND11_MODULE(_wavepax, m) {
  m.doc() = "Gaussian wavepacket parametrix and observability certificates";

  py::register_exception<HorizonError>(m, "HorizonError");
  py::register_exception<GridError>(m, "GridError");
  py::register_exception<ParameterError>(m, "ParameterError");

  py::class_<OscillatorSpec>(m, "OscillatorSpec")
      .def("kappa1", [](const OscillatorSpec& o, double t) { return o.kappa1(t); })
      .def("kappa2", [](const OscillatorSpec& o, double t) { return o.kappa2(t); });
  m.def("make_oscillator", &make_osc_py, py::arg("preset"),
        py::arg("params") = std::map<std::string, double>{});

  py::class_<Horizon>(m, "Horizon")
      .def_property_readonly("is_finite", &Horizon::is_finite)
      .def_property_readonly("time",
                             [](const Horizon& h) -> py::object {
                               if (!h.is_finite()) return py::none();
                               return py::float_(h.time());
                             })
      .def("__repr__", [](const Horizon& h) {
        return h.is_finite() ? "Horizon(" + std::to_string(h.time()) + ")"
                             : "Horizon(inf)";
      });

  py::class_<HamiltonianFlow>(m, "HamiltonianFlow")
      .def_readonly("t", &HamiltonianFlow::t)
      .def_readonly("x", &HamiltonianFlow::x)
      .def_readonly("p", &HamiltonianFlow::p)
      .def_readonly("T_D", &HamiltonianFlow::T_D)
      .def("x_at", &HamiltonianFlow::x_at)
      .def("p_at", &HamiltonianFlow::p_at);
  m.def("hamiltonian_flow",
        [](const OscillatorSpec& o, double T, double tol) {
          return hamiltonian_flow(o, T, tol);
        },
        py::arg("osc"), py::arg("T"), py::arg("tol") = 1e-9);

  py::class_<RiccatiPoint>(m, "RiccatiPoint")
      .def_readonly("y1", &RiccatiPoint::y1)
      .def_readonly("y2", &RiccatiPoint::y2)
      .def_readonly("y3", &RiccatiPoint::y3)
      .def_readonly("amp", &RiccatiPoint::amp);
  py::class_<RiccatiSolution>(m, "RiccatiSolution")
      .def_readonly("t", &RiccatiSolution::t)
      .def_readonly("y1", &RiccatiSolution::y1)
      .def_readonly("y2", &RiccatiSolution::y2)
      .def_readonly("y3", &RiccatiSolution::y3)
      .def_readonly("amp", &RiccatiSolution::amp)
      .def_readonly("horizon", &RiccatiSolution::horizon)
      .def_readonly("flow_horizon", &RiccatiSolution::flow_horizon)
      .def("at", &RiccatiSolution::at);
  m.def("solve_riccati",
        [](const OscillatorSpec& o, double T, double tol) {
          return solve_riccati(o, T, tol);
        },
        py::arg("osc"), py::arg("T"), py::arg("tol") = 1e-9);
  m.def("linear_reduction_check", &linear_reduction_check);
  m.def("gronwall_bounds_check", &gronwall_bounds_check);
  m.def("riccati_closed_form",
        [](const std::string& preset, const std::map<std::string, double>& params,
           double t) {
          return riccati_closed_form(preset_from_name(preset), params, t);
        },
        py::arg("preset"), py::arg("params") = std::map<std::string, double>{},
        py::arg("t") = 0.0);

  m.def("hermite_fn", &hermite_fn);
  m.def("hermite_fn_all", &hermite_fn_all);
  py::class_<HermiteCoeffs>(m, "HermiteCoeffs")
      .def_readonly("N", &HermiteCoeffs::N)
      .def_readonly("dim", &HermiteCoeffs::dim)
      .def_readonly("d", &HermiteCoeffs::d);
  m.def("hermite_coeffs",
        [](const std::function<double(const std::vector<double>&)>& f, int N,
           int dim, int nodes) { return hermite_coeffs(f, N, dim, nodes); },
        py::arg("f"), py::arg("N"), py::arg("dim") = 1, py::arg("nodes") = 0);
  m.def("b_from_d", &b_from_d);
  m.def("tail_bound", &tail_bound);

  py::class_<GaussianMixture>(m, "GaussianMixture")
      .def(py::init<>())
      .def_readwrite("dim", &GaussianMixture::dim)
      .def_readwrite("N", &GaussianMixture::N)
      .def_readwrite("eps0", &GaussianMixture::eps0)
      .def_readwrite("centers", &GaussianMixture::centers)
      .def_readwrite("coeffs", &GaussianMixture::coeffs)
      .def_readwrite("eta", &GaussianMixture::eta)
      .def_readwrite("tail", &GaussianMixture::tail)
      .def("eval", &GaussianMixture::eval)
      .def("all_positive", &GaussianMixture::all_positive)
      .def("max_center", &GaussianMixture::max_center)
      .def("center_spread", &GaussianMixture::center_spread);
  m.def("gaussian_coeffs", &gaussian_coeffs);
  m.def("decompose",
        [](const std::function<double(const std::vector<double>&)>& f, int N,
           double eps0, int dim) { return decompose(f, N, eps0, dim); },
        py::arg("f"), py::arg("N"), py::arg("eps0"), py::arg("dim") = 1);
  m.def("step_extension",
        [](double M, double dx, const std::vector<double>& shift, int dim) {
          auto se = step_extension(M, dx, shift, dim);
          return py::make_tuple(py::cpp_function(se.phi), se.mixture, se.sup_bound);
        },
        py::arg("M"), py::arg("dx"), py::arg("shift") = std::vector<double>{0.0},
        py::arg("dim") = 1);
  m.def("class_A_check", &class_A_check);
  m.def("mixture_l2_residual", &mixture_l2_residual, py::arg("mix"), py::arg("f"),
        py::arg("grid_points") = 0);

  py::class_<GridSpec>(m, "GridSpec")
      .def(py::init([](int dim, double half_width, int points) {
             GridSpec g{dim, half_width, points};
             g.validate();
             return g;
           }),
           py::arg("dim") = 1, py::arg("half_width") = 24.0,
           py::arg("points_per_dim") = 4096)
      .def_readonly("dim", &GridSpec::dim)
      .def_readonly("half_width", &GridSpec::half_width)
      .def_readonly("points_per_dim", &GridSpec::points_per_dim)
      .def("axis", &GridSpec::axis)
      .def("spacing", &GridSpec::spacing);
  m.def("recommended_half_width", &recommended_half_width);

  m.def("propagate_packet", &propagate_packet);
  m.def("parametrix",
        [](const GaussianMixture& mix, const RiccatiSolution& ric, double t,
           const GridSpec& g) {
          return field_to_numpy(g, parametrix(mix, ric, t, g).values);
        });
  m.def("fio_apply",
        [](py::array_t<std::complex<double>> u0, const GridSpec& g,
           const RiccatiSolution& ric, double t) {
          return field_to_numpy(g, fio_apply(numpy_to_field(g, u0), g, ric, t));
        });
  m.def("pde_residual",
        [](py::array_t<std::complex<double>> um, py::array_t<std::complex<double>> u,
           py::array_t<std::complex<double>> up, double t, double h,
           const OscillatorSpec& osc, const GridSpec& g) {
          return pde_residual(numpy_to_field(g, um), numpy_to_field(g, u),
                              numpy_to_field(g, up), t, h, osc, g);
        });

  py::class_<DomainSpec>(m, "DomainSpec")
      .def(py::init([](double diam, double R0, double R, int dim) {
             DomainSpec d{diam, R0, R, dim};
             d.validate();
             return d;
           }),
           py::arg("diam_omega"), py::arg("R0"), py::arg("R"), py::arg("dim") = 1);

  py::class_<ReferenceSolution>(m, "ReferenceSolution")
      .def_readonly("t_samples", &ReferenceSolution::t_samples)
      .def_readonly("mass_drift", &ReferenceSolution::mass_drift)
      .def("field",
           [](const ReferenceSolution& s, std::size_t i) {
             return field_to_numpy(s.grid, s.fields.at(i));
           })
      .def_property_readonly("n_samples", [](const ReferenceSolution& s) {
        return s.fields.size();
      });
  m.def("split_step_solve",
        [](const OscillatorSpec& osc, py::array_t<std::complex<double>> u0,
           const GridSpec& g, double T, int steps, int store) {
          return split_step_solve(osc, numpy_to_field(g, u0), g, T, steps, store);
        },
        py::arg("osc"), py::arg("u0"), py::arg("grid"), py::arg("T"),
        py::arg("steps"), py::arg("store") = 64);
  m.def("l2_norm_spacetime", &l2_norm_spacetime);
  py::class_<ParametrixComparison>(m, "ParametrixComparison")
      .def_readonly("error", &ParametrixComparison::error)
      .def_readonly("bound", &ParametrixComparison::bound)
      .def_readonly("ok", &ParametrixComparison::ok);
  m.def("compare_parametrix", &compare_parametrix, py::arg("sol"), py::arg("mix"),
        py::arg("ric"), py::arg("slack") = 1e-4);

  m.def("spread_A", &spread_A);
  m.def("erfc_lb", &erfc_lb);
  m.def("epsilon_lower", &epsilon_lower);
  m.def("delta_lower", &delta_lower);
  m.def("observability_constant", &observability_constant, py::arg("ric"),
        py::arg("dom"), py::arg("T"), py::arg("stride") = 1);
  py::class_<ReqCheck>(m, "ReqCheck")
      .def_readonly("ok", &ReqCheck::ok)
      .def_readonly("margin", &ReqCheck::margin)
      .def_readonly("eps_max", &ReqCheck::eps_max)
      .def_readonly("raw_ok", &ReqCheck::raw_ok);
  m.def("check_req", &check_req);
  py::class_<R1Check>(m, "R1Check")
      .def_readonly("ok", &R1Check::ok)
      .def_readonly("rhs_max", &R1Check::rhs_max);
  m.def("check_R1", &check_R1);
  m.def("counterexample_mass", &counterexample_mass);
  m.def("lower_inner_check", &lower_inner_check, py::arg("mix"), py::arg("ric"),
        py::arg("t"), py::arg("R"), py::arg("grid_points") = 0);
  m.def("linfty_check", &linfty_check);
  py::class_<ObservabilityCertificate>(m, "ObservabilityCertificate")
      .def_readonly("T", &ObservabilityCertificate::T)
      .def_readonly("C_T", &ObservabilityCertificate::C_T)
      .def_readonly("req", &ObservabilityCertificate::req)
      .def_readonly("r1", &ObservabilityCertificate::r1)
      .def_readonly("A_min", &ObservabilityCertificate::A_min)
      .def_readonly("A_max", &ObservabilityCertificate::A_max);
  m.def("certify", &certify);
}
