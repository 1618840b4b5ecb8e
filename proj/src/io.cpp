#include "wavepax/io.hpp"

#include <cstdint>
#include <fstream>
#include <iomanip>

namespace wavepax {

namespace {

std::ofstream open_out(const std::string& path, bool binary = false) {
  std::ofstream f(path, binary ? std::ios::binary : std::ios::out);
  if (!f) throw Error("cannot open output file " + path);
  return f;
}

}  // namespace

std::string config_hash(const json& config) {
  const std::string dump = config.dump();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : dump) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[19];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

void write_flow_csv(const std::string& path, const HamiltonianFlow& flow) {
  auto f = open_out(path);
  f << "t,x,p\n" << std::setprecision(17);
  for (std::size_t i = 0; i < flow.t.size(); ++i)
    f << flow.t[i] << ',' << flow.x[i] << ',' << flow.p[i] << '\n';
}

void write_riccati_csv(const std::string& path, const RiccatiSolution& sol) {
  auto f = open_out(path);
  f << "t,y1,y2,y3,a\n" << std::setprecision(17);
  for (std::size_t i = 0; i < sol.t.size(); ++i)
    f << sol.t[i] << ',' << sol.y1[i] << ',' << sol.y2[i] << ',' << sol.y3[i]
      << ',' << sol.amp[i] << '\n';
}

void write_certificate_csv(const std::string& path,
                           const ObservabilityCertificate& cert) {
  auto f = open_out(path);
  f << "t,A,eps,delta\n" << std::setprecision(17);
  for (std::size_t i = 0; i < cert.t_samples.size(); ++i)
    f << cert.t_samples[i] << ',' << cert.A_samples[i] << ','
      << cert.eps_samples[i] << ',' << cert.delta_samples[i] << '\n';
}

void write_coeffs_csv(const std::string& path, const HermiteCoeffs& d) {
  auto f = open_out(path);
  f << "index,d_n\n" << std::setprecision(17);
  for (std::size_t i = 0; i < d.d.size(); ++i) f << i << ',' << d.d[i] << '\n';
}

json mixture_to_json(const GaussianMixture& mix) {
  return json{{"dim", mix.dim},       {"N", mix.N},
              {"eps0", mix.eps0},     {"centers", mix.centers},
              {"coeffs", mix.coeffs}, {"eta", mix.eta},
              {"tail", mix.tail}};
}

GaussianMixture mixture_from_json(const json& j) {
  GaussianMixture mix;
  mix.dim = j.at("dim").get<int>();
  mix.N = j.at("N").get<int>();
  mix.eps0 = j.at("eps0").get<double>();
  mix.centers = j.at("centers").get<std::vector<std::vector<double>>>();
  mix.coeffs = j.at("coeffs").get<std::vector<double>>();
  mix.eta = j.value("eta", 0.0);
  mix.tail = j.value("tail", 0.0);
  mix.validate();
  return mix;
}

json certificate_to_json(const ObservabilityCertificate& cert) {
  return json{{"T", cert.T},
              {"C_T", cert.C_T},
              {"req", {{"ok", cert.req.ok},
                       {"margin", cert.req.margin},
                       {"eps_max", cert.req.eps_max},
                       {"raw_ok", cert.req.raw_ok}}},
              {"R1", {{"ok", cert.r1.ok}, {"rhs_max", cert.r1.rhs_max}}},
              {"A_min", cert.A_min},
              {"A_max", cert.A_max}};
}

void write_field_dump(const std::string& path, const GridSpec& grid, double t,
                      const Field& u) {
  auto f = open_out(path, true);
  const json header{{"dim", grid.dim},
                    {"L", grid.half_width},
                    {"n", grid.points_per_dim},
                    {"t", t}};
  f << header.dump() << '\n';
  for (const auto& v : u) {
    const double re = v.real(), im = v.imag();
    f.write(reinterpret_cast<const char*>(&re), sizeof re);
    f.write(reinterpret_cast<const char*>(&im), sizeof im);
  }
}

void write_field_csv(const std::string& path, const GridSpec& grid, const Field& u) {
  if (grid.dim != 1) throw DomainError("field CSV slices are 1-d only");
  auto f = open_out(path);
  f << "x,re,im,abs2\n" << std::setprecision(17);
  for (int i = 0; i < grid.points_per_dim; ++i)
    f << grid.coord(i) << ',' << u[i].real() << ',' << u[i].imag() << ','
      << std::norm(u[i]) << '\n';
}

}  // namespace wavepax
