#include "wavepax/observability.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "wavepax/propagate.hpp"

namespace wavepax {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kE = std::numbers::e;

double spread_from(const RiccatiPoint& y) {
  return 2.0 * y.y2 * y.y2 / (1.0 + 16.0 * y.y3 * y.y3);
}

double eps_from(double A, double R, int dim) {
  const double decaying = std::pow(kPi, 0.25 * (dim - 1)) * std::exp(0.25) *
                          std::pow(2.0, -0.75 * dim) * std::exp(-A * R * R);
  const double cap = std::pow(kPi / 8.0, 0.25 * dim);
  return std::min(decaying, cap);
}

double delta_from(double A, double R0, int dim) {
  return std::exp(0.25) * std::pow(A, 0.25 * (dim - 1)) *
         std::pow(R0, 0.5 * (dim - 1)) * std::pow(2.0, -(0.25 * dim + 1.0)) *
         std::pow(4.0 * kPi, -0.25) * std::exp(-A * R0 * R0);
}

void require_in_horizon(const RiccatiSolution& ric, double T) {
  if (T > ric.horizon * (1.0 + 1e-12))
    throw HorizonError("certificate horizon exceeds the riccati horizon",
                       ric.horizon);
}

}  // namespace

double spread_A(const RiccatiSolution& ric, double t) {
  return spread_from(ric.at(t));
}

double erfc_lb(double x, double beta) {
  if (x < 0.0 || beta <= 1.0)
    throw DomainError("erfc_lb: requires x >= 0 and beta > 1");
  // Chernoff-type single-term bound, sqrt(beta-1)/beta. Writing the factor
  // as sqrt((beta-1)/beta) looks similar but overshoots erfc near x ~ 0.3.
  return std::sqrt(2.0 * kE / kPi) * std::sqrt(beta - 1.0) / beta *
         std::exp(-beta * x * x);
}

double epsilon_lower(const RiccatiSolution& ric, double t, double R, int dim) {
  if (!(R > 0.0)) throw DomainError("epsilon_lower: requires R > 0");
  return eps_from(spread_from(ric.at(t)), R, dim);
}

double delta_lower(const RiccatiSolution& ric, double t, double R0, int dim) {
  if (R0 < 1.0) throw DomainError("delta_lower: requires R0 >= 1");
  return delta_from(spread_from(ric.at(t)), R0, dim);
}

double observability_constant(const RiccatiSolution& ric, const DomainSpec& dom,
                              double T, int stride) {
  dom.validate();
  require_in_horizon(ric, T);
  if (stride < 1) stride = 1;
  const int n = 2048 / stride;
  double integral = 0.0;
  double prev = 0.0;
  for (int i = 0; i <= n; ++i) {
    const double t = T * double(i) / n;
    const double A = spread_from(ric.at(t));
    const double v = eps_from(A, dom.R, dom.dim) * delta_from(A, dom.R0, dom.dim);
    if (i > 0) integral += 0.5 * (prev + v) * (T / n);
    prev = v;
  }
  if (!(integral > 0.0) || !std::isfinite(integral))
    throw CertificateError("observability constant: degenerate certificate integral");
  return std::pow(kPi / 2.0, 0.5 * dom.dim) * std::sqrt(T) / integral;
}

ReqCheck check_req(int N, double eps, const RiccatiSolution& ric,
                   const DomainSpec& dom, double T) {
  if (N <= 2) throw DomainError("check_req: requires N > 2");
  dom.validate();
  require_in_horizon(ric, T);

  ReqCheck out;
  out.margin = std::numeric_limits<double>::infinity();
  out.eps_max = std::numeric_limits<double>::infinity();
  out.raw_ok = true;
  const int n = 2048;
  const double R0 = dom.R0;
  for (int i = 0; i <= n; ++i) {
    const double t = T * double(i) / n;
    const auto y = ric.at(t);
    const double q = 1.0 + 16.0 * y.y3 * y.y3;
    const double ay2 = std::abs(y.y2);
    const double lhs =
        std::sqrt(q) / (2.0 * ay2) *
            std::exp((2.0 * y.y2 * y.y2 * R0 * R0 + 2.0 * ay2 * N * R0) / q) +
        std::sqrt(2.0 * kPi) * (N + 1.0) / ay2 * std::exp(2.0 * N * N / q);
    const double A = spread_from(y);
    const double rhs =
        0.5 * std::sqrt(kPi) / (2.0 * std::sqrt(A)) * std::erfc(std::sqrt(A) * R0);
    out.margin = std::min(out.margin, rhs - eps * N * lhs);
    out.eps_max = std::min(out.eps_max, rhs / (N * lhs));
    if (lhs > rhs) out.raw_ok = false;
  }
  out.ok = out.margin >= 0.0;
  return out;
}

R1Check check_R1(double alphaN, double R1, double diam_omega,
                 const RiccatiSolution& ric, double T) {
  if (alphaN < 0.0) throw DomainError("check_R1: requires alphaN >= 0");
  require_in_horizon(ric, T);

  R1Check out;
  const int n = 2048;
  for (int i = 0; i <= n; ++i) {
    const double t = T * double(i) / n;
    const auto y = ric.at(t);
    const double q = 1.0 + 16.0 * y.y3 * y.y3;
    const double logarg = std::abs(y.y2) / q;
    if (!(logarg > 0.0))
      throw CertificateError("check_R1: nonpositive log argument (y2 vanished)");
    const double num = alphaN * alphaN + 2.0 - 2.0 * std::log(std::sqrt(logarg));
    const double den = 4.0 * y.y2 * y.y2 / q;
    const double rhs = std::sqrt(num / den) + alphaN / y.y2 + diam_omega / 2.0;
    out.rhs_max = std::max(out.rhs_max, rhs);
  }
  out.ok = R1 > out.rhs_max;
  return out;
}

double counterexample_mass(double delta_shift, const RiccatiSolution& ric,
                           double t, double R, int dim) {
  if (delta_shift < 0.0) throw DomainError("counterexample_mass: shift must be >= 0");
  const auto y = ric.at(t);
  if (!(y.y2 > 0.0))
    throw DomainError("counterexample_mass: requires y2(t) > 0");
  const double A = spread_from(y);
  // |gamma|^2 from the amplitude: (a^2/|1-4i y3|)^d
  const double gam2 =
      std::pow(y.amp * y.amp / std::sqrt(1.0 + 16.0 * y.y3 * y.y3), dim);
  return std::pow(kPi / (4.0 * A), 0.5 * dim) * gam2 *
         std::pow(std::erfc(std::sqrt(A) * (delta_shift / y.y2 + R)), dim);
}

bool lower_inner_check(const GaussianMixture& mix, const RiccatiSolution& ric,
                       double t, double R, int grid_points) {
  const int dim = mix.dim;
  const int pts = grid_points > 0 ? grid_points : (dim == 1 ? 2048 : 256);
  const double eps = eps_from(spread_from(ric.at(t)), R, dim);

  double lhs = 0.0;
  for (double c : mix.coeffs) lhs += std::abs(c);
  lhs *= eps;

  const double h = 2.0 * R / (pts - 1);
  double rhs = 0.0;
  std::vector<int> idx(dim, 0);
  std::vector<double> x(dim);
  std::size_t total = 1;
  for (int i = 0; i < dim; ++i) total *= std::size_t(pts);
  for (std::size_t m = 0; m < mix.coeffs.size(); ++m) {
    double acc = 0.0;
    std::fill(idx.begin(), idx.end(), 0);
    for (std::size_t g = 0; g < total; ++g) {
      double w = 1.0;
      for (int i = 0; i < dim; ++i) {
        x[i] = -R + idx[i] * h;
        w *= (idx[i] == 0 || idx[i] == pts - 1) ? 0.5 * h : h;
      }
      acc += w * std::norm(propagate_packet(mix.centers[m], ric, t, x));
      for (int i = dim - 1; i >= 0; --i) {
        if (++idx[i] < pts) break;
        idx[i] = 0;
      }
    }
    rhs += std::abs(mix.coeffs[m]) * std::sqrt(acc);
  }
  return lhs <= rhs + 1e-12;
}

bool linfty_check(double M, double dx, int dim, double phi_l2) {
  if (M < 2.0) throw DomainError("linfty_check: requires M >= 2");
  const double lhs = std::pow(2.0 * std::exp(-M * M / 4.0) + M * dx, dim);
  return lhs < (kE - 1.0) / (4.0 * kE) * phi_l2;
}

ObservabilityCertificate certify(const RiccatiSolution& ric, const DomainSpec& dom,
                                 double T, int N, double eps, double alphaN,
                                 double R1) {
  dom.validate();
  require_in_horizon(ric, T);

  ObservabilityCertificate cert;
  cert.T = T;
  cert.C_T = observability_constant(ric, dom, T);
  cert.req = check_req(N, eps, ric, dom, T);
  cert.r1 = check_R1(alphaN, R1, dom.diam_omega, ric, T);

  const int n = 512;
  cert.A_min = std::numeric_limits<double>::infinity();
  cert.A_max = 0.0;
  for (int i = 0; i <= n; ++i) {
    const double t = T * double(i) / n;
    const double A = spread_from(ric.at(t));
    cert.t_samples.push_back(t);
    cert.A_samples.push_back(A);
    cert.eps_samples.push_back(eps_from(A, dom.R, dom.dim));
    cert.delta_samples.push_back(delta_from(A, dom.R0, dom.dim));
    cert.A_min = std::min(cert.A_min, A);
    cert.A_max = std::max(cert.A_max, A);
  }
  return cert;
}

}  // namespace wavepax
