#include "wavepax/propagate.hpp"

#include <cmath>
#include <numbers>

#include "wavepax/fft.hpp"

namespace wavepax {

namespace {

using cplx = std::complex<double>;

cplx packet_value(const RiccatiPoint& y, int dim, const std::vector<double>& center,
                  const std::vector<double>& x) {
  const cplx w(1.0, -4.0 * y.y3);
  double xsq = 0.0, q = 0.0;
  for (int i = 0; i < dim; ++i) {
    xsq += x[i] * x[i];
    const double u = y.y2 * x[i] + center[i];
    q += u * u;
  }
  const cplx gamma = std::exp(0.5 * dim * (std::log(cplx(y.amp * y.amp)) - std::log(w)));
  return gamma * std::exp(cplx(0.0, y.y1 * xsq) - q / w);
}

}  // namespace

std::complex<double> PropagatedPacket::eval(double t, const std::vector<double>& x) const {
  return propagate_packet(center, *riccati, t, x);
}

std::complex<double> propagate_packet(const std::vector<double>& center,
                                      const RiccatiSolution& ric, double t,
                                      const std::vector<double>& x) {
  return packet_value(ric.at(t), int(center.size()), center, x);
}

std::complex<double> packet_prefactor(const RiccatiSolution& ric, double t, int dim) {
  // principal branch is continuous because Re(1-4i y3) = 1; verify that the
  // phase never approaches the cut along the sample mesh
  for (std::size_t i = 0; i < ric.t.size(); ++i) {
    const cplx w(1.0, -4.0 * ric.y3[i]);
    if (!(std::abs(std::arg(w)) < 0.5 * std::numbers::pi))
      throw ConsistencyError("packet prefactor crossed the branch cut");
  }
  const auto y = ric.at(t);
  const cplx w(1.0, -4.0 * y.y3);
  return std::exp(0.5 * dim * (std::log(cplx(y.amp * y.amp)) - std::log(w)));
}

ParametrixField parametrix(const GaussianMixture& mix, const RiccatiSolution& ric,
                           double t, const GridSpec& grid) {
  grid.validate();
  if (mix.dim != grid.dim) throw DomainError("parametrix: mixture/grid dim mismatch");
  const auto y = ric.at(t);
  const cplx w(1.0, -4.0 * y.y3);
  const cplx gamma = std::exp(0.5 * grid.dim *
                              (std::log(cplx(y.amp * y.amp)) - std::log(w)));

  ParametrixField out;
  out.grid = grid;
  out.t = t;
  out.values.assign(grid.total(), cplx(0.0));

  const int n = grid.points_per_dim;
  std::vector<int> idx(grid.dim, 0);
  std::vector<double> x(grid.dim);
  for (std::size_t f = 0; f < out.values.size(); ++f) {
    double xsq = 0.0;
    for (int a = 0; a < grid.dim; ++a) {
      x[a] = grid.coord(idx[a]);
      xsq += x[a] * x[a];
    }
    cplx s(0.0);
    for (std::size_t m = 0; m < mix.coeffs.size(); ++m) {
      double q = 0.0;
      for (int a = 0; a < grid.dim; ++a) {
        const double u = y.y2 * x[a] + mix.centers[m][a];
        q += u * u;
      }
      s += mix.coeffs[m] * std::exp(-q / w);
    }
    out.values[f] = gamma * std::exp(cplx(0.0, y.y1 * xsq)) * s;
    for (int a = grid.dim - 1; a >= 0; --a) {
      if (++idx[a] < n) break;
      idx[a] = 0;
    }
  }
  return out;
}

Field fio_apply(const Field& u0, const GridSpec& grid, const RiccatiSolution& ric,
                double t) {
  grid.validate();
  if (u0.size() != grid.total()) throw DomainError("fio_apply: field/grid mismatch");
  const double bmass = boundary_mass_fraction(grid, u0);
  if (bmass > 1e-12)
    throw GridError("fio_apply: input carries boundary mass " + std::to_string(bmass), t);

  const auto y = ric.at(t);
  const int n = grid.points_per_dim;
  const double L = grid.half_width;

  // unitary-convention transform of u0: (2pi)^{-d/2} dx^d sum e^{-i x xi} u
  Field uh = u0;
  fft_forward(grid, uh);

  // kinetic phase e^{i y3 |xi|^2}, separable over axes
  std::vector<cplx> kin(n);
  for (int k = 0; k < n; ++k) {
    const double xi = grid.freq(k);
    kin[k] = std::exp(cplx(0.0, y.y3 * xi * xi));
  }
  {
    std::vector<int> idx(grid.dim, 0);
    for (std::size_t f = 0; f < uh.size(); ++f) {
      cplx m(1.0);
      for (int a = 0; a < grid.dim; ++a) m *= kin[idx[a]];
      uh[f] *= m;
      for (int a = grid.dim - 1; a >= 0; --a) {
        if (++idx[a] < n) break;
        idx[a] = 0;
      }
    }
  }

  // Evaluate the band-limited interpolant at z = y2 x, one axis at a time.
  // In the unitary convention the combined normalization is exactly 1/n per
  // axis. E[j][k] = e^{i z_j xi_k} built by phase recurrence over the
  // naturally ordered frequencies.
  const double dxi = std::numbers::pi / L;
  const double xi0 = -0.5 * n * dxi;
  auto axis_apply = [&](Field& data, std::size_t stride, std::size_t count) {
    // gather the wrapped spectrum into natural order, transform, scatter back
    std::vector<cplx> in(n), outv(n);
    for (std::size_t blk = 0; blk < count; ++blk) {
      // block base: iterate all positions with the transformed axis at 0
      const std::size_t base =
          (blk / stride) * stride * std::size_t(n) + (blk % stride);
      for (int k = 0; k < n; ++k) {
        const int wrapped = (k + n / 2) % n;  // natural index k <-> fft bin
        in[k] = data[base + std::size_t(wrapped) * stride];
      }
      for (int j = 0; j < n; ++j) {
        // the DFT sees coordinates relative to the grid origin -L
        const double z = y.y2 * grid.coord(j) + L;
        const cplx rot = std::exp(cplx(0.0, z * dxi));
        cplx ph = std::exp(cplx(0.0, z * xi0));
        cplx acc(0.0);
        for (int k = 0; k < n; ++k) {
          acc += in[k] * ph;
          ph *= rot;
        }
        outv[j] = acc / double(n);
      }
      for (int j = 0; j < n; ++j)
        data[base + std::size_t(j) * stride] = outv[j];
    }
  };

  Field u = std::move(uh);
  for (int a = grid.dim - 1; a >= 0; --a) {
    std::size_t stride = 1;
    for (int i = a + 1; i < grid.dim; ++i) stride *= std::size_t(n);
    axis_apply(u, stride, u.size() / std::size_t(n));
  }

  // amplitude and position phase
  const double ad = std::pow(y.amp, grid.dim);
  std::vector<int> idx(grid.dim, 0);
  for (std::size_t f = 0; f < u.size(); ++f) {
    double xsq = 0.0;
    for (int a = 0; a < grid.dim; ++a) {
      const double xv = grid.coord(idx[a]);
      xsq += xv * xv;
    }
    u[f] *= ad * std::exp(cplx(0.0, y.y1 * xsq));
    for (int a = grid.dim - 1; a >= 0; --a) {
      if (++idx[a] < n) break;
      idx[a] = 0;
    }
  }
  return u;
}

double pde_residual(const Field& u_prev, const Field& u_mid, const Field& u_next,
                    double t, double h, const OscillatorSpec& osc,
                    const GridSpec& grid) {
  const double k1 = osc.kappa1(t), k2 = osc.kappa2(t);
  Field lap = u_mid;
  spectral_laplacian(grid, lap);

  const int n = grid.points_per_dim;
  double num = 0.0, den = 0.0;
  std::vector<int> idx(grid.dim, 0);
  for (std::size_t f = 0; f < u_mid.size(); ++f) {
    double xsq = 0.0;
    for (int a = 0; a < grid.dim; ++a) {
      const double xv = grid.coord(idx[a]);
      xsq += xv * xv;
    }
    const cplx dt = (u_next[f] - u_prev[f]) / (2.0 * h);
    const cplx Lu = -k1 * lap[f] + k2 * xsq * u_mid[f];
    num += std::norm(dt + cplx(0.0, 1.0) * Lu);
    den += std::norm(u_mid[f]);
    for (int a = grid.dim - 1; a >= 0; --a) {
      if (++idx[a] < n) break;
      idx[a] = 0;
    }
  }
  if (den == 0.0) return 0.0;
  return std::sqrt(num / den);
}

}  // namespace wavepax
