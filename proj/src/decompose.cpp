#include "wavepax/decompose.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace wavepax {

namespace {

constexpr double kPi = std::numbers::pi;

std::size_t box_count(int N, int dim) {
  std::size_t c = 1;
  for (int i = 0; i < dim; ++i) c *= std::size_t(N + 1);
  return c;
}

// L2 distance on a trapezoid grid over [lo_i, hi_i] per axis
double grid_residual(const GaussianMixture& mix,
                     const std::function<double(const std::vector<double>&)>& f,
                     int pts, const std::vector<double>& lo,
                     const std::vector<double>& hi) {
  const int dim = mix.dim;
  std::vector<double> h(dim);
  for (int i = 0; i < dim; ++i) h[i] = (hi[i] - lo[i]) / (pts - 1);

  double sum = 0.0;
  std::vector<int> idx(dim, 0);
  std::vector<double> x(dim);
  const std::size_t total = [&] {
    std::size_t c = 1;
    for (int i = 0; i < dim; ++i) c *= std::size_t(pts);
    return c;
  }();
  for (std::size_t g = 0; g < total; ++g) {
    double w = 1.0;
    for (int i = 0; i < dim; ++i) {
      x[i] = lo[i] + idx[i] * h[i];
      w *= (idx[i] == 0 || idx[i] == pts - 1) ? 0.5 * h[i] : h[i];
    }
    const double r = f(x) - mix.eval(x);
    sum += w * r * r;
    for (int i = dim - 1; i >= 0; --i) {
      if (++idx[i] < pts) break;
      idx[i] = 0;
    }
  }
  return std::sqrt(sum);
}

double grid_norm(int dim, const std::vector<double>& lo, const std::vector<double>& hi,
                 int pts, const std::function<double(const std::vector<double>&)>& f) {
  std::vector<double> h(dim);
  for (int i = 0; i < dim; ++i) h[i] = (hi[i] - lo[i]) / (pts - 1);
  double sum = 0.0;
  std::vector<int> idx(dim, 0);
  std::vector<double> x(dim);
  std::size_t total = 1;
  for (int i = 0; i < dim; ++i) total *= std::size_t(pts);
  for (std::size_t g = 0; g < total; ++g) {
    double w = 1.0;
    for (int i = 0; i < dim; ++i) {
      x[i] = lo[i] + idx[i] * h[i];
      w *= (idx[i] == 0 || idx[i] == pts - 1) ? 0.5 * h[i] : h[i];
    }
    const double v = f(x);
    sum += w * v * v;
    for (int i = dim - 1; i >= 0; --i) {
      if (++idx[i] < pts) break;
      idx[i] = 0;
    }
  }
  return std::sqrt(sum);
}

}  // namespace

double GaussianMixture::eval(const std::vector<double>& x) const {
  double s = 0.0;
  for (std::size_t n = 0; n < coeffs.size(); ++n) {
    double q = 0.0;
    for (int i = 0; i < dim; ++i) {
      const double u = x[i] + centers[n][i];
      q += u * u;
    }
    if (q < 60.0) s += coeffs[n] * std::exp(-q);  // e^{-60} is below any use here
  }
  return s;
}

double GaussianMixture::max_center() const {
  double m = 0.0;
  for (const auto& a : centers)
    for (double v : a) m = std::max(m, std::abs(v));
  return m;
}

double GaussianMixture::center_spread() const {
  double m = 0.0;
  for (std::size_t n = 0; n < centers.size(); ++n)
    for (std::size_t k = n + 1; k < centers.size(); ++k) {
      double q = 0.0;
      for (int i = 0; i < dim; ++i) {
        const double u = centers[n][i] - centers[k][i];
        q += u * u;
      }
      m = std::max(m, std::sqrt(q));
    }
  return m;
}

bool GaussianMixture::all_positive() const {
  for (double c : coeffs)
    if (!(c > 0.0)) return false;
  return !coeffs.empty();
}

void GaussianMixture::validate() const {
  if (centers.size() != coeffs.size())
    throw ParameterError("mixture centers/coeffs length mismatch");
  if (N > 0 && centers.size() > box_count(N, dim))
    throw ParameterError("mixture larger than (N+1)^dim");
  for (const auto& a : centers)
    if (int(a.size()) != dim) throw ParameterError("mixture center has wrong dim");
}

std::vector<double> gaussian_coeffs(const HermiteCoeffs& d, double eps0, int N) {
  if (!(eps0 > 0.0 && eps0 < 1.0)) throw DomainError("eps0 must lie in (0,1)");
  if (N != d.N) throw DomainError("gaussian_coeffs: N mismatch with coefficients");

  // 1-d transform matrix in log form; the sign of every k-term is (-1)^n
  std::vector<double> T((N + 1) * (N + 1), 0.0);
  for (int n = 0; n <= N; ++n)
    for (int k = n; k <= N; ++k) {
      const double lg = -std::lgamma(n + 1.0) - 0.5 * std::log(kPi) -
                        std::lgamma(k - n + 1.0) - k * std::log(2.0 * eps0) +
                        0.5 * (k * std::log(2.0) + std::lgamma(k + 1.0) +
                               0.5 * std::log(kPi));
      T[n * (N + 1) + k] = (n % 2 ? -1.0 : 1.0) * std::exp(lg);
    }

  std::vector<double> c = d.d;
  // mode product along each axis
  const int stride_base = N + 1;
  std::size_t total = c.size();
  for (int axis = 0; axis < d.dim; ++axis) {
    std::size_t inner = 1;
    for (int i = axis + 1; i < d.dim; ++i) inner *= std::size_t(stride_base);
    const std::size_t outer = total / (inner * stride_base);
    std::vector<double> tmp(stride_base);
    for (std::size_t o = 0; o < outer; ++o)
      for (std::size_t in = 0; in < inner; ++in) {
        const std::size_t base = o * stride_base * inner + in;
        for (int n = 0; n <= N; ++n) {
          double s = 0.0;
          for (int k = n; k <= N; ++k)
            s += T[n * (N + 1) + k] * c[base + std::size_t(k) * inner];
          tmp[n] = s;
        }
        for (int n = 0; n <= N; ++n) c[base + std::size_t(n) * inner] = tmp[n];
      }
  }
  return c;
}

GaussianMixture decompose(const std::function<double(const std::vector<double>&)>& f,
                          int N, double eps0, int dim,
                          const DecomposeOptions& opts) {
  if (N <= 2) throw DomainError("decompose: requires N > 2");
  if (!(eps0 > 0.0 && eps0 < 1.0)) throw DomainError("eps0 must lie in (0,1)");

  const int Next = N + opts.tail_orders;
  const auto dext = hermite_coeffs(f, Next, dim, opts.quad_nodes);

  // restrict to the base box and measure the tail on the extension
  HermiteCoeffs d;
  d.N = N;
  d.dim = dim;
  d.d.assign(box_count(N, dim), 0.0);
  double tail_sq = 0.0;
  {
    std::vector<int> idx(dim, 0);
    for (std::size_t c = 0; c < dext.d.size(); ++c) {
      bool inside = true;
      for (int i = 0; i < dim; ++i)
        if (idx[i] > N) inside = false;
      if (inside)
        d.at(idx) = dext.d[c];
      else
        tail_sq += dext.d[c] * dext.d[c];
      for (int i = dim - 1; i >= 0; --i) {
        if (++idx[i] <= Next) break;
        idx[i] = 0;
      }
    }
  }

  GaussianMixture mix;
  mix.dim = dim;
  mix.N = N;
  mix.eps0 = eps0;
  mix.tail = std::sqrt(tail_sq);
  const auto c = gaussian_coeffs(d, eps0, N);
  {
    std::vector<int> idx(dim, 0);
    for (std::size_t k = 0; k < c.size(); ++k) {
      if (c[k] != 0.0) {
        std::vector<double> a(dim);
        for (int i = 0; i < dim; ++i) a[i] = idx[i] * eps0;
        mix.centers.push_back(std::move(a));
        mix.coeffs.push_back(c[k]);
      }
      for (int i = dim - 1; i >= 0; --i) {
        if (++idx[i] <= N) break;
        idx[i] = 0;
      }
    }
  }

  const int pts = opts.grid_points > 0 ? opts.grid_points : (dim == 1 ? 4096 : 512);
  std::vector<double> lo(dim, -(N * eps0 + 8.0)), hi(dim, N * eps0 + 8.0);
  const double residual =
      mix.coeffs.empty() ? 0.0 : grid_residual(mix, f, pts, lo, hi);
  mix.eta = residual;

  // sanity: the theorem bound with the measured norm and tail
  const double fnorm = grid_norm(dim, lo, hi, pts, f);
  const double bound = std::pow(std::exp(double(N)) * N * eps0, dim) * fnorm +
                       mix.tail;
  if (residual > bound * 1.05 + 1e-8)
    throw ConsistencyError("decompose: residual " + std::to_string(residual) +
                           " exceeds the finite-difference bound " +
                           std::to_string(bound));
  return mix;
}

StepExtension step_extension(double M, double dx, const std::vector<double>& shift,
                             int dim) {
  if (M < 2.0) throw DomainError("step_extension: requires M >= 2");
  if (!(dx > 0.0 && dx < 1.0)) throw DomainError("step_extension: dx must lie in (0,1)");
  if (int(shift.size()) != dim) throw DomainError("step_extension: shift has wrong dim");

  // one axis: chi on (-M/2, M/2), erf shoulders normalized to 1 at +-M/2,
  // smooth ramp to zero over [9M, 10M]
  const double gh = 0.5 * (std::erf(1.5 * M) + std::erf(0.5 * M));
  auto g = [M](double x) { return 0.5 * (std::erf(x + M) - std::erf(x - M)); };
  auto ramp = [](double s) {
    // C-infinity transition 1 -> 0 on [0, 1]
    if (s <= 0.0) return 1.0;
    if (s >= 1.0) return 0.0;
    const double a = std::exp(-1.0 / (1.0 - s));
    const double b = std::exp(-1.0 / s);
    return a / (a + b);
  };
  auto phi1 = [=](double x) {
    if (std::abs(x) < 0.5 * M) return 1.0;
    if (x >= 0.5 * M) {
      if (x >= 10.0 * M) return 0.0;
      const double r = (x <= 9.0 * M) ? 1.0 : ramp((x - 9.0 * M) / M);
      return r * g(x) / gh;
    }
    if (x <= -10.0 * M) return 0.0;
    const double r = (x >= -9.0 * M) ? 1.0 : ramp((-x - 9.0 * M) / M);
    return r * g(x) / gh;
  };

  const int per_axis = int(std::floor(2.0 * M / dx)) + 1;
  std::size_t total = 1;
  for (int i = 0; i < dim; ++i) {
    total *= std::size_t(per_axis);
    if (total > 4'000'000)
      throw DomainError("step_extension: mixture too large; raise dx");
  }

  StepExtension out;
  out.sup_bound = 2.0 * std::exp(-M * M / 4.0) + 2.0 * dx * M;
  out.phi = [phi1, shift, dim](const std::vector<double>& x) {
    double v = 1.0;
    for (int i = 0; i < dim; ++i) v *= phi1(x[i] - shift[i]);
    return v;
  };

  out.mixture.dim = dim;
  out.mixture.N = per_axis - 1;
  out.mixture.eps0 = dx;
  out.mixture.tail = 0.0;
  const double coeff_axis = dx / std::sqrt(kPi);
  std::vector<int> idx(dim, 0);
  for (std::size_t n = 0; n < total; ++n) {
    std::vector<double> a(dim);
    double cf = 1.0;
    for (int i = 0; i < dim; ++i) {
      // packet location x_n - M + shift; stored with the +a_n convention
      a[i] = M - idx[i] * dx - shift[i];
      cf *= coeff_axis;
    }
    out.mixture.centers.push_back(std::move(a));
    out.mixture.coeffs.push_back(cf);
    for (int i = dim - 1; i >= 0; --i) {
      if (++idx[i] < per_axis) break;
      idx[i] = 0;
    }
  }
  // certified L2 residual from the sup bound over the support of both terms
  const double support = 20.0 * M + 12.0;
  out.mixture.eta = out.sup_bound * std::sqrt(std::pow(support, dim)) *
                    double(dim);
  return out;
}

bool class_A_check(const GaussianMixture& mix,
                   const std::function<double(const std::vector<double>&)>& f,
                   double eta) {
  if (!mix.all_positive()) return false;
  return mixture_l2_residual(mix, f) <= eta + 1e-12;
}

double mixture_l2_residual(const GaussianMixture& mix,
                           const std::function<double(const std::vector<double>&)>& f,
                           int grid_points) {
  const int pts = grid_points > 0 ? grid_points : (mix.dim == 1 ? 4096 : 512);
  std::vector<double> lo(mix.dim, 0.0), hi(mix.dim, 0.0);
  for (const auto& a : mix.centers)
    for (int i = 0; i < mix.dim; ++i) {
      lo[i] = std::min(lo[i], -a[i]);
      hi[i] = std::max(hi[i], -a[i]);
    }
  for (int i = 0; i < mix.dim; ++i) {
    lo[i] -= 8.0;
    hi[i] += 8.0;
  }
  return grid_residual(mix, f, pts, lo, hi);
}

}  // namespace wavepax
