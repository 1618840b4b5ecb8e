#include "wavepax/hermite.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace wavepax {

namespace {

constexpr double kPi = std::numbers::pi;

// log(sum_{k<=K} h_k(x)^2) by a scaled recurrence sweep. A plain sweep
// underflows at the extreme quadrature nodes, where h_0 ~ e^{-x^2/2} is
// subnormal long before the high orders recover to O(1).
double log_sum_hsq(double x, int K) {
  double scale = -0.25 * std::log(kPi) - 0.5 * x * x;  // ln of true h_0 / hhat_0
  double hm = 0.0, hk = 1.0;                           // scaled h_{-1}, h_0
  double s = 1.0;                                      // sum of squares, scaled
  for (int n = 0; n < K; ++n) {
    const double hn = x * std::sqrt(2.0 / (n + 1)) * hk -
                      std::sqrt(double(n) / (n + 1)) * hm;
    hm = hk;
    hk = hn;
    s += hk * hk;
    // consecutive values never vanish together, so the pair max is a safe
    // rescale factor even when hk sits at a root
    const double a = std::max(std::abs(hk), std::abs(hm));
    if (s > 1e280 || a > 1e140) {
      hk /= a;
      hm /= a;
      s /= a * a;
      scale += std::log(a);
    }
  }
  return std::log(s) + 2.0 * scale;
}

// h_n and h_{n-1} with a common log scale, for Newton polish of nodes.
void scaled_pair(int n, double x, double& hnm1, double& hn) {
  double hm = 0.0, hk = 1.0;
  for (int k = 0; k < n; ++k) {
    const double hn2 = x * std::sqrt(2.0 / (k + 1)) * hk -
                       std::sqrt(double(k) / (k + 1)) * hm;
    hm = hk;
    hk = hn2;
    const double a = std::abs(hk);
    if (a > 1e140) {
      hk /= a;
      hm /= a;
    }
  }
  hnm1 = hm;
  hn = hk;
}

// Eigenvalues of a symmetric tridiagonal matrix by the implicit QL method
// (classic imtql1). diag is overwritten with the eigenvalues, ascending.
void tridiag_eigenvalues(std::vector<double>& diag, std::vector<double>& sub) {
  const int n = static_cast<int>(diag.size());
  sub.push_back(0.0);
  for (int l = 0; l < n; ++l) {
    for (int iter = 0; iter < 64; ++iter) {
      int m = l;
      for (; m < n - 1; ++m) {
        const double dd = std::abs(diag[m]) + std::abs(diag[m + 1]);
        if (std::abs(sub[m]) <= 1e-16 * dd) break;
      }
      if (m == l) break;
      double g = (diag[l + 1] - diag[l]) / (2.0 * sub[l]);
      double r = std::hypot(g, 1.0);
      g = diag[m] - diag[l] + sub[l] / (g + std::copysign(r, g));
      double s = 1.0, c = 1.0, p = 0.0;
      bool underflow = false;
      for (int i = m - 1; i >= l; --i) {
        double f = s * sub[i];
        const double b = c * sub[i];
        r = std::hypot(f, g);
        sub[i + 1] = r;
        if (r == 0.0) {
          diag[i + 1] -= p;
          sub[m] = 0.0;
          underflow = true;
          break;
        }
        s = f / r;
        c = g / r;
        g = diag[i + 1] - p;
        r = (diag[i] - g) * s + 2.0 * c * b;
        p = s * r;
        diag[i + 1] = g + p;
        g = c * r - b;
      }
      if (underflow) continue;
      diag[l] -= p;
      sub[l] = g;
      sub[m] = 0.0;
    }
  }
  std::sort(diag.begin(), diag.end());
}

}  // namespace

double hermite_fn(int n, double x) {
  if (n < 0) throw DomainError("hermite_fn: order must be nonnegative");
  double h0 = std::pow(kPi, -0.25) * std::exp(-0.5 * x * x);
  if (n == 0) return h0;
  double h1 = std::sqrt(2.0) * x * h0;
  for (int k = 1; k < n; ++k) {
    const double h2 = x * std::sqrt(2.0 / (k + 1)) * h1 -
                      std::sqrt(double(k) / (k + 1)) * h0;
    h0 = h1;
    h1 = h2;
  }
  return h1;
}

std::vector<double> hermite_fn_all(int nmax, double x) {
  if (nmax < 0) throw DomainError("hermite_fn_all: order must be nonnegative");
  std::vector<double> h(nmax + 1);
  h[0] = std::pow(kPi, -0.25) * std::exp(-0.5 * x * x);
  if (nmax >= 1) h[1] = std::sqrt(2.0) * x * h[0];
  for (int k = 1; k < nmax; ++k)
    h[k + 1] = x * std::sqrt(2.0 / (k + 1)) * h[k] -
               std::sqrt(double(k) / (k + 1)) * h[k - 1];
  return h;
}

GaussHermiteRule gauss_hermite(int n) {
  if (n < 1) throw DomainError("gauss_hermite: need at least one node");
  // Golub-Welsch: nodes are eigenvalues of the Jacobi matrix with zero
  // diagonal and off-diagonal sqrt(k/2).
  std::vector<double> diag(n, 0.0), sub(n - 1);
  for (int k = 1; k < n; ++k) sub[k - 1] = std::sqrt(0.5 * k);
  tridiag_eigenvalues(diag, sub);

  GaussHermiteRule rule;
  rule.nodes.resize(n);
  rule.log_what.resize(n);
  for (int i = 0; i < n; ++i) {
    double x = diag[i];
    // two Newton steps on h_n restore full precision lost in QL;
    // h_n'(x) = sqrt(2n) h_{n-1}(x) - x h_n(x), scale cancels in the ratio
    for (int it = 0; it < 2; ++it) {
      double hnm1, hn;
      scaled_pair(n, x, hnm1, hn);
      const double dp = std::sqrt(2.0 * n) * hnm1 - x * hn;
      if (dp != 0.0) x -= hn / dp;
    }
    rule.nodes[i] = x;
    // Christoffel: w_i = 1/sum_{k<n} p_k(x_i)^2 with p_k = h_k e^{x^2/2},
    // so log(w_i e^{x_i^2}) = -log sum_{k<n} h_k(x_i)^2.
    rule.log_what[i] = -log_sum_hsq(x, n - 1);
  }
  return rule;
}

double GaussHermiteRule::integrate(const std::function<double(double)>& f) const {
  double s = 0.0;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const double fv = f(nodes[i]);
    if (fv != 0.0) s += std::exp(log_what[i]) * fv;
  }
  return s;
}

double& HermiteCoeffs::at(const std::vector<int>& idx) {
  std::size_t k = 0;
  for (int i = 0; i < dim; ++i) k = k * (N + 1) + idx[i];
  return d[k];
}
double HermiteCoeffs::at(const std::vector<int>& idx) const {
  return const_cast<HermiteCoeffs*>(this)->at(idx);
}

HermiteCoeffs hermite_coeffs(const std::function<double(const std::vector<double>&)>& f,
                             int N, int dim, int nodes) {
  if (N < 0 || dim < 1) throw DomainError("hermite_coeffs: bad N or dim");
  if (nodes <= 0) nodes = std::max(2 * N + 16, 64);
  const auto rule = gauss_hermite(nodes);

  // per-node data shared across all coefficients
  std::vector<double> what(nodes), exph(nodes);
  std::vector<std::vector<double>> hv(nodes);
  for (int i = 0; i < nodes; ++i) {
    what[i] = std::exp(rule.log_what[i]);
    exph[i] = std::exp(0.5 * rule.nodes[i] * rule.nodes[i]);
    hv[i] = hermite_fn_all(N, rule.nodes[i]);
  }

  HermiteCoeffs out;
  out.N = N;
  out.dim = dim;
  const std::size_t count = [&] {
    std::size_t c = 1;
    for (int i = 0; i < dim; ++i) c *= std::size_t(N + 1);
    return c;
  }();
  out.d.assign(count, 0.0);

  // tensor quadrature: iterate over the node grid once, scatter into all
  // coefficients (the weighted f value is shared)
  std::vector<int> gi(dim, 0);
  std::vector<double> xs(dim);
  const std::size_t ngrid = [&] {
    std::size_t c = 1;
    for (int i = 0; i < dim; ++i) c *= std::size_t(nodes);
    return c;
  }();
  std::vector<int> ni(dim, 0);
  double max_base = 0.0, max_edge = 0.0;
  for (std::size_t g = 0; g < ngrid; ++g) {
    double wprod = 1.0, eprod = 1.0;
    bool edge = false;
    for (int i = 0; i < dim; ++i) {
      xs[i] = rule.nodes[gi[i]];
      wprod *= what[gi[i]];
      eprod *= exph[gi[i]];
      if (gi[i] == 0 || gi[i] == nodes - 1) edge = true;
    }
    const double fv = f(xs);
    if (fv != 0.0) {
      const double base = wprod * fv * eprod;
      max_base = std::max(max_base, std::abs(base));
      if (edge) max_edge = std::max(max_edge, std::abs(base));
      // scatter over the coefficient box
      std::fill(ni.begin(), ni.end(), 0);
      for (std::size_t c = 0; c < count; ++c) {
        double hp = 1.0;
        for (int i = 0; i < dim; ++i) hp *= hv[gi[i]][ni[i]];
        out.d[c] += base * hp;
        for (int i = dim - 1; i >= 0; --i) {
          if (++ni[i] <= N) break;
          ni[i] = 0;
        }
      }
    }
    for (int i = dim - 1; i >= 0; --i) {
      if (++gi[i] < nodes) break;
      gi[i] = 0;
    }
  }
  for (double v : out.d)
    if (!std::isfinite(v))
      throw IntegrabilityError("hermite_coeffs: quadrature sum diverged");
  // weighted samples of an integrable f decay toward the outermost nodes;
  // a dominant edge term means f e^{x^2/2} is not square integrable
  if (max_base > 0.0 && max_edge > 1e-8 * max_base)
    throw IntegrabilityError("hermite_coeffs: integrand does not decay");
  return out;
}

HermiteCoeffs hermite_coeffs(const std::function<double(double)>& f, int N,
                             int nodes) {
  return hermite_coeffs(
      [&f](const std::vector<double>& x) { return f(x[0]); }, N, 1, nodes);
}

std::vector<double> b_from_d(const HermiteCoeffs& d) {
  // per-axis factors (-1)^n / sqrt(2^n n! sqrt(pi))
  std::vector<double> fac(d.N + 1);
  double lg = 0.25 * std::log(kPi);  // ln sqrt(sqrt(pi)) at n=0
  for (int n = 0; n <= d.N; ++n) {
    if (n > 0) lg += 0.5 * std::log(2.0 * n);
    fac[n] = (n % 2 ? -1.0 : 1.0) * std::exp(-lg);
  }
  std::vector<double> b(d.d.size());
  std::vector<int> ni(d.dim, 0);
  for (std::size_t c = 0; c < d.d.size(); ++c) {
    double fprod = 1.0;
    for (int i = 0; i < d.dim; ++i) fprod *= fac[ni[i]];
    b[c] = d.d[c] * fprod;
    for (int i = d.dim - 1; i >= 0; --i) {
      if (++ni[i] <= d.N) break;
      ni[i] = 0;
    }
  }
  return b;
}

double tail_bound(double f_h3_norm, double M, int N, int dim) {
  if (N <= 2) throw DomainError("tail_bound: requires N > 2");
  if (M < 1.0) throw DomainError("tail_bound: requires M >= 1");
  // |d_n| <= ||(x + d/dx)^3 (f e^{x^2/2})||_L1 / (2(n+1))^{3/2} and
  // sum_{n>N} (2(n+1))^{-3/2} <= (10/N^{1/4})^2. The L1 norm is dominated by
  // sqrt(2M) (8M^3 + 12M^2 + 12M + 7) ||f||_{H^3 weighted} on [-M, M].
  const double q = std::sqrt(2.0 * M) * (8 * M * M * M + 12 * M * M + 12 * M + 7);
  return std::pow(q * 10.0 / std::pow(double(N), 0.25), dim) * f_h3_norm;
}

}  // namespace wavepax
