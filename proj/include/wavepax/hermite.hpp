#pragma once

#include <functional>
#include <vector>

#include "wavepax/types.hpp"

namespace wavepax {

// Orthonormal Hermite function h_n(x) = H_n(x) e^{-x^2/2} / sqrt(2^n n! sqrt(pi))
// via the normalized recurrence h_{n+1} = x sqrt(2/(n+1)) h_n - sqrt(n/(n+1)) h_{n-1}.
double hermite_fn(int n, double x);
// h_0..h_nmax in one sweep.
std::vector<double> hermite_fn_all(int nmax, double x);

// Gauss-Hermite rule stored in underflow-safe form: the classical weights
// w_i decay like e^{-x_i^2}, so we keep log(w_i e^{x_i^2}) instead and
//   integral f(x) dx  ~=  sum_i exp(log_what_i) f(x_i).
struct GaussHermiteRule {
  std::vector<double> nodes;
  std::vector<double> log_what;
  // integral f(x) dx over the real line
  double integrate(const std::function<double(double)>& f) const;
};
GaussHermiteRule gauss_hermite(int n);

// Hermite coefficients d_n on the index box {0..N}^dim, row-major.
struct HermiteCoeffs {
  int N = 0;
  int dim = 1;
  std::vector<double> d;  // size (N+1)^dim

  double& at(const std::vector<int>& idx);
  double at(const std::vector<int>& idx) const;
  std::size_t size() const { return d.size(); }
};

// d_n = integral f(x) e^{|x|^2/2} prod_i h_{n_i}(x_i) dx by tensor
// Gauss-Hermite quadrature. nodes = 0 picks max(2N+16, 64) per axis.
// Throws IntegrabilityError if the quadrature sum is not finite.
HermiteCoeffs hermite_coeffs(const std::function<double(const std::vector<double>&)>& f,
                             int N, int dim, int nodes = 0);
HermiteCoeffs hermite_coeffs(const std::function<double(double)>& f, int N,
                             int nodes = 0);

// b_n = d_n prod_i (-1)^{n_i} / sqrt(2^{n_i} n_i! sqrt(pi))
std::vector<double> b_from_d(const HermiteCoeffs& d);

// Hermite tail bound for f in H^3 with support in [-M, M]^dim:
//   E_N <= p3(M) ||f||_{H^3 weighted} / N^{dim/4}
// with the per-coordinate tail factor 10 / N^{1/4} and a conservative
// monomial assembly of p3. Requires N > 2, M >= 1.
double tail_bound(double f_h3_norm, double M, int N, int dim);

}  // namespace wavepax
