#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "wavepax/hermite.hpp"

using namespace wavepax;

namespace {

constexpr double kPi = std::numbers::pi;

// Raw Hermite polynomial by the integer recurrence H_{n+1} = 2x H_n - 2n H_{n-1};
// independent oracle for the normalized recurrence (n small).
double hermite_poly_direct(int n, double x) {
  double h0 = 1.0, h1 = 2.0 * x;
  if (n == 0) return h0;
  for (int k = 1; k < n; ++k) {
    const double h2 = 2.0 * x * h1 - 2.0 * k * h0;
    h0 = h1;
    h1 = h2;
  }
  return h1;
}

double hermite_fn_direct(int n, double x) {
  double lognorm = 0.25 * std::log(kPi);
  for (int k = 1; k <= n; ++k) lognorm += 0.5 * std::log(2.0 * k);
  return hermite_poly_direct(n, x) * std::exp(-0.5 * x * x - lognorm);
}

// composite Simpson on [a, b]
double simpson(const std::function<double(double)>& f, double a, double b, int n) {
  const double h = (b - a) / n;
  double s = f(a) + f(b);
  for (int i = 1; i < n; ++i) s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
  return s * h / 3.0;
}

}  // namespace

TEST_CASE("hermite function golden values") {
  CHECK(hermite_fn(0, 0.0) == doctest::Approx(std::pow(kPi, -0.25)).epsilon(1e-12));
  CHECK(std::abs(hermite_fn(1, 0.0)) < 1e-15);
  // H_2(x) = 4x^2 - 2 with the normalization, evaluated directly
  CHECK(hermite_fn(2, 1.0) ==
        doctest::Approx(2.0 / std::sqrt(8.0 * std::sqrt(kPi)) * std::exp(-0.5))
            .epsilon(1e-12));
  CHECK(hermite_fn(2, 1.0) == doctest::Approx(0.322153).epsilon(1e-5));
}

TEST_CASE("recurrence agrees with direct polynomial evaluation") {
  for (int n = 0; n <= 12; ++n)
    for (double x = -5.0; x <= 5.0; x += 0.73)
      CHECK(hermite_fn(n, x) ==
            doctest::Approx(hermite_fn_direct(n, x)).epsilon(1e-10));
}

TEST_CASE("hermite_fn_all consistent with hermite_fn") {
  auto h = hermite_fn_all(20, 1.7);
  for (int n = 0; n <= 20; ++n)
    CHECK(h[n] == doctest::Approx(hermite_fn(n, 1.7)).epsilon(1e-13));
}

TEST_CASE("orthonormality to 1e-10 for n, m <= 20") {
  auto rule = gauss_hermite(64);
  std::vector<std::vector<double>> hv(rule.nodes.size());
  for (std::size_t i = 0; i < rule.nodes.size(); ++i)
    hv[i] = hermite_fn_all(20, rule.nodes[i]);
  for (int n = 0; n <= 20; ++n)
    for (int m = n; m <= 20; ++m) {
      double s = 0.0;
      for (std::size_t i = 0; i < rule.nodes.size(); ++i)
        s += std::exp(rule.log_what[i]) * hv[i][n] * hv[i][m];
      CHECK(std::abs(s - (n == m ? 1.0 : 0.0)) < 1e-10);
    }
}

TEST_CASE("gauss-hermite rule integrates gaussians at large order") {
  // underflow-safe weights must behave through the scaled regime
  for (int n : {64, 512, 1024}) {
    auto rule = gauss_hermite(n);
    const double v = rule.integrate([](double x) { return std::exp(-x * x); });
    CHECK(v == doctest::Approx(std::sqrt(kPi)).epsilon(1e-12));
    const double m2 = rule.integrate([](double x) { return x * x * std::exp(-x * x); });
    CHECK(m2 == doctest::Approx(0.5 * std::sqrt(kPi)).epsilon(1e-12));
  }
}

TEST_CASE("hermite_coeffs recovers orthonormal expansions") {
  auto d = hermite_coeffs(
      [](double x) { return hermite_fn(0, x) * std::exp(-0.5 * x * x); }, 6);
  CHECK(d.d[0] == doctest::Approx(1.0).epsilon(1e-12));
  for (int n = 1; n <= 6; ++n) CHECK(std::abs(d.d[n]) < 1e-12);

  auto d2 = hermite_coeffs(
      [](double x) {
        return (hermite_fn(1, x) + hermite_fn(3, x)) * std::exp(-0.5 * x * x);
      },
      6);
  CHECK(d2.d[1] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(d2.d[3] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(d2.d[0]) + std::abs(d2.d[2]) + std::abs(d2.d[4]) < 1e-12);
}

TEST_CASE("characteristic-function coefficient against an adaptive oracle") {
  // f = chi_[-1,1] e^{-x^2/2}: d_0 = pi^{-1/4} int_{-1}^{1} e^{-x^2/2} dx
  const double closed = std::pow(kPi, -0.25) * std::sqrt(2 * kPi) *
                        std::erf(1.0 / std::sqrt(2.0));
  const double oracle =
      std::pow(kPi, -0.25) *
      simpson([](double x) { return std::exp(-0.5 * x * x); }, -1.0, 1.0, 4096);
  CHECK(closed == doctest::Approx(1.28535).epsilon(1e-5));
  CHECK(oracle == doctest::Approx(closed).epsilon(1e-10));

  // Gauss-Hermite converges slowly on the jump; a large rule lands within
  // a few percent of the oracle value
  auto d = hermite_coeffs(
      [](double x) { return std::abs(x) <= 1.0 ? std::exp(-0.5 * x * x) : 0.0; },
      4, 2048);
  CHECK(std::abs(d.d[0] - oracle) < 0.05);
}

TEST_CASE("parseval within quadrature tolerance") {
  // f e^{x^2/2} = 0.3 h_0 - 0.2 h_5: sum d_n^2 = 0.13 exactly
  auto d = hermite_coeffs(
      [](double x) {
        return (0.3 * hermite_fn(0, x) - 0.2 * hermite_fn(5, x)) *
               std::exp(-0.5 * x * x);
      },
      8);
  double s = 0.0;
  for (double v : d.d) s += v * v;
  CHECK(s == doctest::Approx(0.13).epsilon(1e-12));
}

TEST_CASE("hermite_coeffs in dimension 2 factorizes products") {
  auto f = [](const std::vector<double>& x) {
    return (hermite_fn(1, x[0]) + 0.5 * hermite_fn(0, x[0])) * hermite_fn(2, x[1]) *
           std::exp(-0.5 * (x[0] * x[0] + x[1] * x[1]));
  };
  auto d = hermite_coeffs(f, 3, 2);
  CHECK(d.at({1, 2}) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(d.at({0, 2}) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(std::abs(d.at({2, 2})) < 1e-12);
  CHECK(std::abs(d.at({1, 1})) < 1e-12);
}

TEST_CASE("integrability error on divergent data") {
  CHECK_THROWS_AS(
      hermite_coeffs([](double x) { return std::exp(0.9 * x * x); }, 4),
      IntegrabilityError);
}

TEST_CASE("b_from_d normalization") {
  HermiteCoeffs d;
  d.N = 2;
  d.dim = 1;
  d.d = {1.0, 1.0, 1.0};
  auto b = b_from_d(d);
  CHECK(b[0] == doctest::Approx(1.0 / std::sqrt(std::sqrt(kPi))).epsilon(1e-13));
  CHECK(b[0] == doctest::Approx(0.751126).epsilon(1e-5));
  CHECK(b[1] == doctest::Approx(-0.531126).epsilon(1e-5));
  CHECK(b[2] == doctest::Approx(0.265563).epsilon(1e-5));
}

TEST_CASE("tail factor dominates the direct partial sum at N = 16") {
  // sqrt(sum_{n>16} (2(n+1))^{-3/2}) <= 10/16^{1/4}
  double s = 0.0;
  for (int n = 17; n <= 2'000'000; ++n) s += std::pow(2.0 * (n + 1), -1.5);
  // integral bound for the dropped remainder
  s += std::pow(2.0, -1.5) * 2.0 / std::sqrt(2'000'002.0);
  CHECK(std::sqrt(s) <= 10.0 / std::pow(16.0, 0.25));
  CHECK(std::sqrt(s) == doctest::Approx(0.4113).epsilon(1e-3));
}

TEST_CASE("tail_bound decays in N and rejects bad input") {
  double prev = 1e300;
  for (int N : {4, 8, 16, 32, 64, 128}) {
    const double b = tail_bound(1.0, 2.0, N, 1);
    CHECK(b < prev);
    prev = b;
  }
  CHECK_THROWS_AS(tail_bound(1.0, 2.0, 2, 1), DomainError);
  CHECK_THROWS_AS(tail_bound(1.0, 0.5, 8, 1), DomainError);
}

TEST_CASE("computed tail E_N stays below tail_bound for a smooth bump") {
  // f = (1 - (x/M)^2)^4 on [-M, M], an H^3 function with compact support
  const double M = 2.0;
  auto f = [M](double x) {
    if (std::abs(x) >= M) return 0.0;
    const double u = 1.0 - (x / M) * (x / M);
    return u * u * u * u;
  };
  auto d = hermite_coeffs(f, 60, 256);
  double tail_sq = 0.0;
  for (int n = 17; n <= 60; ++n) tail_sq += d.d[n] * d.d[n];
  const double EN = std::sqrt(tail_sq);

  // ||f||_{H^3 weighted} by quadrature with analytic derivatives
  auto deriv = [M](double x, int j) {
    // derivatives of (1-u^2)^4 with u = x/M
    const double u = x / M;
    const double s = 1.0 - u * u;
    double v = 0.0;
    switch (j) {
      case 0: v = s * s * s * s; break;
      case 1: v = -8.0 * u * s * s * s / M; break;
      case 2: v = (-8.0 * s * s * s + 48.0 * u * u * s * s) / (M * M); break;
      case 3: v = (144.0 * u * s * s - 192.0 * u * u * u * s) / (M * M * M); break;
    }
    return v;
  };
  double h3sq = 0.0;
  for (int j = 0; j <= 3; ++j) {
    h3sq += simpson(
        [&](double x) {
          const double v = std::abs(x) >= M ? 0.0 : deriv(x, j);
          return v * v * std::exp(x * x);
        },
        -M, M, 8192);
  }
  const double bound = tail_bound(std::sqrt(h3sq), M, 16, 1);
  CHECK(EN <= bound);
  CHECK(EN < 0.1);  // the tail itself is genuinely small
}
