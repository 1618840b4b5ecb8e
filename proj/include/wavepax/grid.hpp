#pragma once

#include <complex>
#include <vector>

#include "wavepax/types.hpp"

namespace wavepax {

using Field = std::vector<std::complex<double>>;

// Periodic tensor grid on [-L, L)^dim, points_per_dim samples per axis
// (power of two), row-major storage.
struct GridSpec {
  int dim = 1;
  double half_width = 16.0;
  int points_per_dim = 4096;

  std::size_t total() const {
    std::size_t n = 1;
    for (int i = 0; i < dim; ++i) n *= std::size_t(points_per_dim);
    return n;
  }
  double spacing() const { return 2.0 * half_width / points_per_dim; }
  double cell() const {
    double c = 1.0;
    for (int i = 0; i < dim; ++i) c *= spacing();
    return c;
  }
  // coordinate of index i along one axis
  double coord(int i) const { return -half_width + i * spacing(); }
  std::vector<double> axis() const;
  // angular frequency of FFT bin k along one axis
  double freq(int k) const;

  void validate() const;
};

double grid_l2(const GridSpec& g, const Field& u);
double grid_l2_diff(const GridSpec& g, const Field& u, const Field& v);
// |u|^2 mass in the shell |x_i| >= (15/16) L relative to the total
double boundary_mass_fraction(const GridSpec& g, const Field& u);

// L >= max|a_n| / min y2 + 8 / sqrt(min A): keeps truncated Gaussian mass
// below e^{-16} through propagation spreading.
double recommended_half_width(double max_center, double min_y2, double min_A);

}  // namespace wavepax
