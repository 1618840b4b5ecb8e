#include "wavepax/grid.hpp"

#include <cmath>
#include <numbers>

namespace wavepax {

std::vector<double> GridSpec::axis() const {
  std::vector<double> x(points_per_dim);
  for (int i = 0; i < points_per_dim; ++i) x[i] = coord(i);
  return x;
}

double GridSpec::freq(int k) const {
  const int n = points_per_dim;
  const int kk = (k < n / 2) ? k : k - n;
  return kk * std::numbers::pi / half_width;
}

void GridSpec::validate() const {
  if (dim < 1 || dim > 3) throw DomainError("grid dim must be 1..3");
  if (!(half_width > 0.0)) throw DomainError("grid half_width must be positive");
  const int n = points_per_dim;
  if (n < 2 || (n & (n - 1)) != 0)
    throw DomainError("points_per_dim must be a power of two");
}

double grid_l2(const GridSpec& g, const Field& u) {
  double s = 0.0;
  for (const auto& v : u) s += std::norm(v);
  return std::sqrt(s * g.cell());
}

double grid_l2_diff(const GridSpec& g, const Field& u, const Field& v) {
  double s = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) s += std::norm(u[i] - v[i]);
  return std::sqrt(s * g.cell());
}

double boundary_mass_fraction(const GridSpec& g, const Field& u) {
  const double cut = g.half_width * 15.0 / 16.0;
  const int n = g.points_per_dim;
  double shell = 0.0, total = 0.0;
  std::vector<int> idx(g.dim, 0);
  for (std::size_t f = 0; f < u.size(); ++f) {
    bool outer = false;
    for (int a = 0; a < g.dim; ++a)
      if (std::abs(g.coord(idx[a])) >= cut) outer = true;
    const double m = std::norm(u[f]);
    total += m;
    if (outer) shell += m;
    for (int a = g.dim - 1; a >= 0; --a) {
      if (++idx[a] < n) break;
      idx[a] = 0;
    }
  }
  return total > 0.0 ? shell / total : 0.0;
}

double recommended_half_width(double max_center, double min_y2, double min_A) {
  return max_center / min_y2 + 8.0 / std::sqrt(min_A);
}

}  // namespace wavepax
