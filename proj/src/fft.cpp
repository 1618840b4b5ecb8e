#include "wavepax/fft.hpp"

#include <fftw3.h>

#include <mutex>

namespace wavepax {

namespace {

// fftw planning is not thread-safe, execution is
std::mutex plan_mutex;

void run(const GridSpec& g, Field& u, int sign) {
  g.validate();
  if (u.size() != g.total()) throw DomainError("field size does not match grid");
  auto* data = reinterpret_cast<fftw_complex*>(u.data());
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(plan_mutex);
    const int n = g.points_per_dim;
    if (g.dim == 1)
      plan = fftw_plan_dft_1d(n, data, data, sign, FFTW_ESTIMATE);
    else if (g.dim == 2)
      plan = fftw_plan_dft_2d(n, n, data, data, sign, FFTW_ESTIMATE);
    else
      plan = fftw_plan_dft_3d(n, n, n, data, data, sign, FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  {
    std::lock_guard<std::mutex> lock(plan_mutex);
    fftw_destroy_plan(plan);
  }
}

}  // namespace

void fft_forward(const GridSpec& g, Field& u) { run(g, u, FFTW_FORWARD); }

void fft_backward(const GridSpec& g, Field& u) {
  run(g, u, FFTW_BACKWARD);
  const double inv = 1.0 / double(u.size());
  for (auto& v : u) v *= inv;
}

void spectral_laplacian(const GridSpec& g, Field& u) {
  fft_forward(g, u);
  const int n = g.points_per_dim;
  std::vector<int> idx(g.dim, 0);
  for (std::size_t f = 0; f < u.size(); ++f) {
    double k2 = 0.0;
    for (int a = 0; a < g.dim; ++a) {
      const double k = g.freq(idx[a]);
      k2 += k * k;
    }
    u[f] *= -k2;
    for (int a = g.dim - 1; a >= 0; --a) {
      if (++idx[a] < n) break;
      idx[a] = 0;
    }
  }
  fft_backward(g, u);
}

}  // namespace wavepax
