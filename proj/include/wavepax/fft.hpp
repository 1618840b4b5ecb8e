#pragma once

#include "wavepax/grid.hpp"

namespace wavepax {

// Thin FFTW wrappers. Unnormalized, row-major, in place. Each call plans on
// its own buffer, so concurrent use on distinct fields is safe.
void fft_forward(const GridSpec& g, Field& u);
void fft_backward(const GridSpec& g, Field& u);  // scaled by 1/n^dim

// Spectral Laplacian: u <- Lap u
void spectral_laplacian(const GridSpec& g, Field& u);

}  // namespace wavepax
