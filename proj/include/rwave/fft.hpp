#pragma once

#include <complex>
#include <vector>

namespace rwave::fft {

// Plan-cached FFTW wrappers for cubic grids. Plans are created with
// FFTW_ESTIMATE so the chosen algorithm (and hence the bit pattern of the
// results) is reproducible across runs and thread counts. Plan creation is
// mutex-guarded; execution on distinct arrays is safe concurrently.

// c2c, unnormalized (FFTW conventions: forward uses e^{-i k x}).
void forward_c2c(int n, const std::complex<double>* in, std::complex<double>* out);
void backward_c2c(int n, const std::complex<double>* in, std::complex<double>* out);

// r2c half-spectrum layout: dims n x n x (n/2+1), unnormalized.
void forward_r2c(int n, const double* in, std::complex<double>* out);
// c2r destroys its input; the wrapper copies into internal scratch.
void backward_c2r(int n, const std::complex<double>* in, double* out);

}  // namespace rwave::fft
