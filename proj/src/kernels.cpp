#include "rwave/kernels.hpp"

#include <cmath>

namespace rwave::kernels {

namespace serial {

void apply_real_symbol(cplx* c, const double* sym, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) c[i] *= sym[i];
}

void pointwise_power(double* u, std::size_t n, double p) {
  if (p == 4.0) {
    for (std::size_t i = 0; i < n; ++i) {
      double v = u[i];
      u[i] = std::fabs(v) * v * v * v;
    }
  } else {
    double e = p - 1.0;
    for (std::size_t i = 0; i < n; ++i) {
      double v = u[i];
      u[i] = v == 0.0 ? 0.0 : std::pow(std::fabs(v), e) * v;
    }
  }
}

void rotate_pair(cplx* a, cplx* b, const double* cos_t, const double* snc_t,
                 const double* xi_abs, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    cplx ai = a[i];
    cplx bi = b[i];
    double r2 = xi_abs[i] * xi_abs[i];
    a[i] = cos_t[i] * ai + snc_t[i] * bi;
    b[i] = -r2 * snc_t[i] * ai + cos_t[i] * bi;
  }
}

void axpy(cplx* y, const cplx* x, double alpha, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

}  // namespace serial

void apply_real_symbol(cplx* c, const double* sym, std::size_t n) {
#pragma omp parallel for schedule(static)
  for (long long i = 0; i < static_cast<long long>(n); ++i) c[i] *= sym[i];
}

void pointwise_power(double* u, std::size_t n, double p) {
  if (p == 4.0) {
#pragma omp parallel for schedule(static)
    for (long long i = 0; i < static_cast<long long>(n); ++i) {
      double v = u[i];
      u[i] = std::fabs(v) * v * v * v;
    }
  } else {
    double e = p - 1.0;
#pragma omp parallel for schedule(static)
    for (long long i = 0; i < static_cast<long long>(n); ++i) {
      double v = u[i];
      u[i] = v == 0.0 ? 0.0 : std::pow(std::fabs(v), e) * v;
    }
  }
}

void rotate_pair(cplx* a, cplx* b, const double* cos_t, const double* snc_t,
                 const double* xi_abs, std::size_t n) {
#pragma omp parallel for schedule(static)
  for (long long i = 0; i < static_cast<long long>(n); ++i) {
    cplx ai = a[i];
    cplx bi = b[i];
    double r2 = xi_abs[i] * xi_abs[i];
    a[i] = cos_t[i] * ai + snc_t[i] * bi;
    b[i] = -r2 * snc_t[i] * ai + cos_t[i] * bi;
  }
}

void axpy(cplx* y, const cplx* x, double alpha, std::size_t n) {
#pragma omp parallel for schedule(static)
  for (long long i = 0; i < static_cast<long long>(n); ++i) y[i] += alpha * x[i];
}

}  // namespace rwave::kernels
