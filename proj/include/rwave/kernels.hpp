#pragma once

#include <complex>
#include <cstddef>

namespace rwave::kernels {

using cplx = std::complex<double>;

// Data-parallel inner loops used by the spectral operators. Each kernel has a
// serial twin in kernels::serial used as the reference implementation in
// tests and in the benchmark target. All kernels are elementwise, so the
// parallel versions are bitwise identical to the serial ones at any thread
// count.

// c[i] *= sym[i]
void apply_real_symbol(cplx* c, const double* sym, std::size_t n);

// u[i] = |u[i]|^{p-1} u[i]; p = 4 is special-cased (no pow in the loop).
void pointwise_power(double* u, std::size_t n, double p);

// One exact half-wave group step on a (position, velocity) coefficient pair:
//   a <- cos(t|xi|) a + snc(t,|xi|) b
//   b <- -|xi|^2 snc(t,|xi|) a + cos(t|xi|) b
// with snc(t,r) = sin(tr)/r (value t at r = 0). cos_t and snc_t are tables.
void rotate_pair(cplx* a, cplx* b, const double* cos_t, const double* snc_t,
                 const double* xi_abs, std::size_t n);

// y[i] += alpha * x[i]
void axpy(cplx* y, const cplx* x, double alpha, std::size_t n);

namespace serial {
void apply_real_symbol(cplx* c, const double* sym, std::size_t n);
void pointwise_power(double* u, std::size_t n, double p);
void rotate_pair(cplx* a, cplx* b, const double* cos_t, const double* snc_t,
                 const double* xi_abs, std::size_t n);
void axpy(cplx* y, const cplx* x, double alpha, std::size_t n);
}  // namespace serial

}  // namespace rwave::kernels
