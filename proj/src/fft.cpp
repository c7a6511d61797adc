#include "rwave/fft.hpp"

#include <fftw3.h>

#include <cstring>
#include <map>
#include <mutex>

namespace rwave::fft {

namespace {

std::mutex g_planner_mutex;

fftw_plan plan_c2c(int n, int sign) {
  static std::map<std::pair<int, int>, fftw_plan> cache;
  std::lock_guard<std::mutex> lock(g_planner_mutex);
  auto it = cache.find({n, sign});
  if (it != cache.end()) return it->second;
  fftw_complex* buf = fftw_alloc_complex(static_cast<size_t>(n) * n * n);
  fftw_plan p = fftw_plan_dft_3d(n, n, n, buf, buf, sign,
                                 FFTW_ESTIMATE | FFTW_UNALIGNED);
  fftw_free(buf);
  cache[{n, sign}] = p;
  return p;
}

fftw_plan plan_r2c(int n) {
  static std::map<int, fftw_plan> cache;
  std::lock_guard<std::mutex> lock(g_planner_mutex);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  double* rbuf = fftw_alloc_real(static_cast<size_t>(n) * n * n);
  fftw_complex* cbuf = fftw_alloc_complex(static_cast<size_t>(n) * n * (n / 2 + 1));
  fftw_plan p = fftw_plan_dft_r2c_3d(n, n, n, rbuf, cbuf,
                                     FFTW_ESTIMATE | FFTW_UNALIGNED);
  fftw_free(cbuf);
  fftw_free(rbuf);
  cache[n] = p;
  return p;
}

fftw_plan plan_c2r(int n) {
  static std::map<int, fftw_plan> cache;
  std::lock_guard<std::mutex> lock(g_planner_mutex);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  double* rbuf = fftw_alloc_real(static_cast<size_t>(n) * n * n);
  fftw_complex* cbuf = fftw_alloc_complex(static_cast<size_t>(n) * n * (n / 2 + 1));
  fftw_plan p = fftw_plan_dft_c2r_3d(n, n, n, cbuf, rbuf,
                                     FFTW_ESTIMATE | FFTW_UNALIGNED);
  fftw_free(cbuf);
  fftw_free(rbuf);
  cache[n] = p;
  return p;
}

}  // namespace

void forward_c2c(int n, const std::complex<double>* in, std::complex<double>* out) {
  fftw_plan p = plan_c2c(n, FFTW_FORWARD);
  if (in != out) std::memcpy(out, in, sizeof(std::complex<double>) * static_cast<size_t>(n) * n * n);
  fftw_execute_dft(p, reinterpret_cast<fftw_complex*>(out),
                   reinterpret_cast<fftw_complex*>(out));
}

void backward_c2c(int n, const std::complex<double>* in, std::complex<double>* out) {
  fftw_plan p = plan_c2c(n, FFTW_BACKWARD);
  if (in != out) std::memcpy(out, in, sizeof(std::complex<double>) * static_cast<size_t>(n) * n * n);
  fftw_execute_dft(p, reinterpret_cast<fftw_complex*>(out),
                   reinterpret_cast<fftw_complex*>(out));
}

void forward_r2c(int n, const double* in, std::complex<double>* out) {
  fftw_plan p = plan_r2c(n);
  fftw_execute_dft_r2c(p, const_cast<double*>(in),
                       reinterpret_cast<fftw_complex*>(out));
}

void backward_c2r(int n, const std::complex<double>* in, double* out) {
  fftw_plan p = plan_c2r(n);
  // FFTW's multidimensional c2r overwrites its input; work on a scratch copy.
  thread_local std::vector<std::complex<double>> scratch;
  size_t m = static_cast<size_t>(n) * n * (n / 2 + 1);
  scratch.assign(in, in + m);
  fftw_execute_dft_c2r(p, reinterpret_cast<fftw_complex*>(scratch.data()), out);
}

}  // namespace rwave::fft
