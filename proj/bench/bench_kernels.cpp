// Timing comparison of the OpenMP kernels against their serial reference
// twins, plus a bitwise-identity check (the kernels are elementwise, so the
// results must match exactly at any thread count).

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <vector>

#include "rwave/kernels.hpp"

using rwave::kernels::cplx;

namespace {

double now_ms() {
  using clock = std::chrono::steady_clock;
  return std::chrono::duration<double, std::milli>(clock::now().time_since_epoch())
      .count();
}

template <class F>
double time_ms(F&& f, int reps) {
  f();  // warm up
  double t0 = now_ms();
  for (int i = 0; i < reps; ++i) f();
  return (now_ms() - t0) / reps;
}

std::vector<cplx> make_cvec(std::size_t n, unsigned salt) {
  std::vector<cplx> v(n);
  for (std::size_t i = 0; i < n; ++i)
    v[i] = cplx(std::sin(0.001 * i + salt), std::cos(0.002 * i + salt));
  return v;
}

std::vector<double> make_rvec(std::size_t n, unsigned salt) {
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = std::sin(0.003 * i + salt);
  return v;
}

bool bitwise_equal(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  return std::memcmp(a.data(), b.data(), a.size() * sizeof(cplx)) == 0;
}

void bench_size(int n_axis) {
  const std::size_t n = static_cast<std::size_t>(n_axis) * n_axis * n_axis;
  const int reps = 50;
  std::printf("-- %d^3 (%zu points) --\n", n_axis, n);

  auto sym = make_rvec(n, 1);
  auto xi = make_rvec(n, 2);
  for (auto& x : xi) x = std::fabs(x) * 10.0;
  std::vector<double> ct(n), st(n);
  for (std::size_t i = 0; i < n; ++i) {
    ct[i] = std::cos(0.01 * xi[i]);
    st[i] = xi[i] == 0.0 ? 0.01 : std::sin(0.01 * xi[i]) / xi[i];
  }

  {
    auto base = make_cvec(n, 3);
    auto a = base, b = base;
    double tp = time_ms([&] { a = base; rwave::kernels::apply_real_symbol(a.data(), sym.data(), n); }, reps);
    double ts = time_ms([&] { b = base; rwave::kernels::serial::apply_real_symbol(b.data(), sym.data(), n); }, reps);
    std::printf("apply_real_symbol  omp %8.3f ms  serial %8.3f ms  identical: %s\n", tp,
                ts, bitwise_equal(a, b) ? "yes" : "NO");
  }
  {
    auto base = make_rvec(n, 4);
    auto a = base, b = base;
    double tp = time_ms([&] { a = base; rwave::kernels::pointwise_power(a.data(), n, 4.0); }, reps);
    double ts = time_ms([&] { b = base; rwave::kernels::serial::pointwise_power(b.data(), n, 4.0); }, reps);
    bool same = std::memcmp(a.data(), b.data(), n * sizeof(double)) == 0;
    std::printf("pointwise_power    omp %8.3f ms  serial %8.3f ms  identical: %s\n", tp,
                ts, same ? "yes" : "NO");
  }
  {
    auto base_a = make_cvec(n, 5), base_b = make_cvec(n, 6);
    auto a1 = base_a, b1 = base_b, a2 = base_a, b2 = base_b;
    double tp = time_ms(
        [&] {
          a1 = base_a;
          b1 = base_b;
          rwave::kernels::rotate_pair(a1.data(), b1.data(), ct.data(), st.data(),
                                      xi.data(), n);
        },
        reps);
    double ts = time_ms(
        [&] {
          a2 = base_a;
          b2 = base_b;
          rwave::kernels::serial::rotate_pair(a2.data(), b2.data(), ct.data(), st.data(),
                                              xi.data(), n);
        },
        reps);
    std::printf("rotate_pair        omp %8.3f ms  serial %8.3f ms  identical: %s\n", tp,
                ts, bitwise_equal(a1, a2) && bitwise_equal(b1, b2) ? "yes" : "NO");
  }
  {
    auto base = make_cvec(n, 7);
    auto x = make_cvec(n, 8);
    auto a = base, b = base;
    double tp = time_ms([&] { a = base; rwave::kernels::axpy(a.data(), x.data(), 0.37, n); }, reps);
    double ts = time_ms([&] { b = base; rwave::kernels::serial::axpy(b.data(), x.data(), 0.37, n); }, reps);
    std::printf("axpy               omp %8.3f ms  serial %8.3f ms  identical: %s\n", tp,
                ts, bitwise_equal(a, b) ? "yes" : "NO");
  }
}

}  // namespace

int main() {
  bench_size(32);
  bench_size(64);
  return 0;
}
