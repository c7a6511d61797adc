#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstring>
#include <random>

#include "rwave/kernels.hpp"

using rwave::kernels::cplx;

namespace {

std::vector<cplx> cvec(std::size_t n, unsigned seed) {
  std::mt19937 gen(seed);
  std::normal_distribution<double> d;
  std::vector<cplx> v(n);
  for (auto& c : v) c = cplx(d(gen), d(gen));
  return v;
}

std::vector<double> rvec(std::size_t n, unsigned seed) {
  std::mt19937 gen(seed);
  std::normal_distribution<double> d;
  std::vector<double> v(n);
  for (auto& x : v) x = d(gen);
  return v;
}

bool same_bits(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  return std::memcmp(a.data(), b.data(), a.size() * sizeof(cplx)) == 0;
}

}  // namespace

TEST_CASE("parallel kernels are bitwise identical to the serial reference") {
  const std::size_t n = 32768;
  auto sym = rvec(n, 1);
  auto xi = rvec(n, 2);
  for (auto& x : xi) x = std::fabs(x);
  std::vector<double> ct(n), st(n);
  for (std::size_t i = 0; i < n; ++i) {
    ct[i] = std::cos(0.3 * xi[i]);
    st[i] = xi[i] == 0.0 ? 0.3 : std::sin(0.3 * xi[i]) / xi[i];
  }

  auto a0 = cvec(n, 3), b0 = cvec(n, 4), x0 = cvec(n, 5);

  auto a = a0, b = a0;
  rwave::kernels::apply_real_symbol(a.data(), sym.data(), n);
  rwave::kernels::serial::apply_real_symbol(b.data(), sym.data(), n);
  CHECK(same_bits(a, b));

  for (double p : {4.0, 3.5, 4.7}) {
    auto u = rvec(n, 6), v = u;
    rwave::kernels::pointwise_power(u.data(), n, p);
    rwave::kernels::serial::pointwise_power(v.data(), n, p);
    CHECK(std::memcmp(u.data(), v.data(), n * sizeof(double)) == 0);
  }

  auto pa = a0, pb = b0, qa = a0, qb = b0;
  rwave::kernels::rotate_pair(pa.data(), pb.data(), ct.data(), st.data(), xi.data(), n);
  rwave::kernels::serial::rotate_pair(qa.data(), qb.data(), ct.data(), st.data(),
                                      xi.data(), n);
  CHECK(same_bits(pa, qa));
  CHECK(same_bits(pb, qb));

  auto ya = a0, yb = a0;
  rwave::kernels::axpy(ya.data(), x0.data(), 0.37, n);
  rwave::kernels::serial::axpy(yb.data(), x0.data(), 0.37, n);
  CHECK(same_bits(ya, yb));
}

TEST_CASE("pointwise power values") {
  std::vector<double> u = {0.0, 1.0, -2.0, 0.5};
  auto v = u;
  rwave::kernels::pointwise_power(u.data(), u.size(), 4.0);
  CHECK(u[0] == 0.0);
  CHECK(u[1] == doctest::Approx(1.0));
  CHECK(u[2] == doctest::Approx(-16.0));
  CHECK(u[3] == doctest::Approx(0.0625));

  // the p = 4 fast path agrees with the pow formula
  for (std::size_t i = 0; i < u.size(); ++i) {
    double expect = v[i] == 0.0 ? 0.0 : std::pow(std::fabs(v[i]), 3.0) * v[i];
    CHECK(u[i] == doctest::Approx(expect).epsilon(1e-14));
  }

  // p = 3.5: u = -2 -> -|2|^{2.5} * ... = -2^{3.5}
  std::vector<double> w = {-2.0};
  rwave::kernels::pointwise_power(w.data(), 1, 3.5);
  CHECK(w[0] == doctest::Approx(-std::pow(2.0, 3.5)).epsilon(1e-14));

  // odd symmetry
  std::vector<double> up = {0.3, 1.7, -0.2};
  std::vector<double> un = {-0.3, -1.7, 0.2};
  rwave::kernels::pointwise_power(up.data(), 3, 3.7);
  rwave::kernels::pointwise_power(un.data(), 3, 3.7);
  for (int i = 0; i < 3; ++i) CHECK(up[i] == doctest::Approx(-un[i]).epsilon(1e-15));
}

TEST_CASE("rotate_pair is the exact one-step wave group") {
  const std::size_t n = 64;
  auto a = cvec(n, 9), b = cvec(n, 10);
  auto a0 = a, b0 = b;
  auto xi = rvec(n, 11);
  for (auto& x : xi) x = std::fabs(x) * 3.0;
  xi[0] = 0.0;  // cover the zero mode
  double t = 0.17;
  std::vector<double> ct(n), st(n);
  for (std::size_t i = 0; i < n; ++i) {
    ct[i] = std::cos(t * xi[i]);
    st[i] = xi[i] == 0.0 ? t : std::sin(t * xi[i]) / xi[i];
  }
  rwave::kernels::rotate_pair(a.data(), b.data(), ct.data(), st.data(), xi.data(), n);
  for (std::size_t i = 0; i < n; ++i) {
    cplx ea = ct[i] * a0[i] + st[i] * b0[i];
    cplx eb = -xi[i] * xi[i] * st[i] * a0[i] + ct[i] * b0[i];
    CHECK(std::abs(a[i] - ea) < 1e-15);
    CHECK(std::abs(b[i] - eb) < 1e-15);
  }

  // energy of each mode is preserved: |xi|^2 |a|^2 + |b|^2 (zero mode: b only)
  for (std::size_t i = 1; i < n; ++i) {
    double e0 = xi[i] * xi[i] * std::norm(a0[i]) + std::norm(b0[i]);
    double e1 = xi[i] * xi[i] * std::norm(a[i]) + std::norm(b[i]);
    CHECK(e1 == doctest::Approx(e0).epsilon(1e-12));
  }
}
