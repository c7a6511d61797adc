#include "rwave/rng.hpp"

#include <cmath>

namespace rwave {

namespace {

constexpr std::uint32_t kPhiloxM0 = 0xD2511F53u;
constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

inline void philox_round(std::array<std::uint32_t, 4>& ctr,
                         const std::array<std::uint32_t, 2>& key) {
  std::uint64_t p0 = static_cast<std::uint64_t>(kPhiloxM0) * ctr[0];
  std::uint64_t p1 = static_cast<std::uint64_t>(kPhiloxM1) * ctr[2];
  std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32);
  std::uint32_t lo0 = static_cast<std::uint32_t>(p0);
  std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32);
  std::uint32_t lo1 = static_cast<std::uint32_t>(p1);
  ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
}

}  // namespace

std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                        std::array<std::uint32_t, 2> key) {
  for (int round = 0; round < 10; ++round) {
    philox_round(counter, key);
    key[0] += kWeyl0;
    key[1] += kWeyl1;
  }
  return counter;
}

std::array<double, 4> counter_uniforms(std::uint64_t seed, std::uint32_t a,
                                       std::uint32_t b, std::uint64_t c) {
  std::array<std::uint32_t, 4> ctr = {a, b, static_cast<std::uint32_t>(c),
                                      static_cast<std::uint32_t>(c >> 32)};
  std::array<std::uint32_t, 2> key = {static_cast<std::uint32_t>(seed),
                                      static_cast<std::uint32_t>(seed >> 32)};
  auto r = philox4x32(ctr, key);
  // (0,1) open interval: offset by half an ulp of the 2^-32 lattice.
  auto u = [](std::uint32_t v) { return (static_cast<double>(v) + 0.5) * 0x1p-32; };
  return {u(r[0]), u(r[1]), u(r[2]), u(r[3])};
}

std::array<double, 2> counter_normals(std::uint64_t seed, std::uint32_t a,
                                      std::uint32_t b, std::uint64_t c) {
  auto u = counter_uniforms(seed, a, b, c);
  double rad = std::sqrt(-2.0 * std::log(u[0]));
  double ang = 2.0 * M_PI * u[1];
  return {rad * std::cos(ang), rad * std::sin(ang)};
}

}  // namespace rwave
