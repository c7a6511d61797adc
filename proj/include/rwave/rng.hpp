#pragma once

#include <array>
#include <cstdint>

namespace rwave {

// Philox4x32-10 counter-based generator. Pure function of (counter, key):
// streams are order-independent, so coefficients can be drawn per lattice
// point in any order (or concurrently) with identical results.
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                        std::array<std::uint32_t, 2> key);

// Four decorrelated uniforms in (0,1) for a logical cell: seed keys the
// stream; (a, b, c) index the cell (e.g. packed lattice point, stream tag,
// draw index).
std::array<double, 4> counter_uniforms(std::uint64_t seed, std::uint32_t a,
                                       std::uint32_t b, std::uint64_t c);

// Two independent standard normals via Box-Muller on counter uniforms.
std::array<double, 2> counter_normals(std::uint64_t seed, std::uint32_t a,
                                      std::uint32_t b, std::uint64_t c);

}  // namespace rwave
