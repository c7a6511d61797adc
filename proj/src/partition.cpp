#include "rwave/partition.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>

namespace rwave {

double UnitPartition::bump(const std::array<double, 3>& xi) {
  double r2 = (xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2]) / (kRho * kRho);
  if (r2 >= 1.0) return 0.0;
  return std::exp(-1.0 / (1.0 - r2));
}

double UnitPartition::psi(const std::array<double, 3>& xi) {
  double num = bump(xi);
  if (num == 0.0) return 0.0;
  // Only the integer translates within distance rho of xi contribute.
  double den = 0.0;
  for (int kx = static_cast<int>(std::ceil(xi[0] - 1.0)); kx <= static_cast<int>(std::floor(xi[0] + 1.0)); ++kx)
    for (int ky = static_cast<int>(std::ceil(xi[1] - 1.0)); ky <= static_cast<int>(std::floor(xi[1] + 1.0)); ++ky)
      for (int kz = static_cast<int>(std::ceil(xi[2] - 1.0)); kz <= static_cast<int>(std::floor(xi[2] + 1.0)); ++kz)
        den += bump({xi[0] - kx, xi[1] - ky, xi[2] - kz});
  return num / den;
}

double UnitPartition::psi_shifted(const std::array<double, 3>& xi,
                                  const std::array<int, 3>& k) {
  return psi({xi[0] - k[0], xi[1] - k[1], xi[2] - k[2]});
}

PartitionTable::PartitionTable(const Grid& grid) {
  offsets_.reserve(grid.size() + 1);
  offsets_.push_back(0);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    auto xi = grid.xi(i);
    for (int kx = static_cast<int>(std::ceil(xi[0] - 1.0)); kx <= static_cast<int>(std::floor(xi[0] + 1.0)); ++kx)
      for (int ky = static_cast<int>(std::ceil(xi[1] - 1.0)); ky <= static_cast<int>(std::floor(xi[1] + 1.0)); ++ky)
        for (int kz = static_cast<int>(std::ceil(xi[2] - 1.0)); kz <= static_cast<int>(std::floor(xi[2] + 1.0)); ++kz) {
          double w = UnitPartition::psi_shifted(xi, {kx, ky, kz});
          if (w != 0.0)
            entries_.push_back({static_cast<std::int16_t>(kx), static_cast<std::int16_t>(ky),
                                static_cast<std::int16_t>(kz), w});
        }
    offsets_.push_back(static_cast<std::uint32_t>(entries_.size()));
  }
}

const PartitionTable& PartitionTable::for_grid(const GridPtr& grid) {
  static std::mutex mutex;
  static std::map<std::pair<int, int>, std::unique_ptr<PartitionTable>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto key = std::make_pair(grid->n(), grid->box_multiple());
  auto it = cache.find(key);
  if (it == cache.end())
    it = cache.emplace(key, std::unique_ptr<PartitionTable>(new PartitionTable(*grid))).first;
  return *it->second;
}

SpectralField unit_projection(const SpectralField& field, const std::array<int, 3>& k) {
  int bound = field.grid->k_max();
  if (std::abs(k[0]) > bound || std::abs(k[1]) > bound || std::abs(k[2]) > bound)
    throw std::out_of_range("unit_projection: cell outside retained range");
  SpectralField out = field;
  out.is_real = field.is_real && k[0] == 0 && k[1] == 0 && k[2] == 0;
  for (std::size_t i = 0; i < out.coef.size(); ++i)
    out.coef[i] *= UnitPartition::psi_shifted(field.grid->xi(i), k);
  return out;
}

SpectralField unit_projection_sum(const SpectralField& field, int bound) {
  SpectralField out = field;
  out.is_real = field.is_real;
  for (std::size_t i = 0; i < out.coef.size(); ++i) {
    auto xi = field.grid->xi(i);
    double total = 0.0;
    for (int kx = static_cast<int>(std::ceil(xi[0] - 1.0)); kx <= static_cast<int>(std::floor(xi[0] + 1.0)); ++kx)
      for (int ky = static_cast<int>(std::ceil(xi[1] - 1.0)); ky <= static_cast<int>(std::floor(xi[1] + 1.0)); ++ky)
        for (int kz = static_cast<int>(std::ceil(xi[2] - 1.0)); kz <= static_cast<int>(std::floor(xi[2] + 1.0)); ++kz) {
          if (bound >= 0 && (std::abs(kx) > bound || std::abs(ky) > bound || std::abs(kz) > bound))
            continue;
          total += UnitPartition::psi_shifted(xi, {kx, ky, kz});
        }
    out.coef[i] *= total;
  }
  return out;
}

double lp_cutoff(double r) {
  // Smooth bridge between 1 on [0,1] and 0 on [2,inf).
  if (r <= 1.0) return 1.0;
  if (r >= 2.0) return 0.0;
  auto h = [](double x) { return x > 0.0 ? std::exp(-1.0 / x) : 0.0; };
  return h(2.0 - r) / (h(2.0 - r) + h(r - 1.0));
}

SpectralField lp_projection(const SpectralField& field, int N, bool fattened) {
  if (N < 1 || (N & (N - 1)) != 0)
    throw std::invalid_argument("lp_projection: N must be a dyadic integer >= 1");
  double Nd = static_cast<double>(N);
  auto symbol = [Nd, N, fattened](double r) {
    if (!fattened)
      return N == 1 ? lp_cutoff(r) : lp_cutoff(r / Nd) - lp_cutoff(2.0 * r / Nd);
    // Wider block, identically 1 on the support of the plain one.
    return N == 1 ? lp_cutoff(r / 4.0) : lp_cutoff(r / (4.0 * Nd)) - lp_cutoff(8.0 * r / Nd);
  };
  return apply_radial_multiplier(field, symbol);
}

}  // namespace rwave
