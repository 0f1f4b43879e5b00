#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "kmed/state.hpp"

namespace kmed {

struct PamReport {
  std::vector<double> energyTrajectory;  // initial energy, then after each sweep's swap
  std::uint64_t sweeps = 0;
  std::uint64_t swapsImplemented = 0;
  double seconds = 0.0;
};

// Exhaustive best-swap descent: each sweep evaluates all K(N-K) single swaps
// exactly and implements the best strictly-improving one; terminates when no
// swap reduces the energy. Ties among equal-best swaps go to the lowest
// (cluster, sample) pair. Intended for small instances and oracle use.
std::pair<ClusterState, PamReport> run_pam(const Dataset& data, const MetricSpace& metric,
                                           const Potential& potential,
                                           const std::vector<std::uint32_t>& initialCenters);

}  // namespace kmed
