#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "kmed/rng.hpp"
#include "kmed/state.hpp"

namespace kmed {

struct MedlloydConfig {
  std::uint64_t rngSeed = 0;
  std::uint64_t maxIterations = 1000;
  std::vector<std::uint32_t> initialCenters;  // empty -> uniform random
};

struct IterReport {
  std::vector<double> energyTrajectory;  // one entry per completed iteration
  std::uint64_t iterations = 0;
  double seconds = 0.0;
};

// Voronoi iteration with medoid updates: alternate nearest-center assignment
// and per-cluster medoid recomputation until the center set stops changing.
// An emptied cluster is re-seeded uniformly from the non-center samples.
std::pair<ClusterState, IterReport> run_medlloyd(const Dataset& data, const MetricSpace& metric,
                                                 const Potential& potential,
                                                 std::size_t numClusters,
                                                 const MedlloydConfig& config);

}  // namespace kmed
