#pragma once

#include <cstdint>
#include <vector>

#include "kmed/dataset.hpp"
#include "kmed/metric.hpp"
#include "kmed/potential.hpp"

namespace kmed {

// Full bookkeeping for a center set: per-sample nearest / second-nearest
// records, per-cluster statistics, and (optionally) inter-center distances.
// Distances are kept in metric units; the potential is applied at energy
// accounting only.
struct ClusterState {
  std::vector<std::uint32_t> centers;  // c(k), all distinct
  std::vector<std::uint8_t> isCenter;  // N flags
  std::vector<std::uint32_t> a1, a2;   // nearest / second-nearest cluster
  std::vector<double> d1, d2;          // distances to those centers
  std::vector<double> margin;          // psi(d2) - psi(d1)

  std::vector<std::vector<std::uint32_t>> members;  // per cluster, ascending
  std::vector<double> maxD1, maxD2;                 // D1(k), D2(k)
  std::vector<double> sumMargin;                    // N(k) * M*(k)
  std::vector<double> clusterEnergy;                // sum of psi(d1) over members

  std::vector<double> cc;  // K*K inter-center distances, empty unless requested
  bool hasCC = false;

  std::size_t numClusters() const { return centers.size(); }
  std::size_t numSamples() const { return a1.size(); }
  std::size_t clusterSize(std::size_t k) const { return members[k].size(); }
  double meanMargin(std::size_t k) const {
    return sumMargin[k] / static_cast<double>(members[k].size());
  }
  double ccAt(std::size_t k, std::size_t kk) const { return cc[k * centers.size() + kk]; }

  // Mean energy over all samples, from the cached per-cluster energies.
  double cachedEnergy() const;
};

// Mean energy of a center set, recomputed from scratch (independent of any
// cached quantities).
double total_energy(const std::vector<std::uint32_t>& centers, const Dataset& data,
                    const MetricSpace& metric, const Potential& potential);

// Materializes every ClusterState field for the given centers. Requires K >= 2
// distinct indices; fills cc iff withCC.
ClusterState rebuild_state(const std::vector<std::uint32_t>& centers, const Dataset& data,
                           const MetricSpace& metric, const Potential& potential,
                           bool withCC = false);

// argmin over members of the summed energy to all other members; ties broken
// by lowest index. Throws on an empty member set.
std::uint32_t cluster_medoid(const std::vector<std::uint32_t>& memberIdx, const Dataset& data,
                             const MetricSpace& metric, const Potential& potential);

}  // namespace kmed
