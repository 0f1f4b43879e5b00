#include "kmed/medlloyd.hpp"

#include <algorithm>
#include <chrono>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace kmed {

namespace {

std::vector<std::uint32_t> uniform_centers(std::size_t n, std::size_t numK, Rng& rng) {
  std::vector<std::uint32_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  for (std::size_t k = 0; k < numK; ++k) {
    const std::size_t j = k + draw_below(rng, n - k);
    std::swap(idx[k], idx[j]);
  }
  idx.resize(numK);
  return idx;
}

}  // namespace

std::pair<ClusterState, IterReport> run_medlloyd(const Dataset& data, const MetricSpace& metric,
                                                 const Potential& potential,
                                                 std::size_t numClusters,
                                                 const MedlloydConfig& config) {
  const std::size_t n = data.size();
  if (numClusters < 2) throw std::invalid_argument("run_medlloyd: K >= 2 required");
  if (n < numClusters) throw std::invalid_argument("run_medlloyd: N >= K required");
  if (config.maxIterations < 1) throw std::invalid_argument("run_medlloyd: maxIterations >= 1");

  Rng rng(substream_seed(config.rngSeed, 0));
  std::vector<std::uint32_t> centers = config.initialCenters;
  if (centers.empty()) {
    centers = uniform_centers(n, numClusters, rng);
  } else if (centers.size() != numClusters) {
    throw std::invalid_argument("run_medlloyd: initialCenters size != K");
  }

  IterReport report;
  const auto t0 = std::chrono::steady_clock::now();
  std::vector<std::uint8_t> isCenter(n, 0);

  for (std::uint64_t it = 0; it < config.maxIterations; ++it) {
    // assignment
    std::vector<std::vector<std::uint32_t>> members(numClusters);
    for (std::size_t i = 0; i < n; ++i) {
      double best = std::numeric_limits<double>::infinity();
      std::uint32_t bk = 0;
      for (std::size_t k = 0; k < numClusters; ++k) {
        const double d = metric.distance(data, i, centers[k]);
        if (d < best) {
          best = d;
          bk = static_cast<std::uint32_t>(k);
        }
      }
      members[bk].push_back(static_cast<std::uint32_t>(i));
    }

    // update
    std::vector<std::uint32_t> next(numClusters);
    std::fill(isCenter.begin(), isCenter.end(), 0);
    for (std::size_t k = 0; k < numClusters; ++k)
      if (!members[k].empty()) {
        next[k] = cluster_medoid(members[k], data, metric, potential);
        isCenter[next[k]] = 1;
      }
    for (std::size_t k = 0; k < numClusters; ++k)
      if (members[k].empty()) {
        std::uint32_t pick;
        do {
          pick = static_cast<std::uint32_t>(draw_below(rng, n));
        } while (isCenter[pick]);
        next[k] = pick;
        isCenter[pick] = 1;
      }

    report.iterations = it + 1;
    report.energyTrajectory.push_back(total_energy(next, data, metric, potential));
    const bool converged = next == centers;
    centers = std::move(next);
    if (converged) break;
  }

  report.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return {rebuild_state(centers, data, metric, potential, false), std::move(report)};
}

}  // namespace kmed
