#include "kmed/state.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <unordered_set>

namespace kmed {

double ClusterState::cachedEnergy() const {
  double sum = 0.0;
  for (double e : clusterEnergy) sum += e;
  return sum / static_cast<double>(numSamples());
}

double total_energy(const std::vector<std::uint32_t>& centers, const Dataset& data,
                    const MetricSpace& metric, const Potential& potential) {
  if (centers.empty()) throw std::invalid_argument("total_energy: empty center set");
  const std::size_t n = data.size();
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto c : centers) best = std::min(best, metric.distance(data, i, c));
    sum += potential(best);
  }
  return sum / static_cast<double>(n);
}

ClusterState rebuild_state(const std::vector<std::uint32_t>& centers, const Dataset& data,
                           const MetricSpace& metric, const Potential& potential, bool withCC) {
  const std::size_t n = data.size();
  const std::size_t numK = centers.size();
  if (numK < 2) throw std::invalid_argument("rebuild_state: need K >= 2 centers");
  {
    std::unordered_set<std::uint32_t> seen(centers.begin(), centers.end());
    if (seen.size() != numK) throw std::invalid_argument("rebuild_state: duplicate center indices");
    for (const auto c : centers)
      if (c >= n) throw std::invalid_argument("rebuild_state: center index out of range");
  }

  ClusterState s;
  s.centers = centers;
  s.isCenter.assign(n, 0);
  std::vector<std::uint32_t> clusterOf(n, 0);
  for (std::size_t k = 0; k < numK; ++k) {
    s.isCenter[centers[k]] = 1;
    clusterOf[centers[k]] = static_cast<std::uint32_t>(k);
  }

  s.a1.assign(n, 0);
  s.a2.assign(n, 0);
  s.d1.assign(n, 0.0);
  s.d2.assign(n, 0.0);
  s.margin.assign(n, 0.0);

  for (std::size_t i = 0; i < n; ++i) {
    std::uint32_t b1 = 0, b2 = 0;
    double v1 = std::numeric_limits<double>::infinity();
    double v2 = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < numK; ++k) {
      const double d = metric.distance(data, i, centers[k]);
      if (d < v1) {
        v2 = v1;
        b2 = b1;
        v1 = d;
        b1 = static_cast<std::uint32_t>(k);
      } else if (d < v2) {
        v2 = d;
        b2 = static_cast<std::uint32_t>(k);
      }
    }
    if (s.isCenter[i]) {
      // A center always belongs to its own cluster, even when another center
      // is a duplicate point at distance 0.
      const std::uint32_t own = clusterOf[i];
      if (b1 != own) {
        b2 = b1;
        v2 = v1;
        b1 = own;
        v1 = 0.0;
      }
    }
    s.a1[i] = b1;
    s.a2[i] = b2;
    s.d1[i] = v1;
    s.d2[i] = v2;
    s.margin[i] = potential(v2) - potential(v1);
  }

  s.members.assign(numK, {});
  s.maxD1.assign(numK, 0.0);
  s.maxD2.assign(numK, 0.0);
  s.sumMargin.assign(numK, 0.0);
  s.clusterEnergy.assign(numK, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint32_t k = s.a1[i];
    s.members[k].push_back(static_cast<std::uint32_t>(i));
    s.maxD1[k] = std::max(s.maxD1[k], s.d1[i]);
    s.maxD2[k] = std::max(s.maxD2[k], s.d2[i]);
    s.sumMargin[k] += s.margin[i];
    s.clusterEnergy[k] += potential(s.d1[i]);
  }

  if (withCC) {
    s.hasCC = true;
    s.cc.assign(numK * numK, 0.0);
    for (std::size_t k = 0; k < numK; ++k) {
      for (std::size_t kk = k + 1; kk < numK; ++kk) {
        const double d = metric.distance(data, centers[k], centers[kk]);
        s.cc[k * numK + kk] = d;
        s.cc[kk * numK + k] = d;
      }
    }
  }
  return s;
}

std::uint32_t cluster_medoid(const std::vector<std::uint32_t>& memberIdx, const Dataset& data,
                             const MetricSpace& metric, const Potential& potential) {
  if (memberIdx.empty()) throw std::invalid_argument("cluster_medoid: empty cluster");
  std::uint32_t best = memberIdx.front();
  double bestCost = std::numeric_limits<double>::infinity();
  std::vector<std::uint32_t> sorted(memberIdx);
  std::sort(sorted.begin(), sorted.end());
  for (const auto i : sorted) {
    double cost = 0.0;
    for (const auto j : sorted)
      if (i != j) cost += potential(metric.distance(data, i, j));
    if (cost < bestCost) {
      bestCost = cost;
      best = i;
    }
  }
  return best;
}

}  // namespace kmed
