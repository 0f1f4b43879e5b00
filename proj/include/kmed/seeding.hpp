#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "kmed/clarans.hpp"
#include "kmed/rng.hpp"

namespace kmed {

// K distinct indices, uniform without replacement.
std::vector<std::uint32_t> seed_uni(const Dataset& data, std::size_t numClusters, Rng& rng);

// k-means++: first center uniform, each later center drawn with probability
// proportional to the squared distance to the nearest chosen center. If every
// remaining weight is zero (fewer than K distinct points), falls back to a
// uniform draw among the unchosen.
std::vector<std::uint32_t> seed_kmpp(const Dataset& data, std::size_t numClusters,
                                     const MetricSpace& metric, Rng& rng);

// Bradley-Fayyad: split the samples into J random partitions, run uni+lloyd on
// each, then refine each candidate center set with lloyd on the pooled JK
// candidate points; the set with the lowest pooled MSE wins. Returns K points
// (means), not sample indices. Dense data only. numThreads > 1 runs the J
// partition fits concurrently; results are identical either way.
std::vector<double> seed_bf(const Dataset& data, std::size_t numClusters, std::uint64_t rngSeed,
                            std::size_t numPartitions = 10, std::size_t numThreads = 1);

struct SeedingConfig {
  enum class Method { Uni, Kmpp, Bf, Medlloyd, Clarans, KmppThenClarans };
  Method method = Method::Kmpp;
  std::uint64_t rngSeed = 0;
  std::size_t bfPartitions = 10;
  std::size_t numThreads = 1;
  EngineConfig clarans;  // used by the clarans-based methods
};

SeedingConfig::Method seeding_method_from_name(const std::string& name);
std::string seeding_method_name(SeedingConfig::Method m);

// Either K sample indices or K points, depending on the method (bf yields
// points).
struct SeedResult {
  std::vector<std::uint32_t> indices;
  std::vector<double> points;
  bool isPoints = false;
};

SeedResult seed_pipeline(const Dataset& data, std::size_t numClusters, const MetricSpace& metric,
                         const Potential& potential, const SeedingConfig& config);

}  // namespace kmed
