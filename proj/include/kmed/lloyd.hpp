#pragma once

#include <cstdint>
#include <vector>

#include "kmed/dataset.hpp"

namespace kmed {

struct LloydConfig {
  std::uint64_t maxIterations = 10000;
};

struct LloydResult {
  std::size_t dim = 0;
  std::vector<double> centers;  // K x dim, row-major
  std::vector<std::uint32_t> assignments;
  double mse = 0.0;
  std::uint64_t iterations = 0;
  std::vector<double> mseTrajectory;  // one entry per iteration, non-increasing
};

// Centers as points for index-initialized runs.
std::vector<double> centers_from_indices(const Dataset& data,
                                         const std::vector<std::uint32_t>& indices);

// K-means MSE of a fixed center set, no refinement.
double dense_mse(const Dataset& data, std::size_t dim, const std::vector<double>& centers);

// Classic K-means alternation on dense data, run until the assignment vector
// stops changing (or maxIterations). An emptied cluster is re-seeded at the
// sample farthest from its nearest center. Summation order is fixed, so runs
// are bit-reproducible.
LloydResult run_lloyd(const Dataset& data, std::size_t numClusters,
                      const std::vector<double>& initialCenters, const LloydConfig& config = {});

}  // namespace kmed
