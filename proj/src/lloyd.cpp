#include "kmed/lloyd.hpp"

#include <algorithm>
#include <cstring>
#include <limits>
#include <stdexcept>

namespace kmed {

namespace {

double sq_dist(const double* a, const double* b, std::size_t dim) {
  double s = 0.0;
  for (std::size_t t = 0; t < dim; ++t) {
    const double v = a[t] - b[t];
    s += v * v;
  }
  return s;
}

}  // namespace

std::vector<double> centers_from_indices(const Dataset& data,
                                         const std::vector<std::uint32_t>& indices) {
  const DenseData& d = data.dense();
  std::vector<double> out;
  out.reserve(indices.size() * d.dim);
  for (const auto i : indices) out.insert(out.end(), d.row(i), d.row(i) + d.dim);
  return out;
}

double dense_mse(const Dataset& data, std::size_t dim, const std::vector<double>& centers) {
  const DenseData& d = data.dense();
  if (dim != d.dim) throw std::invalid_argument("dense_mse: dimension mismatch");
  const std::size_t numK = centers.size() / dim;
  double sum = 0.0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < numK; ++k)
      best = std::min(best, sq_dist(d.row(i), centers.data() + k * dim, dim));
    sum += best;
  }
  return sum / static_cast<double>(d.size());
}

LloydResult run_lloyd(const Dataset& data, std::size_t numClusters,
                      const std::vector<double>& initialCenters, const LloydConfig& config) {
  if (data.kind() != DataKind::Dense)
    throw std::invalid_argument("run_lloyd: dense vector data required");
  const DenseData& d = data.dense();
  const std::size_t n = d.size();
  const std::size_t dim = d.dim;
  if (numClusters < 1) throw std::invalid_argument("run_lloyd: K >= 1 required");
  if (initialCenters.size() != numClusters * dim)
    throw std::invalid_argument("run_lloyd: initialCenters size != K * dim");
  if (config.maxIterations < 1) throw std::invalid_argument("run_lloyd: maxIterations >= 1");

  LloydResult res;
  res.dim = dim;
  res.centers = initialCenters;
  res.assignments.assign(n, 0);
  std::vector<std::uint32_t> prev(n, std::numeric_limits<std::uint32_t>::max());
  std::vector<double> sums(numClusters * dim, 0.0);
  std::vector<std::uint64_t> counts(numClusters, 0);
  std::vector<double> nearestSq(n, 0.0);

  for (std::uint64_t it = 0; it < config.maxIterations; ++it) {
    // assignment
    double mseSum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double best = std::numeric_limits<double>::infinity();
      std::uint32_t bk = 0;
      for (std::size_t k = 0; k < numClusters; ++k) {
        const double s = sq_dist(d.row(i), res.centers.data() + k * dim, dim);
        if (s < best) {
          best = s;
          bk = static_cast<std::uint32_t>(k);
        }
      }
      res.assignments[i] = bk;
      nearestSq[i] = best;
      mseSum += best;
    }
    res.mse = mseSum / static_cast<double>(n);
    res.mseTrajectory.push_back(res.mse);
    res.iterations = it + 1;
    if (res.assignments == prev) break;
    prev = res.assignments;

    // update: means in sample order
    std::fill(sums.begin(), sums.end(), 0.0);
    std::fill(counts.begin(), counts.end(), 0);
    for (std::size_t i = 0; i < n; ++i) {
      const std::uint32_t k = res.assignments[i];
      const double* x = d.row(i);
      double* s = sums.data() + static_cast<std::size_t>(k) * dim;
      for (std::size_t t = 0; t < dim; ++t) s[t] += x[t];
      counts[k]++;
    }
    for (std::size_t k = 0; k < numClusters; ++k) {
      if (counts[k] == 0) continue;
      const double inv = 1.0 / static_cast<double>(counts[k]);
      for (std::size_t t = 0; t < dim; ++t) res.centers[k * dim + t] = sums[k * dim + t] * inv;
    }
    for (std::size_t k = 0; k < numClusters; ++k) {
      if (counts[k] > 0) continue;
      // re-seed at the point farthest from its nearest center
      std::size_t far = 0;
      double farSq = -1.0;
      for (std::size_t i = 0; i < n; ++i)
        if (nearestSq[i] > farSq) {
          farSq = nearestSq[i];
          far = i;
        }
      std::memcpy(res.centers.data() + k * dim, d.row(far), dim * sizeof(double));
      nearestSq[far] = -1.0;  // next empty cluster takes a different point
    }
  }
  return res;
}

}  // namespace kmed
