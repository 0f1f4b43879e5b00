#pragma once

#include <atomic>
#include <cstdint>
#include <string>

#include "kmed/dataset.hpp"

namespace kmed {

enum class MetricKind { Euclidean, L1, Linf, Levenshtein, NormalizedLevenshtein };

MetricKind metric_from_name(const std::string& name);
std::string metric_name(MetricKind kind);

// Per-run accumulators; totals must be exact under concurrent increment.
struct DistanceCounter {
  std::atomic<std::uint64_t> fullEvaluations{0};
  std::atomic<std::uint64_t> abortedEvaluations{0};
  std::atomic<std::uint64_t> levCellUpdates{0};

  void reset() {
    fullEvaluations = 0;
    abortedEvaluations = 0;
    levCellUpdates = 0;
  }
  std::uint64_t total() const { return fullEvaluations + abortedEvaluations; }
};

// Result of a threshold-aborted evaluation: either the exact distance, or the
// statement that the distance is at least the threshold.
struct DistResult {
  double value = 0.0;
  bool exact = true;
};

class MetricSpace {
 public:
  explicit MetricSpace(MetricKind kind) : kind_(kind) {}

  MetricKind kind() const { return kind_; }
  DistanceCounter& counter() const { return counter_; }

  double distance(const Dataset& data, std::size_t i, std::size_t j) const;

  // Returns Exact(v) whenever v < threshold; may return AtLeast(threshold)
  // otherwise. Levenshtein explores only a band of half-width ~threshold.
  DistResult distance_thresholded(const Dataset& data, std::size_t i, std::size_t j,
                                  double threshold) const;

 private:
  MetricKind kind_;
  mutable DistanceCounter counter_;
};

// Raw metric kernels, exposed for tests.
double dense_distance(MetricKind kind, const double* a, const double* b, std::size_t dim);
double sparse_distance(MetricKind kind, const SparseVec& a, const SparseVec& b);
std::uint64_t levenshtein(const std::string& a, const std::string& b);

// Banded Levenshtein: returns exact value if lev(a,b) <= limit, else limit+1.
// cellUpdates, when non-null, accumulates the number of DP cells touched.
std::uint64_t levenshtein_banded(const std::string& a, const std::string& b,
                                 std::uint64_t limit, std::uint64_t* cellUpdates = nullptr);

}  // namespace kmed
