#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "kmed/rng.hpp"
#include "kmed/state.hpp"

namespace kmed {

// Replace the center of cluster kp with non-center sample ip.
struct SwapProposal {
  std::uint32_t kp = 0;
  std::uint32_t ip = 0;
};

struct StopCriterion {
  enum class Kind { ConsecutiveRejections, MaxSwaps, TimeLimit };
  Kind kind = Kind::ConsecutiveRejections;
  std::uint64_t consecutiveRejections = 0;  // 0 -> default K^2
  std::uint64_t maxSwaps = 0;
  double seconds = 0.0;

  static StopCriterion rejections(std::uint64_t nr) {
    StopCriterion s;
    s.kind = Kind::ConsecutiveRejections;
    s.consecutiveRejections = nr;
    return s;
  }
  static StopCriterion swaps(std::uint64_t n) {
    StopCriterion s;
    s.kind = Kind::MaxSwaps;
    s.maxSwaps = n;
    return s;
  }
  static StopCriterion timeLimit(double seconds) {
    StopCriterion s;
    s.kind = Kind::TimeLimit;
    s.seconds = seconds;
    return s;
  }
};

// level: -2 (stateless), -1 (nearest records), 0 (second-nearest records),
// 1 (cluster radius bounds), 2 (inter-center distances), 3 (subsampled early
// abort on top of level 2). Levels -2..2 are decision-identical.
struct EngineConfig {
  int level = 2;
  std::uint64_t rngSeed = 0;
  StopCriterion stop;
  std::uint64_t level3MinSampleFactor = 30;
  std::vector<std::uint32_t> initialCenters;  // empty -> uniform random
  bool recordProposals = false;
};

struct ClaransReport {
  std::vector<double> energyTrajectory;  // initial energy, then after each accepted swap
  std::uint64_t proposalsEvaluated = 0;
  std::uint64_t swapsAccepted = 0;
  std::uint64_t swapsRejected = 0;
  std::vector<std::uint64_t> rejectionRunLengths;  // consecutive rejections before each accept
  std::vector<double> proposalDeltas;              // filled iff recordProposals
  std::vector<std::uint8_t> proposalAccepted;      // filled iff recordProposals
  std::uint64_t dcsInit = 0, dcsEval = 0, dcsUpdate = 0;
  double seconds = 0.0;
};

struct ClaransResult {
  ClusterState state;
  ClaransReport report;
};

// Uniform proposal: kp over clusters, ip over non-center samples.
SwapProposal propose(const ClusterState& state, Rng& rng);

// Exact mean energy change of implementing the proposal; identical value at
// every level in {-2..2}. The level controls which cached quantities are used
// to prune distance computations.
double evaluate_swap(const ClusterState& state, const Dataset& data, const MetricSpace& metric,
                     const Potential& potential, SwapProposal prop, int level);

// Commits an accepted swap, repairing all state at the given level (0, 1 or 2).
void implement_swap(ClusterState& state, const Dataset& data, const MetricSpace& metric,
                    const Potential& potential, SwapProposal prop, int level);

struct Level3Result {
  bool accepted = false;
  bool exactEvaluated = false;
  double delta = 0.0;  // exact mean energy change, valid iff exactEvaluated
};

// Subsampled evaluation (level 3): may reject good proposals, but any accepted
// proposal has confirmed exact negative delta.
Level3Result evaluate_swap_level3(const ClusterState& state, const Dataset& data,
                                  const MetricSpace& metric, const Potential& potential,
                                  SwapProposal prop, Rng& rng,
                                  std::uint64_t minSampleFactor = 30);

// Doubling subsample accept/reject schema over an abstract delta population,
// exposed for direct statistical testing. delta(i) is the energy change of
// population element i; elimContribution is the exact contribution of
// elements outside the population.
struct SubsampleDecision {
  bool accepted = false;
  bool exactEvaluated = false;
  double deltaSum = 0.0;  // sum over population + elimContribution, valid iff exactEvaluated
};
SubsampleDecision subsample_decide(std::size_t poolSize,
                                   const std::function<double(std::size_t)>& delta,
                                   std::size_t startSize, double elimContribution, Rng& rng);

ClaransResult run_clarans(const Dataset& data, const MetricSpace& metric,
                          const Potential& potential, std::size_t numClusters,
                          const EngineConfig& config);

}  // namespace kmed
