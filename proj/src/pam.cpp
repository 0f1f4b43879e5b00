#include "kmed/pam.hpp"

#include <chrono>
#include <stdexcept>

#include "kmed/clarans.hpp"

namespace kmed {

std::pair<ClusterState, PamReport> run_pam(const Dataset& data, const MetricSpace& metric,
                                           const Potential& potential,
                                           const std::vector<std::uint32_t>& initialCenters) {
  const std::size_t n = data.size();
  const std::size_t numK = initialCenters.size();
  if (numK < 2) throw std::invalid_argument("run_pam: K >= 2 required");

  ClusterState state = rebuild_state(initialCenters, data, metric, potential, false);
  PamReport report;
  const auto t0 = std::chrono::steady_clock::now();
  double energy = state.cachedEnergy();
  report.energyTrajectory.push_back(energy);

  while (true) {
    report.sweeps++;
    double bestDelta = 0.0;
    SwapProposal bestProp;
    bool found = false;
    for (std::uint32_t kp = 0; kp < numK; ++kp) {
      for (std::uint32_t ip = 0; ip < n; ++ip) {
        if (state.isCenter[ip]) continue;
        const SwapProposal prop{kp, ip};
        const double delta = evaluate_swap(state, data, metric, potential, prop, 0);
        if (delta < bestDelta) {  // strict: first (kp, ip) wins ties
          bestDelta = delta;
          bestProp = prop;
          found = true;
        }
      }
    }
    if (!found) break;
    implement_swap(state, data, metric, potential, bestProp, 0);
    energy += bestDelta;
    report.energyTrajectory.push_back(energy);
    report.swapsImplemented++;
  }

  report.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return {std::move(state), std::move(report)};
}

}  // namespace kmed
