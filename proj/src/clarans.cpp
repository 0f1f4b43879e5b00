#include "kmed/clarans.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace kmed {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Nearest2 {
  std::uint32_t a1 = 0, a2 = 0;
  double d1 = kInf, d2 = kInf;
};

// Nearest and second-nearest center of sample i, scanning all K centers in
// ascending cluster order (strict < keeps the lowest index on ties). A sample
// that is itself a center is forced into its own cluster.
Nearest2 scan_nearest2(const Dataset& data, const MetricSpace& metric,
                       const std::vector<std::uint32_t>& centers, std::size_t i) {
  Nearest2 r;
  std::int64_t own = -1;
  for (std::size_t k = 0; k < centers.size(); ++k) {
    if (centers[k] == i) {
      own = static_cast<std::int64_t>(k);
      continue;
    }
    const double d = metric.distance(data, i, centers[k]);
    if (d < r.d1) {
      r.d2 = r.d1;
      r.a2 = r.a1;
      r.d1 = d;
      r.a1 = static_cast<std::uint32_t>(k);
    } else if (d < r.d2) {
      r.d2 = d;
      r.a2 = static_cast<std::uint32_t>(k);
    }
  }
  if (own >= 0) {
    r.d2 = r.d1;
    r.a2 = r.a1;
    r.d1 = 0.0;
    r.a1 = static_cast<std::uint32_t>(own);
  }
  return r;
}

double sum_buckets(const std::vector<double>& bucket) {
  double total = 0.0;
  for (double b : bucket) total += b;
  return total;
}

// Raw energy-change sum (before the 1/N factor) at level -2: no cached state,
// all center distances recomputed per sample.
double eval_sum_m2(const ClusterState& st, const Dataset& data, const MetricSpace& metric,
                   const Potential& psi, SwapProposal prop) {
  const std::size_t n = st.numSamples();
  const std::size_t numK = st.numClusters();
  std::vector<double> bucket(numK, 0.0);
  std::vector<double> dk(numK);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < numK; ++k) dk[k] = metric.distance(data, i, st.centers[k]);
    std::uint32_t b1 = 0;
    double v1, v2;
    if (st.isCenter[i]) {
      std::uint32_t own = 0;
      for (std::size_t k = 0; k < numK; ++k)
        if (st.centers[k] == i) own = static_cast<std::uint32_t>(k);
      b1 = own;
      v1 = 0.0;
      v2 = kInf;
      for (std::size_t k = 0; k < numK; ++k)
        if (k != own) v2 = std::min(v2, dk[k]);
    } else {
      v1 = kInf;
      for (std::size_t k = 0; k < numK; ++k)
        if (dk[k] < v1) {
          v1 = dk[k];
          b1 = static_cast<std::uint32_t>(k);
        }
      v2 = kInf;
      for (std::size_t k = 0; k < numK; ++k)
        if (k != b1) v2 = std::min(v2, dk[k]);
    }
    const double dip = metric.distance(data, i, prop.ip);
    double delta = 0.0;
    if (b1 == prop.kp) {
      delta = psi(std::min(v2, dip)) - psi(v1);
    } else if (dip < v1) {
      delta = psi(dip) - psi(v1);
    }
    bucket[b1] += delta;
  }
  return sum_buckets(bucket);
}

struct PendingNearest {
  std::vector<std::uint32_t> a1;
  std::vector<double> d1;
};

// Level -1: nearest records maintained. The evaluation also determines each
// sample's post-swap nearest, so an accepted swap commits with no further
// distance calculations.
double eval_sum_m1(const ClusterState& st, const Dataset& data, const MetricSpace& metric,
                   const Potential& psi, SwapProposal prop, PendingNearest* pend) {
  const std::size_t n = st.numSamples();
  const std::size_t numK = st.numClusters();
  std::vector<double> bucket(numK, 0.0);
  if (pend) {
    pend->a1.resize(n);
    pend->d1.resize(n);
  }
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint32_t k1 = st.a1[i];
    const double v1 = st.d1[i];
    double delta = 0.0;
    if (k1 == prop.kp) {
      double m2 = kInf;
      std::uint32_t am2 = 0;
      for (std::size_t k = 0; k < numK; ++k) {
        if (k == prop.kp) continue;
        const double d = metric.distance(data, i, st.centers[k]);
        if (d < m2) {
          m2 = d;
          am2 = static_cast<std::uint32_t>(k);
        }
      }
      const double dip = metric.distance(data, i, prop.ip);
      delta = psi(std::min(m2, dip)) - psi(v1);
      if (pend) {
        if (dip < m2) {
          pend->a1[i] = prop.kp;
          pend->d1[i] = dip;
        } else {
          pend->a1[i] = am2;
          pend->d1[i] = m2;
        }
      }
    } else {
      const double dip = metric.distance(data, i, prop.ip);
      if (dip < v1) {
        delta = psi(dip) - psi(v1);
        if (pend) {
          pend->a1[i] = prop.kp;
          pend->d1[i] = dip;
        }
      } else if (pend) {
        pend->a1[i] = k1;
        pend->d1[i] = v1;
      }
    }
    bucket[k1] += delta;
  }
  return sum_buckets(bucket);
}

double eval_sum_0(const ClusterState& st, const Dataset& data, const MetricSpace& metric,
                  const Potential& psi, SwapProposal prop) {
  const std::size_t numK = st.numClusters();
  std::vector<double> bucket(numK, 0.0);
  for (std::size_t k = 0; k < numK; ++k) {
    for (const auto i : st.members[k]) {
      const double d = metric.distance(data, i, prop.ip);
      if (k == prop.kp) {
        bucket[k] += d >= st.d2[i] ? st.margin[i] : psi(d) - psi(st.d1[i]);
      } else if (d < st.d1[i]) {
        bucket[k] += psi(d) - psi(st.d1[i]);
      }
    }
  }
  return sum_buckets(bucket);
}

// Contribution of cluster kp using the D1+D2 tail test, then per-sample tests.
double eval_kp_cluster(const ClusterState& st, const Dataset& data, const MetricSpace& metric,
                       const Potential& psi, SwapProposal prop, double dPP, bool* eliminated) {
  const std::uint32_t kp = prop.kp;
  if (dPP >= st.maxD1[kp] + st.maxD2[kp]) {
    if (eliminated) *eliminated = true;
    return st.sumMargin[kp];
  }
  if (eliminated) *eliminated = false;
  double sum = 0.0;
  for (const auto i : st.members[kp]) {
    if (dPP >= st.d1[i] + st.d2[i]) {
      sum += st.margin[i];
    } else {
      const double d = metric.distance(data, i, prop.ip);
      sum += d >= st.d2[i] ? st.margin[i] : psi(d) - psi(st.d1[i]);
    }
  }
  return sum;
}

double eval_other_cluster(const ClusterState& st, const Dataset& data, const MetricSpace& metric,
                          const Potential& psi, SwapProposal prop, std::size_t k, double dck) {
  double sum = 0.0;
  for (const auto i : st.members[k]) {
    if (dck < 2.0 * st.d1[i]) {
      const double d = metric.distance(data, i, prop.ip);
      if (d < st.d1[i]) sum += psi(d) - psi(st.d1[i]);
    }
  }
  return sum;
}

// Level 1/2 evaluation. At level 2 the inter-center matrix prunes some
// center-to-proposal distances. When elimOut/dcOut are given (level-3 use)
// the per-cluster elimination flags and computed center distances are
// recorded.
double eval_sum_12(const ClusterState& st, const Dataset& data, const MetricSpace& metric,
                   const Potential& psi, SwapProposal prop, int level,
                   std::vector<std::uint8_t>* elimOut = nullptr,
                   std::vector<double>* dcOut = nullptr, double* dppOut = nullptr) {
  const std::size_t numK = st.numClusters();
  const std::uint32_t kp = prop.kp;
  std::vector<double> bucket(numK, 0.0);
  if (elimOut) elimOut->assign(numK, 0);
  if (dcOut) dcOut->assign(numK, kInf);

  std::vector<double> dc;
  if (level == 1) {
    dc.resize(numK);
    for (std::size_t k = 0; k < numK; ++k)
      dc[k] = metric.distance(data, prop.ip, st.centers[k]);
  }
  const double dPP =
      level == 1 ? dc[kp] : metric.distance(data, prop.ip, st.centers[kp]);
  if (dppOut) *dppOut = dPP;

  bool kpElim = false;
  bucket[kp] = eval_kp_cluster(st, data, metric, psi, prop, dPP, &kpElim);
  if (elimOut && kpElim) (*elimOut)[kp] = 1;

  const std::uint32_t a1p = st.a1[prop.ip];
  const double d1p = st.d1[prop.ip];
  for (std::size_t k = 0; k < numK; ++k) {
    if (k == kp) continue;
    if (level >= 2 && st.ccAt(a1p, k) - d1p >= 2.0 * st.maxD1[k]) {
      if (elimOut) (*elimOut)[k] = 1;
      continue;
    }
    const double dck = level == 1 ? dc[k] : metric.distance(data, prop.ip, st.centers[k]);
    if (dcOut) (*dcOut)[k] = dck;
    if (dck >= 2.0 * st.maxD1[k]) {
      if (elimOut) (*elimOut)[k] = 1;
      continue;
    }
    bucket[k] = eval_other_cluster(st, data, metric, psi, prop, k, dck);
  }
  return sum_buckets(bucket);
}

// Per-sample energy change, given cached center-to-proposal distances; used by
// the level-3 subsample loop.
double sample_delta(const ClusterState& st, const Dataset& data, const MetricSpace& metric,
                    const Potential& psi, SwapProposal prop, double dPP,
                    const std::vector<double>& dck, std::size_t i) {
  const std::uint32_t k = st.a1[i];
  if (k == prop.kp) {
    if (dPP >= st.d1[i] + st.d2[i]) return st.margin[i];
    const double d = metric.distance(data, i, prop.ip);
    return d >= st.d2[i] ? st.margin[i] : psi(d) - psi(st.d1[i]);
  }
  if (dck[k] >= 2.0 * st.d1[i]) return 0.0;
  const double d = metric.distance(data, i, prop.ip);
  return d < st.d1[i] ? psi(d) - psi(st.d1[i]) : 0.0;
}

// Recompute per-cluster statistics from the per-sample records. No distance
// calculations.
void stats_pass(ClusterState& st, const Potential& psi) {
  const std::size_t n = st.numSamples();
  const std::size_t numK = st.numClusters();
  st.members.assign(numK, {});
  st.maxD1.assign(numK, 0.0);
  st.maxD2.assign(numK, 0.0);
  st.sumMargin.assign(numK, 0.0);
  st.clusterEnergy.assign(numK, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    st.margin[i] = psi(st.d2[i]) - psi(st.d1[i]);
    const std::uint32_t k = st.a1[i];
    st.members[k].push_back(static_cast<std::uint32_t>(i));
    st.maxD1[k] = std::max(st.maxD1[k], st.d1[i]);
    st.maxD2[k] = std::max(st.maxD2[k], st.d2[i]);
    st.sumMargin[k] += st.margin[i];
    st.clusterEnergy[k] += psi(st.d1[i]);
  }
}

void apply_candidate(ClusterState& st, std::size_t i, std::uint32_t kp, double d) {
  if (d < st.d1[i]) {
    st.a2[i] = st.a1[i];
    st.d2[i] = st.d1[i];
    st.a1[i] = kp;
    st.d1[i] = d;
  } else if (d < st.d2[i]) {
    st.a2[i] = kp;
    st.d2[i] = d;
  }
}

void set_from_scratch(ClusterState& st, const Dataset& data, const MetricSpace& metric,
                      std::size_t i) {
  const Nearest2 r = scan_nearest2(data, metric, st.centers, i);
  st.a1[i] = r.a1;
  st.a2[i] = r.a2;
  st.d1[i] = r.d1;
  st.d2[i] = r.d2;
}

void implement_0(ClusterState& st, const Dataset& data, const MetricSpace& metric,
                 SwapProposal prop) {
  const std::size_t n = st.numSamples();
  const std::uint32_t oc = st.centers[prop.kp];
  st.centers[prop.kp] = prop.ip;
  st.isCenter[oc] = 0;
  st.isCenter[prop.ip] = 1;
  for (std::size_t i = 0; i < n; ++i) {
    if (st.a1[i] == prop.kp || st.a2[i] == prop.kp) {
      set_from_scratch(st, data, metric, i);
    } else {
      const double d = metric.distance(data, i, prop.ip);
      apply_candidate(st, i, prop.kp, d);
    }
  }
}

// Clusters holding a sample whose second-nearest is kp must always be
// rescanned: the triangle-equality argument that justifies the distance skip
// is only airtight in exact arithmetic, and a one-ulp rounding of d1+d2 can
// otherwise leave a stale record pointing at the removed center.
std::vector<std::uint8_t> clusters_with_a2(const ClusterState& st, std::uint32_t kp) {
  std::vector<std::uint8_t> flag(st.numClusters(), 0);
  for (std::size_t i = 0; i < st.numSamples(); ++i)
    if (st.a2[i] == kp) flag[st.a1[i]] = 1;
  return flag;
}

void implement_1(ClusterState& st, const Dataset& data, const MetricSpace& metric,
                 SwapProposal prop) {
  const std::size_t numK = st.numClusters();
  const std::uint32_t kp = prop.kp;
  const std::uint32_t oc = st.centers[kp];
  const std::vector<std::uint8_t> mustScan = clusters_with_a2(st, kp);

  // d_c(k): distance from center k to the nearer of the old and new kp center.
  std::vector<double> dcMin(numK, 0.0);
  for (std::size_t k = 0; k < numK; ++k) {
    if (k == kp) continue;
    const double dOld = metric.distance(data, oc, st.centers[k]);
    const double dNew = metric.distance(data, prop.ip, st.centers[k]);
    dcMin[k] = std::min(dOld, dNew);
  }

  const std::vector<std::vector<std::uint32_t>> oldMembers = st.members;
  st.centers[kp] = prop.ip;
  st.isCenter[oc] = 0;
  st.isCenter[prop.ip] = 1;

  for (const auto i : oldMembers[kp]) set_from_scratch(st, data, metric, i);

  for (std::size_t k = 0; k < numK; ++k) {
    if (k == kp) continue;
    if (!mustScan[k] && dcMin[k] > st.maxD1[k] + st.maxD2[k]) continue;
    for (const auto i : oldMembers[k]) {
      if (st.a2[i] != kp && dcMin[k] > st.d1[i] + st.d2[i]) continue;
      if (st.a2[i] == kp) {
        set_from_scratch(st, data, metric, i);
      } else {
        const double d = metric.distance(data, i, prop.ip);
        apply_candidate(st, i, kp, d);
      }
    }
  }
}

// Nearest-two search seeded with two known center distances; the inter-center
// matrix supplies lower bounds that let provably-too-far centers be skipped
// without a distance calculation.
void warmstart(ClusterState& st, const Dataset& data, const MetricSpace& metric, std::size_t i,
               std::uint32_t s1, double v1, std::uint32_t s2, double v2,
               const std::vector<double>& ccAfterKp, std::uint32_t kp) {
  const std::size_t numK = st.numClusters();
  if (v2 < v1 || (v2 == v1 && s2 < s1)) {
    std::swap(s1, s2);
    std::swap(v1, v2);
  }
  std::uint32_t b1 = s1, b2 = s2;
  double best1 = v1, best2 = v2;
  const double dToNewKp = s1 == kp ? v1 : v2;  // one known slot is always kp
  for (std::size_t k = 0; k < numK; ++k) {
    if (k == s1 || k == s2) continue;
    const double lb = ccAfterKp[k] - dToNewKp;
    if (lb >= best2) continue;
    const double d = metric.distance(data, i, st.centers[k]);
    if (d < best1) {
      best2 = best1;
      b2 = b1;
      best1 = d;
      b1 = static_cast<std::uint32_t>(k);
    } else if (d < best2) {
      best2 = d;
      b2 = static_cast<std::uint32_t>(k);
    }
  }
  st.a1[i] = b1;
  st.a2[i] = b2;
  st.d1[i] = best1;
  st.d2[i] = best2;
  if (st.isCenter[i] && st.centers[st.a1[i]] != i) {
    // duplicate-point tie pushed a center out of its own cluster; repair
    for (std::size_t k = 0; k < numK; ++k)
      if (st.centers[k] == i) {
        st.a2[i] = st.a1[i];
        st.d2[i] = st.d1[i];
        st.a1[i] = static_cast<std::uint32_t>(k);
        st.d1[i] = 0.0;
      }
  }
}

void implement_2(ClusterState& st, const Dataset& data, const MetricSpace& metric,
                 SwapProposal prop) {
  const std::size_t numK = st.numClusters();
  const std::uint32_t kp = prop.kp;
  const std::uint32_t oc = st.centers[kp];
  const std::vector<std::uint8_t> mustScan = clusters_with_a2(st, kp);

  std::vector<double> ccNew(numK, 0.0);
  for (std::size_t k = 0; k < numK; ++k) {
    if (k == kp) continue;
    ccNew[k] = metric.distance(data, prop.ip, st.centers[k]);
  }
  std::vector<double> dcMin(numK, 0.0);
  for (std::size_t k = 0; k < numK; ++k) {
    if (k == kp) continue;
    dcMin[k] = std::min(st.ccAt(kp, k), ccNew[k]);
  }

  const std::vector<std::vector<std::uint32_t>> oldMembers = st.members;
  st.centers[kp] = prop.ip;
  st.isCenter[oc] = 0;
  st.isCenter[prop.ip] = 1;

  for (const auto i : oldMembers[kp]) {
    const double d = i == prop.ip ? 0.0 : metric.distance(data, i, prop.ip);
    warmstart(st, data, metric, i, kp, d, st.a2[i], st.d2[i], ccNew, kp);
  }

  for (std::size_t k = 0; k < numK; ++k) {
    if (k == kp) continue;
    if (!mustScan[k] && dcMin[k] > st.maxD1[k] + st.maxD2[k]) continue;
    for (const auto i : oldMembers[k]) {
      if (st.a2[i] != kp && dcMin[k] > st.d1[i] + st.d2[i]) continue;
      const double d = metric.distance(data, i, prop.ip);
      if (st.a2[i] == kp) {
        warmstart(st, data, metric, i, kp, d, st.a1[i], st.d1[i], ccNew, kp);
      } else {
        apply_candidate(st, i, kp, d);
      }
    }
  }

  for (std::size_t k = 0; k < numK; ++k) {
    st.cc[kp * numK + k] = ccNew[k];
    st.cc[k * numK + kp] = ccNew[k];
  }
  st.cc[kp * numK + kp] = 0.0;
}

}  // namespace

SwapProposal propose(const ClusterState& state, Rng& rng) {
  const std::size_t n = state.numSamples();
  const std::size_t numK = state.numClusters();
  if (n <= numK) throw std::invalid_argument("propose: no non-center samples");
  SwapProposal prop;
  prop.kp = static_cast<std::uint32_t>(draw_below(rng, numK));
  std::uint64_t j = draw_below(rng, n - numK);
  std::vector<std::uint32_t> sorted(state.centers);
  std::sort(sorted.begin(), sorted.end());
  std::uint64_t ip = j;
  for (const auto c : sorted)
    if (c <= ip) ++ip;
  prop.ip = static_cast<std::uint32_t>(ip);
  return prop;
}

double evaluate_swap(const ClusterState& state, const Dataset& data, const MetricSpace& metric,
                     const Potential& potential, SwapProposal prop, int level) {
  const double n = static_cast<double>(state.numSamples());
  double sum = 0.0;
  switch (level) {
    case -2: sum = eval_sum_m2(state, data, metric, potential, prop); break;
    case -1: sum = eval_sum_m1(state, data, metric, potential, prop, nullptr); break;
    case 0: sum = eval_sum_0(state, data, metric, potential, prop); break;
    case 1: sum = eval_sum_12(state, data, metric, potential, prop, 1); break;
    case 2: sum = eval_sum_12(state, data, metric, potential, prop, 2); break;
    default: throw std::invalid_argument("evaluate_swap: level must be in -2..2");
  }
  return sum / n;
}

void implement_swap(ClusterState& state, const Dataset& data, const MetricSpace& metric,
                    const Potential& potential, SwapProposal prop, int level) {
  switch (level) {
    case 0: implement_0(state, data, metric, prop); break;
    case 1: implement_1(state, data, metric, prop); break;
    case 2: implement_2(state, data, metric, prop); break;
    default: throw std::invalid_argument("implement_swap: level must be in 0..2");
  }
  stats_pass(state, potential);
}

SubsampleDecision subsample_decide(std::size_t poolSize,
                                   const std::function<double(std::size_t)>& delta,
                                   std::size_t startSize, double elimContribution, Rng& rng) {
  SubsampleDecision out;
  if (poolSize == 0) {
    out.exactEvaluated = true;
    out.deltaSum = elimContribution;
    out.accepted = out.deltaSum < 0.0;
    return out;
  }
  std::vector<std::size_t> pos(poolSize);
  std::iota(pos.begin(), pos.end(), 0);
  std::size_t shuffled = 0;
  double sampleSum = 0.0;
  auto extend = [&](std::size_t target) {
    for (; shuffled < target; ++shuffled) {
      const std::size_t j = shuffled + draw_below(rng, poolSize - shuffled);
      std::swap(pos[shuffled], pos[j]);
      sampleSum += delta(pos[shuffled]);
    }
  };
  std::size_t nS = std::min(startSize, poolSize);
  extend(nS);
  while (true) {
    if (nS == poolSize) {
      out.exactEvaluated = true;
      out.deltaSum = sampleSum + elimContribution;
      out.accepted = out.deltaSum < 0.0;
      return out;
    }
    const double est = sampleSum / static_cast<double>(nS) +
                       elimContribution / static_cast<double>(poolSize);
    if (est >= 0.0) {
      out.accepted = false;
      out.exactEvaluated = false;
      return out;
    }
    nS = std::min(poolSize, 2 * nS);
    extend(nS);
  }
}

Level3Result evaluate_swap_level3(const ClusterState& state, const Dataset& data,
                                  const MetricSpace& metric, const Potential& potential,
                                  SwapProposal prop, Rng& rng, std::uint64_t minSampleFactor) {
  if (!state.hasCC) throw std::invalid_argument("evaluate_swap_level3: level-2 state required");
  const std::size_t numK = state.numClusters();
  std::vector<std::uint8_t> elim;
  std::vector<double> dck;
  double dPP = 0.0;

  // Cluster-elimination pass only: mirror the level-2 tests without entering
  // the element-wise loops.
  elim.assign(numK, 0);
  dck.assign(numK, kInf);
  dPP = metric.distance(data, prop.ip, state.centers[prop.kp]);
  double elimContribution = 0.0;
  if (dPP >= state.maxD1[prop.kp] + state.maxD2[prop.kp]) {
    elim[prop.kp] = 1;
    elimContribution = state.sumMargin[prop.kp];
  }
  const std::uint32_t a1p = state.a1[prop.ip];
  const double d1p = state.d1[prop.ip];
  for (std::size_t k = 0; k < numK; ++k) {
    if (k == prop.kp) continue;
    if (state.ccAt(a1p, k) - d1p >= 2.0 * state.maxD1[k]) {
      elim[k] = 1;
      continue;
    }
    dck[k] = metric.distance(data, prop.ip, state.centers[k]);
    if (dck[k] >= 2.0 * state.maxD1[k]) elim[k] = 1;
  }

  std::vector<std::uint32_t> pool;
  std::size_t kTilde = 0;
  for (std::size_t k = 0; k < numK; ++k) {
    if (elim[k]) continue;
    ++kTilde;
    pool.insert(pool.end(), state.members[k].begin(), state.members[k].end());
  }

  const std::size_t startSize = static_cast<std::size_t>(minSampleFactor) * std::max<std::size_t>(kTilde, 1);
  auto deltaAt = [&](std::size_t p) {
    return sample_delta(state, data, metric, potential, prop, dPP, dck, pool[p]);
  };
  const SubsampleDecision dec =
      subsample_decide(pool.size(), deltaAt, startSize, elimContribution, rng);

  Level3Result r;
  r.accepted = dec.accepted;
  r.exactEvaluated = dec.exactEvaluated;
  if (dec.exactEvaluated) r.delta = dec.deltaSum / static_cast<double>(state.numSamples());
  return r;
}

ClaransResult run_clarans(const Dataset& data, const MetricSpace& metric,
                          const Potential& potential, std::size_t numClusters,
                          const EngineConfig& config) {
  const std::size_t n = data.size();
  if (numClusters < 2) throw std::invalid_argument("run_clarans: K >= 2 required");
  if (n <= numClusters) throw std::invalid_argument("run_clarans: N > K required");
  if (config.level < -2 || config.level > 3)
    throw std::invalid_argument("run_clarans: level must be in -2..3");

  Rng rngProposal(substream_seed(config.rngSeed, 0));
  Rng rngSampling(substream_seed(config.rngSeed, 1));

  std::vector<std::uint32_t> centers = config.initialCenters;
  if (centers.empty()) {
    std::vector<std::uint32_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    for (std::size_t k = 0; k < numClusters; ++k) {
      const std::size_t j = k + draw_below(rngProposal, n - k);
      std::swap(idx[k], idx[j]);
    }
    centers.assign(idx.begin(), idx.begin() + numClusters);
  } else if (centers.size() != numClusters) {
    throw std::invalid_argument("run_clarans: initialCenters size != K");
  }

  ClaransReport report;
  const auto t0 = std::chrono::steady_clock::now();
  std::uint64_t mark = metric.counter().total();
  auto phase = [&](std::uint64_t& sink) {
    const std::uint64_t now = metric.counter().total();
    sink += now - mark;
    mark = now;
  };

  const int level = config.level;
  const int structLevel = level >= 2 ? 2 : level;  // level 3 runs on level-2 state
  ClusterState st;
  double energy = 0.0;
  PendingNearest pend;

  if (level >= -1) {
    st = rebuild_state(centers, data, metric, potential, level >= 2);
    energy = st.cachedEnergy();
  } else {
    st.centers = centers;
    st.isCenter.assign(n, 0);
    for (const auto c : centers) st.isCenter[c] = 1;
    st.a1.assign(n, 0);  // sized so propose() and numSamples() work
    energy = total_energy(centers, data, metric, potential);
  }
  phase(report.dcsInit);
  report.energyTrajectory.push_back(energy);

  const std::uint64_t nr = config.stop.consecutiveRejections > 0
                               ? config.stop.consecutiveRejections
                               : static_cast<std::uint64_t>(numClusters) * numClusters;
  std::uint64_t currentRun = 0;

  while (true) {
    if (config.stop.kind == StopCriterion::Kind::TimeLimit) {
      const double elapsed =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      if (elapsed >= config.stop.seconds) break;
    }
    const SwapProposal prop = propose(st, rngProposal);

    bool accepted = false;
    double delta = 0.0;
    bool haveDelta = true;
    if (level <= 2) {
      double sum = 0.0;
      switch (level) {
        case -2: sum = eval_sum_m2(st, data, metric, potential, prop); break;
        case -1: sum = eval_sum_m1(st, data, metric, potential, prop, &pend); break;
        case 0: sum = eval_sum_0(st, data, metric, potential, prop); break;
        case 1: sum = eval_sum_12(st, data, metric, potential, prop, 1); break;
        case 2: sum = eval_sum_12(st, data, metric, potential, prop, 2); break;
      }
      delta = sum / static_cast<double>(n);
      accepted = delta < 0.0;
    } else {
      const Level3Result r =
          evaluate_swap_level3(st, data, metric, potential, prop, rngSampling,
                               config.level3MinSampleFactor);
      accepted = r.accepted;
      delta = r.delta;
      haveDelta = r.exactEvaluated;
    }
    phase(report.dcsEval);
    report.proposalsEvaluated++;
    if (config.recordProposals) {
      report.proposalDeltas.push_back(haveDelta ? delta
                                                : std::numeric_limits<double>::quiet_NaN());
      report.proposalAccepted.push_back(accepted ? 1 : 0);
    }

    if (accepted) {
      if (level >= 0) {
        implement_swap(st, data, metric, potential, prop, structLevel);
      } else if (level == -1) {
        st.a1 = pend.a1;
        st.d1 = pend.d1;
        st.isCenter[st.centers[prop.kp]] = 0;
        st.isCenter[prop.ip] = 1;
        st.centers[prop.kp] = prop.ip;
      } else {
        st.isCenter[st.centers[prop.kp]] = 0;
        st.isCenter[prop.ip] = 1;
        st.centers[prop.kp] = prop.ip;
      }
      phase(report.dcsUpdate);
      energy += delta;
      report.energyTrajectory.push_back(energy);
      report.rejectionRunLengths.push_back(currentRun);
      currentRun = 0;
      report.swapsAccepted++;
      if (config.stop.kind == StopCriterion::Kind::MaxSwaps &&
          report.swapsAccepted >= config.stop.maxSwaps)
        break;
    } else {
      report.swapsRejected++;
      ++currentRun;
      if (config.stop.kind == StopCriterion::Kind::ConsecutiveRejections && currentRun >= nr)
        break;
    }
  }

  report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  ClaransResult result;
  if (level <= -1) {
    result.state = rebuild_state(st.centers, data, metric, potential, false);
  } else {
    result.state = std::move(st);
  }
  result.report = std::move(report);
  return result;
}

}  // namespace kmed
