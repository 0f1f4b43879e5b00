#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <limits>
#include <numeric>
#include <vector>

#include "kmed/rng.hpp"
#include "kmed/state.hpp"

using namespace kmed;

namespace {

Dataset random_dense(Rng& rng, std::size_t n, std::size_t dim) {
  DenseData d;
  d.dim = dim;
  for (std::size_t i = 0; i < n * dim; ++i) d.values.push_back(draw_unit(rng) * 10.0);
  return Dataset(std::move(d));
}

std::vector<std::uint32_t> random_centers(Rng& rng, std::size_t n, std::size_t numK) {
  std::vector<std::uint32_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  for (std::size_t k = 0; k < numK; ++k) std::swap(idx[k], idx[k + draw_below(rng, n - k)]);
  idx.resize(numK);
  return idx;
}

}  // namespace

TEST_CASE("total_energy: hand instance") {
  DenseData d;
  d.dim = 1;
  d.values = {0.0, 1.0, 2.0, 3.0};
  const Dataset data(std::move(d));
  const MetricSpace ms(MetricKind::Euclidean);
  const Potential psi(PotentialKind::Quadratic);
  // centers at 0 and 2: nearest sq distances 0, 1, 0, 1
  CHECK(total_energy({0, 2}, data, ms, psi) == doctest::Approx(0.5));
  const Potential ident(PotentialKind::Identity);
  CHECK(total_energy({0, 2}, data, ms, ident) == doctest::Approx(0.5));
}

TEST_CASE("rebuild_state matches an independent nearest-two scan") {
  Rng rng(101);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 20 + draw_below(rng, 60);
    const std::size_t numK = 2 + draw_below(rng, 6);
    const Dataset data = random_dense(rng, n, 2);
    const auto centers = random_centers(rng, n, numK);
    const MetricSpace ms(MetricKind::Euclidean);
    const Potential psi(PotentialKind::Quadratic);
    const ClusterState st = rebuild_state(centers, data, ms, psi, true);

    double energySum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      // brute force: distances to all centers, two smallest
      std::vector<std::pair<double, std::size_t>> ds;
      for (std::size_t k = 0; k < numK; ++k)
        ds.emplace_back(ms.distance(data, i, centers[k]), k);
      std::stable_sort(ds.begin(), ds.end(),
                       [](const auto& x, const auto& y) { return x.first < y.first; });
      CHECK(st.d1[i] == ds[0].first);
      CHECK(st.a1[i] == ds[0].second);
      CHECK(st.d2[i] == ds[1].first);
      CHECK(st.margin[i] == psi(st.d2[i]) - psi(st.d1[i]));
      energySum += psi(st.d1[i]);
    }
    CHECK(st.cachedEnergy() ==
          doctest::Approx(energySum / static_cast<double>(n)).epsilon(1e-12));
    CHECK(st.cachedEnergy() ==
          doctest::Approx(total_energy(centers, data, ms, psi)).epsilon(1e-12));

    // per-cluster stats
    for (std::size_t k = 0; k < numK; ++k) {
      CHECK(std::is_sorted(st.members[k].begin(), st.members[k].end()));
      double d1max = 0.0, d2max = 0.0, msum = 0.0;
      for (const auto i : st.members[k]) {
        CHECK(st.a1[i] == k);
        d1max = std::max(d1max, st.d1[i]);
        d2max = std::max(d2max, st.d2[i]);
        msum += st.margin[i];
      }
      CHECK(st.maxD1[k] == d1max);
      CHECK(st.maxD2[k] == d2max);
      CHECK(st.sumMargin[k] == doctest::Approx(msum).epsilon(1e-12));
      CHECK(st.clusterSize(k) >= 1);  // each center sits in its own cluster
    }

    // inter-center matrix
    for (std::size_t k = 0; k < numK; ++k)
      for (std::size_t kk = 0; kk < numK; ++kk)
        CHECK(st.ccAt(k, kk) == ms.distance(data, centers[k], centers[kk]));
  }
}

TEST_CASE("rebuild_state: duplicate-point centers keep their own cluster") {
  DenseData d;
  d.dim = 1;
  d.values = {1.0, 1.0, 5.0, 1.1, 4.9};
  const Dataset data(std::move(d));
  const MetricSpace ms(MetricKind::Euclidean);
  const Potential psi(PotentialKind::Quadratic);
  // samples 0 and 1 coincide; both are centers
  const ClusterState st = rebuild_state({0, 1, 2}, data, ms, psi);
  CHECK(st.a1[0] == 0);
  CHECK(st.a1[1] == 1);
  CHECK(st.d1[0] == 0.0);
  CHECK(st.d1[1] == 0.0);
}

TEST_CASE("rebuild_state input validation") {
  DenseData d;
  d.dim = 1;
  d.values = {0.0, 1.0, 2.0};
  const Dataset data(std::move(d));
  const MetricSpace ms(MetricKind::Euclidean);
  const Potential psi(PotentialKind::Quadratic);
  CHECK_THROWS(rebuild_state({0}, data, ms, psi));       // K < 2
  CHECK_THROWS(rebuild_state({0, 0}, data, ms, psi));    // duplicate index
  CHECK_THROWS(rebuild_state({0, 9}, data, ms, psi));    // out of range
}

TEST_CASE("cluster_medoid: hand values and tie-breaking") {
  DenseData d;
  d.dim = 1;
  d.values = {0.0, 1.0, 2.0, 10.0};
  const Dataset data(std::move(d));
  const MetricSpace ms(MetricKind::Euclidean);
  const Potential psi(PotentialKind::Quadratic);
  CHECK(cluster_medoid({0, 1, 2}, data, ms, psi) == 1);
  // symmetric pair: both members have equal cost, the lower index wins
  CHECK(cluster_medoid({0, 1}, data, ms, psi) == 0);
  CHECK(cluster_medoid({3}, data, ms, psi) == 3);
  CHECK_THROWS(cluster_medoid({}, data, ms, psi));
}

TEST_CASE("cluster_medoid minimizes the summed energy") {
  Rng rng(103);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 5 + draw_below(rng, 15);
    const Dataset data = random_dense(rng, n, 2);
    const MetricSpace ms(MetricKind::L1);
    const Potential psi(PotentialKind::Identity);
    std::vector<std::uint32_t> members(n);
    std::iota(members.begin(), members.end(), 0);
    const std::uint32_t med = cluster_medoid(members, data, ms, psi);
    auto cost = [&](std::uint32_t c) {
      double s = 0.0;
      for (const auto j : members)
        if (j != c) s += psi(ms.distance(data, c, j));
      return s;
    };
    const double best = cost(med);
    for (const auto c : members) CHECK(best <= cost(c) + 1e-12);
  }
}
