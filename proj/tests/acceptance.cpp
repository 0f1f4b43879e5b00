// End-to-end acceptance checks. Each test case prints a single pass/fail
// summary line so the suite doubles as a checklist when run directly.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "kmed/clarans.hpp"
#include "kmed/datagen.hpp"
#include "kmed/lloyd.hpp"
#include "kmed/medlloyd.hpp"
#include "kmed/pam.hpp"
#include "kmed/seeding.hpp"

using namespace kmed;

namespace {

void report(int num, const char* name, bool ok) {
  std::printf("criterion %d (%s): %s\n", num, name, ok ? "PASS" : "FAIL");
  std::fflush(stdout);
  CHECK(ok);
}

Dataset random_dense(Rng& rng, std::size_t n, std::size_t dim) {
  DenseData d;
  d.dim = dim;
  for (std::size_t i = 0; i < n * dim; ++i) d.values.push_back(draw_unit(rng) * 10.0);
  return Dataset(std::move(d));
}

Dataset random_seq(Rng& rng, std::size_t n) {
  SeqData q;
  for (std::size_t i = 0; i < n; ++i) {
    std::string s(3 + draw_below(rng, 10), 'a');
    for (auto& c : s) c = static_cast<char>('a' + draw_below(rng, 3));
    q.rows.push_back(std::move(s));
  }
  return Dataset(std::move(q));
}

std::vector<std::uint32_t> random_centers(Rng& rng, std::size_t n, std::size_t numK) {
  std::vector<std::uint32_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  for (std::size_t k = 0; k < numK; ++k) std::swap(idx[k], idx[k + draw_below(rng, n - k)]);
  idx.resize(numK);
  return idx;
}

bool close(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

Dataset desk_grid(double sigma, std::uint64_t seed) {
  GridGaussianSpec spec;
  spec.gridSide = 8;
  spec.pointsPerCluster = 20;
  spec.sigma = sigma;
  spec.rngSeed = seed;
  return gen_grid_gaussian(spec).data;
}

double clarans_lloyd_mse(const Dataset& data, std::size_t k, std::uint64_t seed) {
  const MetricSpace ms(MetricKind::Euclidean);
  const Potential psi(PotentialKind::Quadratic);
  EngineConfig cfg;
  cfg.level = 2;
  cfg.rngSeed = seed;
  const ClaransResult r = run_clarans(data, ms, psi, k, cfg);
  return run_lloyd(data, k, centers_from_indices(data, r.state.centers)).mse;
}

double kmpp_lloyd_mse(const Dataset& data, std::size_t k, std::uint64_t seed) {
  const MetricSpace ms(MetricKind::Euclidean);
  Rng rng(substream_seed(seed, 0));
  const auto idx = seed_kmpp(data, k, ms, rng);
  return run_lloyd(data, k, centers_from_indices(data, idx)).mse;
}

double init_mse(const Dataset& data, std::size_t k, const std::vector<std::uint32_t>& centers) {
  return dense_mse(data, data.dense().dim, centers_from_indices(data, centers));
}

}  // namespace

TEST_CASE("criterion 1") {
  bool ok = true;
  Rng rng(1001);
  const MetricSpace l2(MetricKind::Euclidean);
  const MetricSpace l1(MetricKind::L1);
  const MetricSpace lev(MetricKind::Levenshtein);
  const Potential quad(PotentialKind::Quadratic);
  const Potential ident(PotentialKind::Identity);
  const Potential logp(PotentialKind::Logarithmic);

  for (int inst = 0; inst < 50 && ok; ++inst) {
    const std::size_t numK = 2 + draw_below(rng, 7);
    const std::size_t n = numK + 5 + draw_below(rng, 196 - numK);
    const int mix = static_cast<int>(draw_below(rng, 4));
    const bool seq = mix == 3;
    const Dataset data = seq ? random_seq(rng, n) : random_dense(rng, n, 2);
    const MetricSpace& ms = mix == 1 ? l1 : (seq ? lev : l2);
    const Potential& psi = mix == 0 ? quad : (mix == 2 ? logp : ident);

    std::vector<ClaransResult> results;
    for (int level = -2; level <= 2; ++level) {
      EngineConfig cfg;
      cfg.level = level;
      cfg.rngSeed = 7000 + inst;
      cfg.recordProposals = true;
      results.push_back(run_clarans(data, ms, psi, numK, cfg));
    }
    const ClaransResult& ref = results.back();
    for (const auto& r : results) {
      if (r.state.centers != ref.state.centers) ok = false;
      if (r.report.proposalAccepted != ref.report.proposalAccepted) ok = false;
      if (r.report.proposalDeltas.size() != ref.report.proposalDeltas.size()) {
        ok = false;
        continue;
      }
      for (std::size_t t = 0; t < ref.report.proposalDeltas.size(); ++t)
        if (!close(r.report.proposalDeltas[t], ref.report.proposalDeltas[t], 1e-9)) ok = false;
    }
  }
  report(1, "level equivalence", ok);
}

TEST_CASE("criterion 2") {
  bool ok = true;
  Rng rng(1002);
  const MetricSpace l2(MetricKind::Euclidean);
  const MetricSpace lev(MetricKind::Levenshtein);
  const Potential quad(PotentialKind::Quadratic);
  const Potential ident(PotentialKind::Identity);

  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t numK = 2 + draw_below(rng, 5);
    const std::size_t n = numK + 2 + draw_below(rng, 58 - numK);
    const bool seq = draw_below(rng, 3) == 0;
    const Dataset data = seq ? random_seq(rng, n) : random_dense(rng, n, 3);
    const MetricSpace& ms = seq ? lev : l2;
    const Potential& psi = seq ? ident : quad;
    const auto centers = random_centers(rng, n, numK);
    const ClusterState st = rebuild_state(centers, data, ms, psi, true);
    SwapProposal prop;
    prop.kp = static_cast<std::uint32_t>(draw_below(rng, numK));
    do {
      prop.ip = static_cast<std::uint32_t>(draw_below(rng, n));
    } while (st.isCenter[prop.ip]);

    auto after = centers;
    after[prop.kp] = prop.ip;
    const double expected =
        total_energy(after, data, ms, psi) - total_energy(centers, data, ms, psi);
    for (int level = -2; level <= 2; ++level)
      if (!close(evaluate_swap(st, data, ms, psi, prop, level), expected, 1e-9)) ok = false;
  }
  report(2, "swap-evaluation oracle", ok);
}

TEST_CASE("criterion 3") {
  const Dataset data = desk_grid(0.0625, 33);
  const MetricSpace ms(MetricKind::Euclidean);
  const Potential psi(PotentialKind::Quadratic);
  std::map<int, std::uint64_t> dcs;
  for (int level = -2; level <= 2; ++level) {
    ms.counter().reset();
    EngineConfig cfg;
    cfg.level = level;
    cfg.rngSeed = 12;
    run_clarans(data, ms, psi, 64, cfg);
    dcs[level] = ms.counter().total();
  }
  const bool ok = dcs[2] < dcs[1] && dcs[1] < dcs[0] && dcs[0] <= dcs[-1] &&
                  dcs[-1] < dcs[-2] &&
                  dcs[2] * 5 <= dcs[-1];
  std::printf("  dcs: level2=%llu level1=%llu level0=%llu level-1=%llu level-2=%llu\n",
              (unsigned long long)dcs[2], (unsigned long long)dcs[1],
              (unsigned long long)dcs[0], (unsigned long long)dcs[-1],
              (unsigned long long)dcs[-2]);
  report(3, "distance-calculation ordering", ok);
}

TEST_CASE("criterion 4") {
  bool ok = true;
  bool somewhereStrict = false;
  for (const double sigma : {0.0625, 0.125, 0.25}) {
    // per-cluster variance of a 2-D isotropic Gaussian is 2 sigma^2
    const double target = 1.1 * 2.0 * sigma * sigma;
    int claransHits = 0, kmppHits = 0;
    for (int seed = 0; seed < 10; ++seed) {
      const Dataset data = desk_grid(sigma, 500 + seed);
      if (clarans_lloyd_mse(data, 64, 40 + seed) <= target) ++claransHits;
      if (kmpp_lloyd_mse(data, 64, 40 + seed) <= target) ++kmppHits;
    }
    std::printf("  sigma=%g: clarans %d/10, kmpp %d/10\n", sigma, claransHits, kmppHits);
    if (claransHits < 8) ok = false;
    if (kmppHits < claransHits) somewhereStrict = true;
  }
  report(4, "simulation-study reproduction", ok && somewhereStrict);
}

TEST_CASE("criterion 5") {
  const MetricSpace ms(MetricKind::Euclidean);
  const Potential psi(PotentialKind::Quadratic);
  double medlloydSum = 0.0, uniSum = 0.0;
  for (int seed = 0; seed < 10; ++seed) {
    const Dataset data = desk_grid(0.0625, 700 + seed);
    MedlloydConfig mc;
    mc.rngSeed = seed;
    const auto [st, rep] = run_medlloyd(data, ms, psi, 64, mc);
    medlloydSum += init_mse(data, 64, st.centers);
    Rng rng(seed);
    uniSum += init_mse(data, 64, seed_uni(data, 64, rng));
  }
  std::printf("  mean init MSE: medlloyd=%g uni=%g\n", medlloydSum / 10.0, uniSum / 10.0);
  report(5, "medlloyd beats uniform initialization twofold", medlloydSum <= 0.5 * uniSum);
}

TEST_CASE("criterion 6") {
  struct Case {
    Dataset data;
    std::size_t k;
  };
  std::vector<Case> cases;
  cases.push_back({desk_grid(0.0625, 61), 64});
  {
    SyntheticSpec s3;
    s3.kind = SyntheticSpec::Kind::Syn3;
    s3.samplesPerCenter = 10;
    s3.rngSeed = 62;
    cases.push_back({gen_synthetic(s3), 144});
  }
  {
    GridGaussianSpec g2;
    g2.gridSide = 4;
    g2.pointsPerCluster = 20;
    g2.sigma = 0.0625;
    g2.rngSeed = 63;
    cases.push_back({gen_grid_two_blob(g2).data, 32});
  }

  const MetricSpace ms(MetricKind::Euclidean);
  const Potential psi(PotentialKind::Quadratic);
  double logRatioSum = 0.0;
  bool finalOk = true;
  for (const auto& c : cases) {
    double claransInitSum = 0.0, kmppInitSum = 0.0;
    double claransFinMin = 1e300, kmppFinMin = 1e300;
    for (int seed = 0; seed < 5; ++seed) {
      EngineConfig cfg;
      cfg.level = 2;
      cfg.rngSeed = 80 + seed;
      const ClaransResult r = run_clarans(c.data, ms, psi, c.k, cfg);
      claransInitSum += init_mse(c.data, c.k, r.state.centers);
      claransFinMin = std::min(
          claransFinMin,
          run_lloyd(c.data, c.k, centers_from_indices(c.data, r.state.centers)).mse);

      Rng rng(substream_seed(80 + seed, 0));
      const auto idx = seed_kmpp(c.data, c.k, ms, rng);
      kmppInitSum += init_mse(c.data, c.k, idx);
      kmppFinMin =
          std::min(kmppFinMin, run_lloyd(c.data, c.k, centers_from_indices(c.data, idx)).mse);
    }
    logRatioSum += std::log(claransInitSum / kmppInitSum);
    if (claransFinMin > kmppFinMin) finalOk = false;
    std::printf("  k=%zu: init ratio=%.3f, min final clarans=%g kmpp=%g\n", c.k,
                claransInitSum / kmppInitSum, claransFinMin, kmppFinMin);
  }
  const double geoMeanRatio = std::exp(logRatioSum / 3.0);
  std::printf("  geometric-mean init ratio=%.3f\n", geoMeanRatio);
  report(6, "headline improvement over kmpp", geoMeanRatio <= 0.85 && finalOk);
}

TEST_CASE("criterion 7") {
  bool ok = true;
  Rng rng(1007);
  const MetricSpace ms(MetricKind::Euclidean);
  const Potential psi(PotentialKind::Quadratic);

  auto verify = [&](const ClusterState& st, const Dataset& data) {
    for (std::uint32_t kp = 0; kp < st.numClusters(); ++kp)
      for (std::uint32_t ip = 0; ip < st.numSamples(); ++ip) {
        if (st.isCenter[ip]) continue;
        if (evaluate_swap(st, data, ms, psi, {kp, ip}, 0) < 0.0) return false;
      }
    for (std::size_t k = 0; k < st.numClusters(); ++k)
      if (cluster_medoid(st.members[k], data, ms, psi) != st.centers[k]) {
        // allow exact cost ties only
        const std::uint32_t med = cluster_medoid(st.members[k], data, ms, psi);
        double cMed = 0.0, cCur = 0.0;
        for (const auto j : st.members[k]) {
          if (j != med) cMed += psi(ms.distance(data, med, j));
          if (j != st.centers[k]) cCur += psi(ms.distance(data, st.centers[k], j));
        }
        if (cMed < cCur - 1e-12) return false;
      }
    return true;
  };

  for (int inst = 0; inst < 30; ++inst) {
    const std::size_t numK = 3;
    const std::size_t n = 12 + draw_below(rng, 19);
    const Dataset data = random_dense(rng, n, 2);
    const auto init = random_centers(rng, n, numK);

    const auto [pamState, pamRep] = run_pam(data, ms, psi, init);
    if (!verify(pamState, data)) ok = false;

    EngineConfig cfg;
    cfg.rngSeed = 9000 + inst;
    cfg.initialCenters = init;
    cfg.stop = StopCriterion::rejections(12 * numK * (n - numK));
    const ClaransResult cr = run_clarans(data, ms, psi, numK, cfg);
    if (!verify(cr.state, data)) ok = false;
  }
  report(7, "terminal states are swap-minimal medoid fixed points", ok);
}

TEST_CASE("criterion 8") {
  bool sound = true;
  Rng rng(1008), sampler(1009);
  const MetricSpace ms(MetricKind::Euclidean);
  const Potential psi(PotentialKind::Quadratic);
  int accepted = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t numK = 2 + draw_below(rng, 5);
    const std::size_t n = numK + 10 + draw_below(rng, 80);
    const Dataset data = random_dense(rng, n, 2);
    const ClusterState st = rebuild_state(random_centers(rng, n, numK), data, ms, psi, true);
    SwapProposal prop;
    prop.kp = static_cast<std::uint32_t>(draw_below(rng, numK));
    do {
      prop.ip = static_cast<std::uint32_t>(draw_below(rng, n));
    } while (st.isCenter[prop.ip]);
    const Level3Result r = evaluate_swap_level3(st, data, ms, psi, prop, sampler, 2);
    if (r.accepted) {
      ++accepted;
      auto after = st.centers;
      after[prop.kp] = prop.ip;
      const double exact =
          total_energy(after, data, ms, psi) - total_energy(st.centers, data, ms, psi);
      if (!(exact < 0.0) || !close(r.delta, exact, 1e-9)) sound = false;
    }
  }

  // synthetic good-swap populations sampled at half size: rejection of a good
  // swap happens at most half the time
  Rng decider(1010);
  int rejections = 0;
  const int trials = 1000;
  for (int t = 0; t < trials; ++t) {
    std::vector<double> deltas(100);
    for (std::size_t i = 0; i < 50; ++i) deltas[i] = 1.0;
    for (std::size_t i = 50; i < 100; ++i) deltas[i] = -1.0 - 1e-9;
    auto at = [&](std::size_t i) { return deltas[i]; };
    const SubsampleDecision d = subsample_decide(100, at, 50, 0.0, decider);
    if (!d.accepted) ++rejections;
  }
  const double rate = rejections / static_cast<double>(trials);
  const double bound = 0.5 + 3.0 * std::sqrt(0.25 / trials);
  std::printf("  accepted=%d, good-swap rejection rate=%.3f (bound %.3f)\n", accepted, rate,
              bound);
  report(8, "subsampled acceptance is sound", sound && accepted > 0 && rate <= bound);
}

TEST_CASE("criterion 9") {
  bool ok = true;
  Rng rng(1011);
  SeqData q;
  for (int i = 0; i < 120; ++i) {
    std::string s(draw_below(rng, 30), 'a');
    for (auto& c : s) c = static_cast<char>('a' + draw_below(rng, 2));
    q.rows.push_back(std::move(s));
  }
  const Dataset data(std::move(q));
  const MetricSpace lev(MetricKind::Levenshtein);
  const MetricSpace nld(MetricKind::NormalizedLevenshtein);

  for (int trial = 0; trial < 10000; ++trial) {
    const std::size_t i = draw_below(rng, 120), j = draw_below(rng, 120);
    {
      const double full = lev.distance(data, i, j);
      const DistResult r = lev.distance_thresholded(data, i, j, draw_unit(rng) * 20.0);
      if (r.exact && r.value != full) ok = false;
    }
    {
      const double full = nld.distance(data, i, j);
      const DistResult r = nld.distance_thresholded(data, i, j, draw_unit(rng));
      if (r.exact && std::abs(r.value - full) > 1e-12) ok = false;
    }
  }

  // banded evaluation touches O(l * m) cells
  for (int trial = 0; trial < 2000; ++trial) {
    const std::size_t i = draw_below(rng, 120), j = draw_below(rng, 120);
    const std::uint64_t m = 1 + draw_below(rng, 8);
    std::uint64_t cells = 0;
    levenshtein_banded(data.seq().rows[i], data.seq().rows[j], m, &cells);
    const std::uint64_t l = std::max<std::uint64_t>(
        1, std::min(data.seq().rows[i].size(), data.seq().rows[j].size()) + 1);
    if (cells > 3 * l * (2 * m + 1)) ok = false;
  }
  report(9, "thresholded and banded edit distance", ok);
}

TEST_CASE("criterion 10") {
  // five 1-D points; the (first, second) center pair has a hand-computable law
  const double x[5] = {0.0, 1.0, 3.0, 7.0, 8.5};
  DenseData d;
  d.dim = 1;
  d.values.assign(x, x + 5);
  const Dataset data(std::move(d));
  const MetricSpace ms(MetricKind::Euclidean);

  std::map<std::pair<int, int>, int> counts;
  const int trials = 10000;
  for (int t = 0; t < trials; ++t) {
    Rng rng(20000 + t);
    const auto c = seed_kmpp(data, 2, ms, rng);
    counts[{c[0], c[1]}]++;
  }

  double chi2 = 0.0;
  int categories = 0;
  for (int f = 0; f < 5; ++f) {
    double total = 0.0;
    for (int s = 0; s < 5; ++s)
      if (s != f) total += (x[s] - x[f]) * (x[s] - x[f]);
    for (int s = 0; s < 5; ++s) {
      if (s == f) continue;
      const double p = 0.2 * (x[s] - x[f]) * (x[s] - x[f]) / total;
      const double expect = trials * p;
      const int got = counts.count({f, s}) ? counts[{f, s}] : 0;
      chi2 += (got - expect) * (got - expect) / expect;
      ++categories;
    }
  }
  const double df = categories - 1;
  const double threshold = df + 5.0 * std::sqrt(2.0 * df);
  std::printf("  chi2=%.2f over %d categories (threshold %.2f)\n", chi2, categories, threshold);
  report(10, "kmpp selection law", chi2 <= threshold);
}
