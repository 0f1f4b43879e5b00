#include "kmed/seeding.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "kmed/lloyd.hpp"
#include "kmed/medlloyd.hpp"

namespace kmed {

std::vector<std::uint32_t> seed_uni(const Dataset& data, std::size_t numClusters, Rng& rng) {
  const std::size_t n = data.size();
  if (n < numClusters) throw std::invalid_argument("seed_uni: N >= K required");
  std::vector<std::uint32_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  for (std::size_t k = 0; k < numClusters; ++k) {
    const std::size_t j = k + draw_below(rng, n - k);
    std::swap(idx[k], idx[j]);
  }
  idx.resize(numClusters);
  return idx;
}

std::vector<std::uint32_t> seed_kmpp(const Dataset& data, std::size_t numClusters,
                                     const MetricSpace& metric, Rng& rng) {
  const std::size_t n = data.size();
  if (n < numClusters) throw std::invalid_argument("seed_kmpp: N >= K required");
  std::vector<std::uint32_t> centers;
  centers.reserve(numClusters);
  std::vector<std::uint8_t> chosen(n, 0);
  std::vector<double> dmin(n, std::numeric_limits<double>::infinity());

  const std::uint32_t first = static_cast<std::uint32_t>(draw_below(rng, n));
  centers.push_back(first);
  chosen[first] = 1;

  while (centers.size() < numClusters) {
    const std::uint32_t last = centers.back();
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      dmin[i] = std::min(dmin[i], metric.distance(data, i, last));
      total += dmin[i] * dmin[i];
    }
    std::uint32_t pick = 0;
    if (total > 0.0) {
      const double r = draw_unit(rng) * total;
      double acc = 0.0;
      std::uint32_t lastPositive = 0;
      bool havePositive = false;
      bool hit = false;
      for (std::size_t i = 0; i < n; ++i) {
        const double w = dmin[i] * dmin[i];
        if (w > 0.0) {
          lastPositive = static_cast<std::uint32_t>(i);
          havePositive = true;
        }
        acc += w;
        if (r < acc) {
          pick = static_cast<std::uint32_t>(i);
          hit = true;
          break;
        }
      }
      if (!hit) {
        // r landed on the rounding tail; take the last weighted point
        if (!havePositive) throw std::logic_error("seed_kmpp: inconsistent weights");
        pick = lastPositive;
      }
    } else {
      // every remaining point coincides with a chosen center
      std::vector<std::uint32_t> rest;
      for (std::size_t i = 0; i < n; ++i)
        if (!chosen[i]) rest.push_back(static_cast<std::uint32_t>(i));
      pick = rest[draw_below(rng, rest.size())];
    }
    centers.push_back(pick);
    chosen[pick] = 1;
  }
  return centers;
}

std::vector<double> seed_bf(const Dataset& data, std::size_t numClusters, std::uint64_t rngSeed,
                            std::size_t numPartitions, std::size_t numThreads) {
  if (data.kind() != DataKind::Dense)
    throw std::invalid_argument("seed_bf: dense vector data required");
  if (numPartitions < 2) throw std::invalid_argument("seed_bf: J >= 2 required");
  const DenseData& d = data.dense();
  const std::size_t n = d.size();
  if (n < numPartitions * numClusters)
    throw std::invalid_argument("seed_bf: N >= J * K required");

  Rng splitRng(substream_seed(rngSeed, 0));
  std::vector<std::uint32_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const std::size_t j = i + draw_below(splitRng, n - i);
    std::swap(order[i], order[j]);
  }

  // contiguous chunks of the shuffled order; the remainder goes to the first
  // partitions
  std::vector<std::vector<std::uint32_t>> parts(numPartitions);
  const std::size_t base = n / numPartitions;
  std::size_t extra = n % numPartitions;
  std::size_t at = 0;
  for (std::size_t j = 0; j < numPartitions; ++j) {
    const std::size_t len = base + (j < extra ? 1 : 0);
    parts[j].assign(order.begin() + at, order.begin() + at + len);
    at += len;
  }

  std::vector<std::vector<double>> candidates(numPartitions);
  auto fit_partition = [&](std::size_t j) {
    DenseData sub;
    sub.dim = d.dim;
    for (const auto i : parts[j]) sub.values.insert(sub.values.end(), d.row(i), d.row(i) + d.dim);
    const Dataset subset(std::move(sub));
    Rng rng(substream_seed(rngSeed, 1 + j));
    const auto idx = seed_uni(subset, numClusters, rng);
    candidates[j] = run_lloyd(subset, numClusters, centers_from_indices(subset, idx)).centers;
  };
  if (numThreads > 1) {
    std::vector<std::thread> pool;
    std::atomic<std::size_t> next{0};
    for (std::size_t t = 0; t < std::min(numThreads, numPartitions); ++t)
      pool.emplace_back([&] {
        for (std::size_t j = next++; j < numPartitions; j = next++) fit_partition(j);
      });
    for (auto& th : pool) th.join();
  } else {
    for (std::size_t j = 0; j < numPartitions; ++j) fit_partition(j);
  }

  DenseData pooled;
  pooled.dim = d.dim;
  for (const auto& c : candidates) pooled.values.insert(pooled.values.end(), c.begin(), c.end());
  const Dataset superset(std::move(pooled));

  std::vector<double> best;
  double bestMse = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < numPartitions; ++j) {
    const LloydResult r = run_lloyd(superset, numClusters, candidates[j]);
    if (r.mse < bestMse) {
      bestMse = r.mse;
      best = r.centers;
    }
  }
  return best;
}

SeedingConfig::Method seeding_method_from_name(const std::string& name) {
  if (name == "uni") return SeedingConfig::Method::Uni;
  if (name == "kmpp") return SeedingConfig::Method::Kmpp;
  if (name == "bf") return SeedingConfig::Method::Bf;
  if (name == "medlloyd") return SeedingConfig::Method::Medlloyd;
  if (name == "clarans") return SeedingConfig::Method::Clarans;
  if (name == "kmpp-then-clarans") return SeedingConfig::Method::KmppThenClarans;
  throw std::invalid_argument("unknown seeding method: " + name);
}

std::string seeding_method_name(SeedingConfig::Method m) {
  switch (m) {
    case SeedingConfig::Method::Uni: return "uni";
    case SeedingConfig::Method::Kmpp: return "kmpp";
    case SeedingConfig::Method::Bf: return "bf";
    case SeedingConfig::Method::Medlloyd: return "medlloyd";
    case SeedingConfig::Method::Clarans: return "clarans";
    case SeedingConfig::Method::KmppThenClarans: return "kmpp-then-clarans";
  }
  return "?";
}

SeedResult seed_pipeline(const Dataset& data, std::size_t numClusters, const MetricSpace& metric,
                         const Potential& potential, const SeedingConfig& config) {
  SeedResult out;
  Rng rng(substream_seed(config.rngSeed, 100));
  switch (config.method) {
    case SeedingConfig::Method::Uni:
      out.indices = seed_uni(data, numClusters, rng);
      break;
    case SeedingConfig::Method::Kmpp:
      out.indices = seed_kmpp(data, numClusters, metric, rng);
      break;
    case SeedingConfig::Method::Bf:
      out.points = seed_bf(data, numClusters, config.rngSeed, config.bfPartitions,
                           config.numThreads);
      out.isPoints = true;
      break;
    case SeedingConfig::Method::Medlloyd: {
      MedlloydConfig mc;
      mc.rngSeed = config.rngSeed;
      out.indices = run_medlloyd(data, metric, potential, numClusters, mc).first.centers;
      break;
    }
    case SeedingConfig::Method::Clarans: {
      EngineConfig ec = config.clarans;
      ec.rngSeed = config.rngSeed;
      out.indices = run_clarans(data, metric, potential, numClusters, ec).state.centers;
      break;
    }
    case SeedingConfig::Method::KmppThenClarans: {
      EngineConfig ec = config.clarans;
      ec.rngSeed = config.rngSeed;
      ec.initialCenters = seed_kmpp(data, numClusters, metric, rng);
      out.indices = run_clarans(data, metric, potential, numClusters, ec).state.centers;
      break;
    }
  }
  return out;
}

}  // namespace kmed
