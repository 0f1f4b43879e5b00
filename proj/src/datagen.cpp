#include "kmed/datagen.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>

#include "kmed/rng.hpp"

namespace kmed {

namespace {

// Box-Muller on our own uniform bits, so output is identical across standard
// library implementations.
double draw_gauss(Rng& rng) {
  double u;
  do {
    u = draw_unit(rng);
  } while (u == 0.0);
  const double v = draw_unit(rng);
  return std::sqrt(-2.0 * std::log(u)) * std::cos(2.0 * std::numbers::pi * v);
}

void check_grid_spec(const GridGaussianSpec& spec) {
  if (spec.gridSide < 2) throw std::invalid_argument("grid: gridSide >= 2 required");
  if (spec.pointsPerCluster < 1) throw std::invalid_argument("grid: pointsPerCluster >= 1");
  if (!(spec.sigma > 0.0)) throw std::invalid_argument("grid: sigma > 0 required");
}

}  // namespace

GridData gen_grid_gaussian(const GridGaussianSpec& spec) {
  check_grid_spec(spec);
  Rng rng(substream_seed(spec.rngSeed, 0));
  const std::size_t g = spec.gridSide;
  GridData out;
  DenseData d;
  d.dim = 2;
  d.values.reserve(g * g * spec.pointsPerCluster * 2);
  out.trueCenters.reserve(g * g * 2);
  for (std::size_t gy = 0; gy < g; ++gy) {
    for (std::size_t gx = 0; gx < g; ++gx) {
      const double cx = static_cast<double>(gx);
      const double cy = static_cast<double>(gy);
      out.trueCenters.push_back(cx);
      out.trueCenters.push_back(cy);
      for (std::size_t m = 0; m < spec.pointsPerCluster; ++m) {
        d.values.push_back(cx + spec.sigma * draw_gauss(rng));
        d.values.push_back(cy + spec.sigma * draw_gauss(rng));
      }
    }
  }
  out.data = Dataset(std::move(d));
  return out;
}

GridData gen_grid_two_blob(const GridGaussianSpec& spec) {
  check_grid_spec(spec);
  Rng rng(substream_seed(spec.rngSeed, 0));
  const std::size_t g = spec.gridSide;
  const std::size_t mA = (spec.pointsPerCluster + 1) / 2;
  const std::size_t mB = spec.pointsPerCluster / 2;
  GridData out;
  DenseData d;
  d.dim = 2;
  for (std::size_t gy = 0; gy < g; ++gy) {
    for (std::size_t gx = 0; gx < g; ++gx) {
      const double cx = static_cast<double>(gx);
      const double cy = static_cast<double>(gy);
      const double blob[2][2] = {{cx - 0.25, cy - 0.25}, {cx + 0.25, cy + 0.25}};
      const std::size_t counts[2] = {mA, mB};
      for (int b = 0; b < 2; ++b) {
        out.trueCenters.push_back(blob[b][0]);
        out.trueCenters.push_back(blob[b][1]);
        for (std::size_t m = 0; m < counts[b]; ++m) {
          d.values.push_back(blob[b][0] + spec.sigma * draw_gauss(rng));
          d.values.push_back(blob[b][1] + spec.sigma * draw_gauss(rng));
        }
      }
    }
  }
  out.data = Dataset(std::move(d));
  return out;
}

namespace {

Dataset gen_syn1(std::size_t numCenters, std::size_t perCenter, Rng& rng) {
  SeqData q;
  for (std::size_t c = 0; c < numCenters; ++c) {
    std::string center(16, '0');
    for (auto& ch : center) ch = draw_below(rng, 2) ? '1' : '0';
    for (std::size_t s = 0; s < perCenter; ++s) {
      std::string x = center;
      for (int mut = 0; mut < 2; ++mut) {
        std::uint64_t op = draw_below(rng, 3);
        if (x.empty() && op == 1) op = 0;  // nothing to delete
        if (op == 0) {  // insert
          const std::size_t pos = draw_below(rng, x.size() + 1);
          x.insert(x.begin() + pos, draw_below(rng, 2) ? '1' : '0');
        } else if (op == 1) {  // delete
          x.erase(x.begin() + draw_below(rng, x.size()));
        } else {  // replace
          x[draw_below(rng, x.size())] = draw_below(rng, 2) ? '1' : '0';
        }
      }
      q.rows.push_back(std::move(x));
    }
  }
  return Dataset(std::move(q));
}

Dataset gen_syn2(std::size_t numCenters, std::size_t perCenter, Rng& rng) {
  if (numCenters < 2) throw std::invalid_argument("syn-2: at least 2 centers required");
  constexpr std::uint32_t kDim = 1000000;
  std::vector<SparseVec> centers(numCenters);
  for (auto& c : centers) {
    std::map<std::uint32_t, double> entries;
    while (entries.size() < 5)
      entries.emplace(static_cast<std::uint32_t>(draw_below(rng, kDim)), 0.0);
    for (auto& [k, v] : entries) v = draw_gauss(rng);
    for (const auto& [k, v] : entries) {
      c.idx.push_back(k);
      c.val.push_back(v);
    }
  }
  SparseData sp;
  for (std::size_t c = 0; c < numCenters; ++c) {
    for (std::size_t s = 0; s < perCenter; ++s) {
      std::size_t other = draw_below(rng, numCenters - 1);
      if (other >= c) ++other;
      const double qc = draw_unit(rng) - 0.5;
      const SparseVec& a = centers[c];
      const SparseVec& b = centers[other];
      SparseVec x;
      std::size_t ia = 0, ib = 0;
      while (ia < a.idx.size() || ib < b.idx.size()) {
        double v;
        std::uint32_t k;
        if (ib >= b.idx.size() || (ia < a.idx.size() && a.idx[ia] < b.idx[ib])) {
          k = a.idx[ia];
          v = a.val[ia++];
        } else if (ia >= a.idx.size() || b.idx[ib] < a.idx[ia]) {
          k = b.idx[ib];
          v = qc * b.val[ib++];
        } else {
          k = a.idx[ia];
          v = a.val[ia++] + qc * b.val[ib++];
        }
        if (v != 0.0) {
          x.idx.push_back(k);
          x.val.push_back(v);
        }
      }
      sp.rows.push_back(std::move(x));
    }
  }
  return Dataset(std::move(sp));
}

Dataset gen_syn3(std::size_t perCenter, Rng& rng) {
  DenseData d;
  d.dim = 2;
  for (std::size_t gy = 0; gy < 12; ++gy)
    for (std::size_t gx = 0; gx < 12; ++gx)
      for (std::size_t s = 0; s < perCenter; ++s) {
        d.values.push_back(static_cast<double>(gx) + draw_gauss(rng));
        d.values.push_back(static_cast<double>(gy) + draw_gauss(rng));
      }
  return Dataset(std::move(d));
}

Dataset gen_syn4(std::size_t numSamples, Rng& rng) {
  DenseData d;
  d.dim = 2;
  for (std::size_t s = 0; s < numSamples; ++s) {
    d.values.push_back(draw_unit(rng));
    d.values.push_back(draw_unit(rng));
  }
  return Dataset(std::move(d));
}

}  // namespace

Dataset gen_synthetic(const SyntheticSpec& spec) {
  Rng rng(substream_seed(spec.rngSeed, 0));
  const std::size_t per = spec.samplesPerCenter ? spec.samplesPerCenter : 50;
  switch (spec.kind) {
    case SyntheticSpec::Kind::Syn1:
      return gen_syn1(spec.numCenters ? spec.numCenters : 16, per, rng);
    case SyntheticSpec::Kind::Syn2:
      return gen_syn2(spec.numCenters ? spec.numCenters : 50,
                      spec.samplesPerCenter ? spec.samplesPerCenter : 100, rng);
    case SyntheticSpec::Kind::Syn3:
      return gen_syn3(per, rng);
    case SyntheticSpec::Kind::Syn4:
      return gen_syn4(spec.numSamples ? spec.numSamples : 2000, rng);
  }
  throw std::invalid_argument("gen_synthetic: unknown kind");
}

}  // namespace kmed
