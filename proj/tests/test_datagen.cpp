#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

#include "kmed/datagen.hpp"
#include "kmed/metric.hpp"
#include "kmed/potential.hpp"

using namespace kmed;

TEST_CASE("grid gaussian: size, determinism, cluster concentration") {
  GridGaussianSpec spec;
  spec.gridSide = 6;
  spec.pointsPerCluster = 50;
  spec.sigma = 0.1;
  spec.rngSeed = 5;
  const GridData g = gen_grid_gaussian(spec);
  CHECK(g.data.size() == 6 * 6 * 50);
  CHECK(g.trueCenters.size() == 6 * 6 * 2);

  const GridData again = gen_grid_gaussian(spec);
  CHECK(g.data.dense().values == again.data.dense().values);

  // sample means land near their generating centers
  const DenseData& d = g.data.dense();
  const double bound = 5.0 * spec.sigma / std::sqrt(50.0);
  for (std::size_t c = 0; c < 36; ++c) {
    double mx = 0.0, my = 0.0;
    for (std::size_t m = 0; m < 50; ++m) {
      mx += d.row(c * 50 + m)[0];
      my += d.row(c * 50 + m)[1];
    }
    CHECK(std::abs(mx / 50.0 - g.trueCenters[c * 2]) < bound);
    CHECK(std::abs(my / 50.0 - g.trueCenters[c * 2 + 1]) < bound);
  }
}

TEST_CASE("grid gaussian: near-zero sigma collapses clusters onto the lattice") {
  GridGaussianSpec spec;
  spec.gridSide = 3;
  spec.pointsPerCluster = 4;
  spec.sigma = 1e-12;
  const GridData g = gen_grid_gaussian(spec);
  const DenseData& d = g.data.dense();
  for (std::size_t c = 0; c < 9; ++c)
    for (std::size_t m = 0; m < 4; ++m) {
      CHECK(d.row(c * 4 + m)[0] == doctest::Approx(g.trueCenters[c * 2]).epsilon(1e-9));
      CHECK(d.row(c * 4 + m)[1] == doctest::Approx(g.trueCenters[c * 2 + 1]).epsilon(1e-9));
    }
}

TEST_CASE("two-blob grid: counts and centers") {
  GridGaussianSpec spec;
  spec.gridSide = 4;
  spec.pointsPerCluster = 10;
  spec.sigma = 0.05;
  const GridData g = gen_grid_two_blob(spec);
  CHECK(g.data.size() == 4 * 4 * 10);
  CHECK(g.trueCenters.size() == 2 * 4 * 4 * 2);
}

TEST_CASE("syn-1: binary sequences within two edits of a 16-bit source") {
  SyntheticSpec spec;
  spec.kind = SyntheticSpec::Kind::Syn1;
  spec.rngSeed = 9;
  const Dataset data = gen_synthetic(spec);
  CHECK(data.kind() == DataKind::Sequence);
  CHECK(data.size() == 16 * 50);
  for (const auto& s : data.seq().rows) {
    CHECK(s.size() >= 14);  // two deletions at most
    CHECK(s.size() <= 18);  // two insertions at most
    for (const char c : s) CHECK((c == '0' || c == '1'));
  }
  const Dataset again = gen_synthetic(spec);
  CHECK(data.seq().rows == again.seq().rows);
}

TEST_CASE("syn-2: sparse combinations of two 5-sparse centers") {
  SyntheticSpec spec;
  spec.kind = SyntheticSpec::Kind::Syn2;
  spec.rngSeed = 11;
  spec.numCenters = 10;
  spec.samplesPerCenter = 20;
  const Dataset data = gen_synthetic(spec);
  CHECK(data.kind() == DataKind::Sparse);
  CHECK(data.size() == 10 * 20);
  for (const auto& r : data.sparse().rows) {
    CHECK(r.idx.size() <= 10);
    CHECK(r.idx.size() >= 1);
    for (const auto i : r.idx) CHECK(i < 1000000);
  }
}

TEST_CASE("syn-3: 12x12 grid, unit noise") {
  SyntheticSpec spec;
  spec.kind = SyntheticSpec::Kind::Syn3;
  spec.rngSeed = 13;
  spec.samplesPerCenter = 20;
  const Dataset data = gen_synthetic(spec);
  CHECK(data.size() == 144 * 20);
  CHECK(data.dense().dim == 2);
  // coordinates stay within a few standard deviations of the grid
  for (std::size_t i = 0; i < data.size(); ++i) {
    CHECK(data.dense().row(i)[0] > -8.0);
    CHECK(data.dense().row(i)[0] < 19.0);
  }
}

TEST_CASE("syn-4: lattice cover has zero step energy") {
  SyntheticSpec spec;
  spec.kind = SyntheticSpec::Kind::Syn4;
  spec.rngSeed = 15;
  spec.numSamples = 3000;
  const Dataset data = gen_synthetic(spec);
  CHECK(data.size() == 3000);
  const Potential step{PotentialKind::Step, 0.05};

  // 100 squares of side 0.1 centered on the lattice cover the unit square
  double energy = 0.0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    const double* p = data.dense().row(i);
    CHECK(p[0] >= 0.0);
    CHECK(p[0] < 1.0);
    double best = 10.0;
    for (int a = 0; a < 10; ++a)
      for (int b = 0; b < 10; ++b) {
        const double cx = 0.05 + 0.1 * a, cy = 0.05 + 0.1 * b;
        best = std::min(best, std::max(std::abs(p[0] - cx), std::abs(p[1] - cy)));
      }
    energy += step(best);
  }
  CHECK(energy == 0.0);
}

TEST_CASE("generator input validation") {
  GridGaussianSpec bad;
  bad.gridSide = 1;
  CHECK_THROWS(gen_grid_gaussian(bad));
  bad.gridSide = 4;
  bad.sigma = 0.0;
  CHECK_THROWS(gen_grid_gaussian(bad));
  SyntheticSpec s2;
  s2.kind = SyntheticSpec::Kind::Syn2;
  s2.numCenters = 1;
  CHECK_THROWS(gen_synthetic(s2));
}
