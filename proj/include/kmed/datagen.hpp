#pragma once

#include <cstdint>
#include <vector>

#include "kmed/dataset.hpp"

namespace kmed {

struct GridGaussianSpec {
  std::size_t gridSide = 20;
  std::size_t pointsPerCluster = 100;
  double sigma = 0.0625;
  std::uint64_t rngSeed = 0;
};

struct GridData {
  Dataset data;
  std::vector<double> trueCenters;  // row-major 2-D points
};

// gridSide^2 clusters at the integer lattice points of a square grid,
// pointsPerCluster isotropic Gaussian samples each.
GridData gen_grid_gaussian(const GridGaussianSpec& spec);

// Variant with two Gaussian blobs per lattice cell, offset diagonally by
// 0.25 from the cell's lattice point; pointsPerCluster is split between the
// two blobs. trueCenters lists all 2*gridSide^2 blob centers.
GridData gen_grid_two_blob(const GridGaussianSpec& spec);

struct SyntheticSpec {
  enum class Kind { Syn1, Syn2, Syn3, Syn4 };
  Kind kind = Kind::Syn3;
  std::uint64_t rngSeed = 0;
  // syn-1..3: cluster count and per-cluster sample count. Syn-3 ignores
  // numCenters (fixed 12x12 grid); syn-4 uses numSamples only.
  std::size_t numCenters = 0;       // 0 -> per-kind default
  std::size_t samplesPerCenter = 0; // 0 -> per-kind default
  std::size_t numSamples = 0;       // syn-4 only; 0 -> default
};

// syn-1: 16-bit binary strings, each sample is its center with exactly 2
//        random edits (insert / delete / replace).
// syn-2: sparse vectors in R^1e6; centers have exactly 5 nonzeros ~ N(0,1),
//        samples are c_a + Q*c_b with Q ~ U[-0.5, 0.5].
// syn-3: 12x12 integer grid centers, unit-variance Gaussian samples.
// syn-4: points uniform on the unit square (covering task: pair with the
//        l-infinity metric and the step potential of radius 0.05).
Dataset gen_synthetic(const SyntheticSpec& spec);

}  // namespace kmed
