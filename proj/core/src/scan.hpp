#pragma once

#include <limits>
#include <vector>

#include "flatweights/constants.hpp"
#include "flatweights/parallel.hpp"

// Shared by the constant and check implementations; not installed.

namespace flatweights::detail {

// Evaluates per_cube over the whole family and keeps the first maximizer in
// enumeration order (parallel over cubes; the reduction is sequential).
template <class PerCube>
SupResult sup_scan(const GridSpec& g, const CubeFamily& fam, PerCube per_cube) {
  const std::vector<Cube> cubes = enumerate_cubes(g, fam);
  std::vector<double> vals(cubes.size());
  parallel_for(static_cast<std::int64_t>(cubes.size()), [&](std::int64_t i) {
    const auto k = static_cast<std::size_t>(i);
    vals[k] = per_cube(cubes[k]);
  });
  SupResult r{-std::numeric_limits<double>::infinity(), cubes.front()};
  for (std::size_t i = 0; i < cubes.size(); ++i) {
    if (vals[i] > r.value) {
      r.value = vals[i];
      r.witness = cubes[i];
    }
  }
  return r;
}

}  // namespace flatweights::detail
