#pragma once

#include <cstdint>
#include <string>

#include "flatweights/grid.hpp"

// Parametric weight families used by the CLI, sweeps, and test corpora.

namespace flatweights {

enum class FlatShape { Sin, Bump, Saw };

struct WeightFamilySpec {
  enum class Kind { Power, Flat, Step, Random };
  Kind kind = Kind::Flat;
  GridSpec grid;

  double alpha = 0.0;    // Power: density |x - center|^alpha, needs alpha > -n
  double center = 0.5;
  double delta = 0.0;    // Flat: density 1 + delta * shape(x), needs |delta| < 1
  FlatShape shape = FlatShape::Sin;
  double ratio = 2.0;    // Step: density ratio left of split (first axis), 1 right
  double split = 0.5;
  double log_range = 1.0;  // Random: log w uniform on [-range/2, range/2)
  std::uint64_t seed = 1;
};

// Cell values: exact cell averages of the density for Power in n=1 (the
// antiderivative of |t|^alpha handles cells straddling the center), midpoint
// rule for everything else. Flat shapes, all with range [-1,1]:
//   Sin:  sin(2 pi x)             (n=2: product over axes)
//   Bump: exp(1 - 1/(1-t^2)), t = 2x-1, peak 1 at the center
//   Saw:  2 frac(2x) - 1
// Random draws are deterministic per seed: one 53-bit uniform per cell in
// lexicographic order, independent of thread count and platform.
Weight generate(const WeightFamilySpec& spec);

// "kind:key=val,key=val" with kinds power/flat/step/random and keys
// alpha, center, delta, shape (sin|bump|saw), ratio, split, range, seed.
// Throws BadFormat on anything unrecognized.
WeightFamilySpec parse_weight_spec(const std::string& text, GridSpec grid);

}  // namespace flatweights
