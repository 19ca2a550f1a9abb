#pragma once

#include <stdexcept>
#include <string>

namespace flatweights {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Validation failures carry the name of the violated contract.
struct NonFinite : Error { using Error::Error; };
struct NonPositiveValue : Error { using Error::Error; };
struct SizeMismatch : Error { using Error::Error; };
struct CubeOutOfBounds : Error { using Error::Error; };
struct ExponentOverflow : Error { using Error::Error; };
struct InvalidThreshold : Error { using Error::Error; };
struct EpsilonOutOfRange : Error { using Error::Error; };
struct EmptySubset : Error { using Error::Error; };
struct NoAdmissibleCube : Error { using Error::Error; };
struct DegenerateWeight : Error { using Error::Error; };
struct DegenerateFunction : Error { using Error::Error; };
struct InvalidConstant : Error { using Error::Error; };
struct AlphaOutOfRange : Error { using Error::Error; };
struct ExponentBlowup : Error { using Error::Error; };
struct BadFormat : Error { using Error::Error; };

}  // namespace flatweights
