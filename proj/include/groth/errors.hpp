#pragma once

#include <stdexcept>
#include <string>

namespace groth {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// shape / input errors
struct TooManyParts : Error { using Error::Error; };
struct NotDecreasing : Error { using Error::Error; };
struct WrongSize : Error { using Error::Error; };
struct SizeLimit : Error { using Error::Error; };
struct IndexOutOfRange : Error { using Error::Error; };
struct UnsupportedIndex : Error { using Error::Error; };
struct ZeroParameter : Error { using Error::Error; };

// parameter-regime errors
struct InvalidRegime : Error { using Error::Error; };

// numeric errors
struct DivergentSum : Error { using Error::Error; };
struct SingularGram : Error { using Error::Error; };
struct ContourInfeasible : Error { using Error::Error; };
struct PoleProximity : Error { using Error::Error; };
struct DegenerateAllZero : Error { using Error::Error; };
struct BoundaryDetectionFailed : Error { using Error::Error; };
struct NoRoot : Error { using Error::Error; };
struct StencilLeavesLiquid : Error { using Error::Error; };

}  // namespace groth
