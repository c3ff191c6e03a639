#pragma once

#include <stdexcept>
#include <string>

namespace wcmc {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ShapeMismatch : Error { using Error::Error; };
struct InvalidParameter : Error { using Error::Error; };
struct Reducible : Error { using Error::Error; };
struct ConvergenceFailure : Error { using Error::Error; };
struct ZeroDenominator : Error { using Error::Error; };
struct SolverFailure : Error { using Error::Error; };
struct NotContractive : Error { using Error::Error; };
struct WrongKind : Error { using Error::Error; };
struct SingularSystem : Error { using Error::Error; };
struct NotReversible : Error { using Error::Error; };
struct NoGap : Error { using Error::Error; };
struct NumericalFailure : Error { using Error::Error; };
struct SupportViolation : Error { using Error::Error; };
struct InfiniteDiameter : Error { using Error::Error; };
struct IoError : Error { using Error::Error; };

} // namespace wcmc
