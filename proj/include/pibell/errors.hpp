#pragma once

#include <stdexcept>
#include <string>

namespace pibell {

// Domain errors: a precondition on the mathematical input was violated.
struct NotAVertexImage : std::domain_error { using std::domain_error::domain_error; };
struct ParityViolation : std::domain_error { using std::domain_error::domain_error; };
struct NotCoprime : std::domain_error { using std::domain_error::domain_error; };
struct NoSaturatingVertex : std::domain_error { using std::domain_error::domain_error; };
struct OutOfRange : std::domain_error { using std::domain_error::domain_error; };
struct OutOfRegime : std::domain_error { using std::domain_error::domain_error; };
struct BadSpinLabel : std::domain_error { using std::domain_error::domain_error; };
struct NoRealSolution : std::domain_error { using std::domain_error::domain_error; };
struct DegenerateMeasurements : std::domain_error { using std::domain_error::domain_error; };
struct DimensionMismatch : std::domain_error { using std::domain_error::domain_error; };
struct DivisionByZero : std::domain_error { using std::domain_error::domain_error; };
struct TooLarge : std::domain_error { using std::domain_error::domain_error; };

// Runtime errors: the computation itself failed.
struct ConvergenceFailure : std::runtime_error { using std::runtime_error::runtime_error; };

} // namespace pibell
