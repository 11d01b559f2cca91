#pragma once

#include <stdexcept>
#include <string>

namespace gutkin {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Support geometry
class NonClosedCurve : public Error { using Error::Error; };
class NonConvex : public Error { using Error::Error; };
class InvalidHarmonic : public Error { using Error::Error; };
class IndexOutOfRange : public Error { using Error::Error; };

// Planar and nD billiards
class DegenerateChord : public Error { using Error::Error; };
class NoIntersection : public Error { using Error::Error; };
class TangentLine : public Error { using Error::Error; };
class ConvergenceFailure : public Error { using Error::Error; };
class NonUnit : public Error { using Error::Error; };
class CoincidentDirections : public Error { using Error::Error; };

// Geodesics and chords
class OffSurface : public Error { using Error::Error; };
class StepTooLarge : public Error { using Error::Error; };
class DegenerateCurvature : public Error { using Error::Error; };
class NoExit : public Error { using Error::Error; };

// Input validation (CLI and file loading)
class InvalidInput : public Error { using Error::Error; };

}  // namespace gutkin
