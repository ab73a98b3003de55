#pragma once

#include <stdexcept>
#include <string>

namespace sop {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A phase cofactor was expected to have all coefficients equal to 1/2.
struct NonHalfCoefficient : Error {
    using Error::Error;
};

// An operation defined only for terms without discards was given one.
struct NotPure : Error {
    using Error::Error;
};

// f_double requires the shape produced by reducing a doubled Clifford term.
struct NotInDiscNormalForm : Error {
    using Error::Error;
};

struct ArityMismatch : Error {
    using Error::Error;
};

struct ParseError : Error {
    using Error::Error;
};

// Exact evaluation refused: too many path variables for the configured cap.
struct TooManyVariables : Error {
    using Error::Error;
};

// A ZH parameter has no exact representation in this engine.
struct UnsupportedParamExact : Error {
    using Error::Error;
};

// decompose_h_param is undefined for |r| in {0, 1}.
struct DegenerateParam : Error {
    using Error::Error;
};

struct StepLimitExceeded : Error {
    using Error::Error;
};

// hat-lift expansion exceeded the monomial budget.
struct MonomialCapExceeded : Error {
    using Error::Error;
};

struct InvalidDiagram : Error {
    using Error::Error;
};

}  // namespace sop
