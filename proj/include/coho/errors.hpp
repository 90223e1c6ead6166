#pragma once

#include <stdexcept>

namespace coho {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A precondition on an input value was violated.
class InvalidInput : public Error {
public:
    using Error::Error;
};

/// C3² reached 4·C1·C2: the effective spring constant k vanishes and the
/// coupling parameter diverges.
class DegenerateCoupling : public Error {
public:
    using Error::Error;
};

/// A Gaussian form that must be normalizable has a non-positive determinant.
class NonNormalizable : public Error {
public:
    using Error::Error;
};

/// Rényi order too close to 1 for the closed form; use von_neumann instead.
class OrderNearOne : public Error {
public:
    using Error::Error;
};

/// Numerical integration could not bound its truncation error.
class QuadratureFailure : public Error {
public:
    using Error::Error;
};

/// The probe system of the Gaussian coefficient fit is ill-conditioned.
class SingularFit : public Error {
public:
    using Error::Error;
};

}  // namespace coho
