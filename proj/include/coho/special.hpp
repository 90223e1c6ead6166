#pragma once

// Log-safe elementary functions used by the thermal and entropy formulas.
// Hyperbolic arguments reach ~1500 in the figure sweeps, so nothing here
// materializes e^x for large x.

#include <cmath>
#include <concepts>
#include <numbers>

namespace coho::special {

/// Arguments above this are treated as saturated: tanh = coth = 1.
inline constexpr double kSaturation = 30.0;

template <std::floating_point Real>
Real tanh_sat(Real x) {
    if (x > Real(kSaturation)) return Real(1);
    if (x < -Real(kSaturation)) return Real(-1);
    return std::tanh(x);
}

/// coth for x > 0.
template <std::floating_point Real>
Real coth_sat(Real x) {
    if (x > Real(kSaturation)) return Real(1);
    return Real(1) / std::tanh(x);
}

/// 1/sinh(x) for x > 0; decays to zero instead of overflowing.
template <std::floating_point Real>
Real csch(Real x) {
    if (x < Real(1)) return Real(1) / std::sinh(x);
    return Real(2) * std::exp(-x) / -std::expm1(Real(-2) * x);
}

/// log cosh(x) = |x| + log(1 + e^{-2|x|}) - log 2.
template <std::floating_point Real>
Real log_cosh(Real x) {
    const Real ax = std::abs(x);
    return ax + std::log1p(std::exp(Real(-2) * ax)) - std::numbers::ln2_v<Real>;
}

/// log sinh(x) for x > 0.
template <std::floating_point Real>
Real log_sinh(Real x) {
    if (x < Real(1)) return std::log(std::sinh(x));
    return x + std::log(-std::expm1(Real(-2) * x)) - std::numbers::ln2_v<Real>;
}

/// log tanh(x) for x > 0, accurate at both ends.
template <std::floating_point Real>
Real log_tanh(Real x) {
    if (x > Real(kSaturation)) return Real(0);
    const Real e = std::exp(Real(-2) * x);
    return std::log(-std::expm1(Real(-2) * x)) - std::log1p(e);
}

/// log(1 + e^x).
template <std::floating_point Real>
Real softplus(Real x) {
    if (x > Real(0)) return x + std::log1p(std::exp(-x));
    return std::log1p(std::exp(x));
}

/// log |sinh(x)|.
template <std::floating_point Real>
Real log_abs_sinh(Real x) {
    const Real ax = std::abs(x);
    if (ax < Real(1)) return std::log(std::abs(std::sinh(x)));
    return ax + std::log(-std::expm1(Real(-2) * ax)) - std::numbers::ln2_v<Real>;
}

}  // namespace coho::special
