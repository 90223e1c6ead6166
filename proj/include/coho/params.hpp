#pragma once

// Physical constants of two coupled oscillators and the decoupling frame
// (mass ratio μ, normal-mode frequencies ω·e^{±η}, mixing angle θ) that all
// thermal and entropy formulas consume.

#include <cmath>
#include <concepts>
#include <numbers>
#include <string>

#include "coho/errors.hpp"

namespace coho {

/// H = p1²/2m1 + p2²/2m2 + ½C1x1² + ½C2x2² + ½C3x1x2.
template <std::floating_point Real = double>
struct OscillatorSystem {
    Real m1{1};
    Real m2{1};
    Real C1{1};
    Real C2{1};
    Real C3{0};
    Real hbar{1};
};

/// Decoupled-frame parameters. The mode with frequency ω·e^{+η} is the one
/// weighted by cos²(θ/2) in the x1 coefficients.
template <std::floating_point Real = double>
struct DerivedFrame {
    Real mu{1};
    Real m{1};
    Real k{1};
    Real omega{1};
    Real eta{0};
    Real theta{0};
    Real E0{1};
    Real hbar{1};

    template <std::floating_point To>
    DerivedFrame<To> cast() const {
        return {To(mu), To(m), To(k), To(omega), To(eta), To(theta), To(E0), To(hbar)};
    }

    /// Oscillator length √(ħ/(mω)).
    Real length_scale() const { return std::sqrt(hbar / (m * omega)); }
};

/// Dimensionless point (η, θ, u = ħωβ) on which purity and all entropies depend.
struct ReducedPoint {
    double eta;
    double theta;
    double u;

    ReducedPoint(double eta_, double theta_, double u_) : eta(eta_), theta(theta_), u(u_) {
        if (!std::isfinite(eta) || !std::isfinite(theta) || !std::isfinite(u))
            throw InvalidInput("ReducedPoint: eta, theta and u must be finite");
        if (!(u > 0.0)) throw InvalidInput("ReducedPoint: u = hbar*omega*beta must be > 0");
        constexpr double two_pi = 2.0 * std::numbers::pi;
        theta = std::fmod(theta, two_pi);
        if (theta < 0.0) theta += two_pi;
        if (theta >= two_pi) theta = 0.0;
    }
};

template <std::floating_point Real>
struct WeakLimit {
    Real theta;
    Real eta;
};

/// The two roots e^{+2η} ≥ 1 ≥ e^{-2η} of the coupling relation.
template <std::floating_point Real>
struct CouplingBranches {
    Real larger;
    Real smaller;
};

/// C3² at or above this fraction of 4·C1·C2 is treated as degenerate.
inline constexpr double kDegeneracyMargin = 1e-14;

namespace detail {

template <std::floating_point Real>
void require_positive(Real v, const char *name) {
    if (!std::isfinite(v) || !(v > Real(0)))
        throw InvalidInput(std::string(name) + " must be finite and > 0");
}

template <std::floating_point Real>
void validate_constants(const OscillatorSystem<Real> &sys) {
    require_positive(sys.m1, "m1");
    require_positive(sys.m2, "m2");
    require_positive(sys.C1, "C1");
    require_positive(sys.C2, "C2");
    require_positive(sys.hbar, "hbar");
    if (!std::isfinite(sys.C3)) throw InvalidInput("C3 must be finite");
}

template <std::floating_point Real>
void require_nondegenerate(Real C1, Real C2, Real C3) {
    if (C3 * C3 >= Real(4) * C1 * C2 * (Real(1) - Real(kDegeneracyMargin)))
        throw DegenerateCoupling("C3^2 >= 4*C1*C2: effective spring constant k vanishes");
}

/// k = √(C1C2 − C3²/4), factored to keep precision near the degenerate edge.
template <std::floating_point Real>
Real effective_spring(Real C1, Real C2, Real C3) {
    const Real root = std::sqrt(C1 * C2);
    const Real half = std::abs(C3) / Real(2);
    return std::sqrt((root - half) * (root + half));
}

template <std::floating_point Real>
Real fold_half_turn(Real theta) {
    constexpr Real pi = std::numbers::pi_v<Real>;
    if (theta < Real(0)) theta += pi;
    if (theta >= pi) theta -= pi;
    return theta;
}

}  // namespace detail

/// Throws InvalidInput or DegenerateCoupling if `sys` is not a bound system.
template <std::floating_point Real>
void validate(const OscillatorSystem<Real> &sys) {
    detail::validate_constants(sys);
    detail::require_nondegenerate(sys.C1, sys.C2, sys.C3);
}

template <std::floating_point Real>
CouplingBranches<Real> coupling_branches(const OscillatorSystem<Real> &sys) {
    validate(sys);
    const Real mu2 = std::sqrt(sys.m1 / sys.m2);
    const Real p = sys.C1 / mu2;
    const Real q = mu2 * sys.C2;
    const Real k = detail::effective_spring(sys.C1, sys.C2, sys.C3);
    const Real s = std::hypot(p - q, sys.C3);
    // p + q - s = 4k²/(p + q + s), since p·q = C1·C2.
    return {(p + q + s) / (Real(2) * k), Real(2) * k / (p + q + s)};
}

/// η is the non-negative branch; θ = atan2(C3, μ²C2 − C1/μ²) folded into [0, π).
template <std::floating_point Real>
DerivedFrame<Real> derive_frame(const OscillatorSystem<Real> &sys) {
    validate(sys);
    DerivedFrame<Real> f;
    f.hbar = sys.hbar;
    f.mu = std::pow(sys.m1 / sys.m2, Real(0.25));
    f.m = std::sqrt(sys.m1 * sys.m2);
    f.k = detail::effective_spring(sys.C1, sys.C2, sys.C3);
    f.omega = std::sqrt(f.k / f.m);
    f.eta = std::log(coupling_branches(sys).larger) / Real(2);
    const Real mu2 = f.mu * f.mu;
    f.theta = detail::fold_half_turn(std::atan2(sys.C3, mu2 * sys.C2 - sys.C1 / mu2));
    f.E0 = f.hbar * f.omega * std::cosh(f.eta);
    return f;
}

/// C3 → 0 limit: θ_w = 0, e^{2η_w} = (1/μ²)·√(C1/C2). η_w may be negative.
template <std::floating_point Real>
WeakLimit<Real> weak_coupling_frame(const OscillatorSystem<Real> &sys) {
    detail::validate_constants(sys);
    const Real mu2 = std::sqrt(sys.m1 / sys.m2);
    return {Real(0), std::log(std::sqrt(sys.C1 / sys.C2) / mu2) / Real(2)};
}

/// Equal masses and springs: θ = π/2, e^{2η} = √((C1 + C3/2)/(C1 − C3/2)).
template <std::floating_point Real>
DerivedFrame<Real> identical_frame(Real C1, Real C3, Real m, Real hbar = Real(1)) {
    detail::require_positive(C1, "C1");
    detail::require_positive(m, "m");
    detail::require_positive(hbar, "hbar");
    if (!std::isfinite(C3)) throw InvalidInput("C3 must be finite");
    detail::require_nondegenerate(C1, C1, C3);
    DerivedFrame<Real> f;
    f.hbar = hbar;
    f.mu = Real(1);
    f.m = m;
    f.k = detail::effective_spring(C1, C1, C3);
    f.omega = std::sqrt(f.k / m);
    f.eta = std::log((C1 + C3 / Real(2)) / (C1 - C3 / Real(2))) / Real(4);
    f.theta = std::numbers::pi_v<Real> / Real(2);
    f.E0 = hbar * f.omega * std::cosh(f.eta);
    return f;
}

/// Inverse of derive_frame up to the frame's symmetry: the Hamiltonian whose
/// thermal state the frame's formulas describe.
template <std::floating_point Real>
OscillatorSystem<Real> frame_hamiltonian(const DerivedFrame<Real> &f) {
    const Real mu2 = f.mu * f.mu;
    const Real k_up = f.k * std::exp(Real(2) * f.eta);
    const Real k_down = f.k * std::exp(Real(-2) * f.eta);
    const Real c = std::cos(f.theta / Real(2));
    const Real s = std::sin(f.theta / Real(2));
    const Real p = k_up * c * c + k_down * s * s;
    const Real q = k_up * s * s + k_down * c * c;
    const Real r = c * s * (k_down - k_up);
    return {f.m * mu2, f.m / mu2, mu2 * p, q / mu2, Real(2) * r, f.hbar};
}

template <std::floating_point Real>
ReducedPoint reduced_point(const DerivedFrame<Real> &f, Real beta) {
    detail::require_positive(beta, "beta");
    return ReducedPoint(double(f.eta), double(f.theta), double(f.hbar * f.omega * beta));
}

/// Frame with μ = m = ω = ħ = 1, so β = u. θ ≥ π is mapped to the equivalent
/// (−η, θ − π).
template <std::floating_point Real = double>
DerivedFrame<Real> frame_from_reduced(const ReducedPoint &pt) {
    DerivedFrame<Real> f;
    f.eta = Real(pt.eta);
    f.theta = Real(pt.theta);
    if (f.theta >= std::numbers::pi_v<Real>) {
        f.theta -= std::numbers::pi_v<Real>;
        f.eta = -f.eta;
    }
    f.E0 = std::cosh(f.eta);
    return f;
}

}  // namespace coho
