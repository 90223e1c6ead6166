#pragma once

// Thermal Gaussian objects of the coupled pair: the imaginary-time
// propagator ρ^AB(b, a; β), its diagonal P_β, the thermal wavefunction
// ψ(x1, x2; β), and the reduced density matrix of oscillator 1.
// Every value that can overflow is carried as a logarithm.

#include <cmath>
#include <concepts>
#include <numbers>

#include "coho/errors.hpp"
#include "coho/params.hpp"
#include "coho/special.hpp"

namespace coho {

/// ρ^AB(b,a;β) = e^{log_prefactor} · exp{−a x1b² − b x2b² − a x1a² − b x2a²
///   + 2c x1b x2b + 2c x1a x2a + 2d x1b x1a + 2f x2b x2a − 2g x1b x2a − 2g x1a x2b}.
template <std::floating_point Real = double>
struct PropagatorCoefficients {
    Real a, b, c, d, f, g;
    Real log_prefactor;
};

/// P_β(x1,x2) = e^{log_prefactor} · exp(−ã x1² − b̃ x2² + 2c̃ x1 x2).
template <std::floating_point Real = double>
struct DiagonalForm {
    Real a_t, b_t, c_t;
    Real log_prefactor;
};

/// ψ(x1,x2;β) = e^{log_norm} · exp(−α̃ x1² − β̃ x2² + 2γ̃ x1 x2).
template <std::floating_point Real = double>
struct WavefunctionForm {
    Real alpha_t, beta_t, gamma_t;
    Real log_norm;
};

/// ρ_red(x, x') = A · exp(−a_r x² − a_r x'² + b_r x x').
template <std::floating_point Real = double>
struct ReducedDensity {
    Real log_A;
    Real a_r;
    Real b_r;
};

namespace detail {

template <std::floating_point Real>
void require_beta(Real beta) {
    if (!std::isfinite(beta) || !(beta > Real(0)))
        throw InvalidInput("beta must be finite and > 0");
}

template <std::floating_point Real>
void require_finite(Real v) {
    if (!std::isfinite(v)) throw InvalidInput("coordinates must be finite");
}

/// Mode-resolved pieces shared by all coefficient sets.
template <std::floating_point Real>
struct ModeGeometry {
    Real scale;   // mω/ħ
    Real mu2;     // μ²
    Real cos2;    // cos²(θ/2)
    Real sin2;    // sin²(θ/2)
    Real cs;      // cos(θ/2)·sin(θ/2)
    Real e_up;    // e^{+η}
    Real e_down;  // e^{−η}
    Real x_up;    // ħωβ·e^{+η}
    Real x_down;  // ħωβ·e^{−η}
};

template <std::floating_point Real>
ModeGeometry<Real> mode_geometry(const DerivedFrame<Real> &f, Real beta) {
    require_beta(beta);
    const Real c = std::cos(f.theta / Real(2));
    const Real s = std::sin(f.theta / Real(2));
    const Real e_up = std::exp(f.eta);
    const Real e_down = std::exp(-f.eta);
    const Real u = f.hbar * f.omega * beta;
    return {f.m * f.omega / f.hbar, f.mu * f.mu, c * c, s * s, c * s, e_up, e_down,
            u * e_up, u * e_down};
}

/// Builds (x1², x2², x1x2) coefficients from the two per-mode weights.
template <std::floating_point Real>
struct Mixed {
    Real first, second, cross;
};

template <std::floating_point Real>
Mixed<Real> mix(const ModeGeometry<Real> &g, Real w_up, Real w_down) {
    return {g.mu2 * (w_up * g.cos2 + w_down * g.sin2),
            (w_up * g.sin2 + w_down * g.cos2) / g.mu2,
            (w_up - w_down) * g.cs};
}

}  // namespace detail

template <std::floating_point Real>
PropagatorCoefficients<Real> propagator_coefficients(const DerivedFrame<Real> &f, Real beta) {
    const auto g = detail::mode_geometry(f, beta);
    const Real half = g.scale / Real(2);
    const auto outer = detail::mix(g, g.e_up * special::coth_sat(g.x_up),
                                   g.e_down * special::coth_sat(g.x_down));
    const auto inner = detail::mix(g, g.e_up * special::csch(g.x_up),
                                   g.e_down * special::csch(g.x_down));
    PropagatorCoefficients<Real> pc;
    pc.a = half * outer.first;
    pc.b = half * outer.second;
    pc.c = half * outer.cross;
    pc.d = half * inner.first;
    pc.f = half * inner.second;
    pc.g = half * inner.cross;
    pc.log_prefactor = std::log(g.scale / (Real(2) * std::numbers::pi_v<Real>)) + beta * f.E0 -
                       (special::log_sinh(g.x_up) + special::log_sinh(g.x_down)) / Real(2);
    return pc;
}

/// Built from the tanh(½ħωβe^{±η}) closed forms, not by subtracting
/// propagator coefficients.
template <std::floating_point Real>
DiagonalForm<Real> diagonal_form(const DerivedFrame<Real> &f, Real beta) {
    const auto g = detail::mode_geometry(f, beta);
    const auto m = detail::mix(g, g.e_up * special::tanh_sat(g.x_up / Real(2)),
                               g.e_down * special::tanh_sat(g.x_down / Real(2)));
    DiagonalForm<Real> df;
    df.a_t = g.scale * m.first;
    df.b_t = g.scale * m.second;
    df.c_t = g.scale * m.cross;
    df.log_prefactor = std::log(g.scale / (Real(2) * std::numbers::pi_v<Real>)) + beta * f.E0 -
                       (special::log_sinh(g.x_up) + special::log_sinh(g.x_down)) / Real(2);
    return df;
}

template <std::floating_point Real>
WavefunctionForm<Real> wavefunction_form(const DerivedFrame<Real> &f, Real beta) {
    const auto g = detail::mode_geometry(f, beta);
    const Real half = g.scale / Real(2);
    const auto m = detail::mix(g, g.e_up * special::tanh_sat(g.x_up),
                               g.e_down * special::tanh_sat(g.x_down));
    WavefunctionForm<Real> wf;
    wf.alpha_t = half * m.first;
    wf.beta_t = half * m.second;
    wf.gamma_t = half * m.cross;
    wf.log_norm = std::log(g.scale / (Real(4) * std::numbers::pi_v<Real>)) / Real(2) -
                  (special::log_cosh(g.x_up) + special::log_cosh(g.x_down)) / Real(2) +
                  f.hbar * f.omega * beta * std::cosh(f.eta);
    return wf;
}

/// Partial trace of ψψ* over x2, normalized to unit trace.
template <std::floating_point Real>
ReducedDensity<Real> reduced_density(const WavefunctionForm<Real> &wf) {
    const Real det = wf.alpha_t * wf.beta_t - wf.gamma_t * wf.gamma_t;
    if (!(wf.beta_t > Real(0)) || !(det > Real(0)) || !std::isfinite(det))
        throw NonNormalizable("wavefunction exponent form is not positive definite");
    ReducedDensity<Real> rd;
    rd.a_r = (Real(2) * wf.alpha_t * wf.beta_t - wf.gamma_t * wf.gamma_t) / (Real(2) * wf.beta_t);
    rd.b_r = wf.gamma_t * wf.gamma_t / wf.beta_t;
    rd.log_A = std::log(Real(2) * det / (std::numbers::pi_v<Real> * wf.beta_t)) / Real(2);
    return rd;
}

template <std::floating_point Real>
Real evaluate_propagator(const PropagatorCoefficients<Real> &pc, Real x1b, Real x2b, Real x1a,
                         Real x2a) {
    detail::require_finite(x1b);
    detail::require_finite(x2b);
    detail::require_finite(x1a);
    detail::require_finite(x2a);
    const Real quad = -pc.a * (x1b * x1b + x1a * x1a) - pc.b * (x2b * x2b + x2a * x2a) +
                      Real(2) * pc.c * (x1b * x2b + x1a * x2a) + Real(2) * pc.d * x1b * x1a +
                      Real(2) * pc.f * x2b * x2a - Real(2) * pc.g * (x1b * x2a + x1a * x2b);
    return pc.log_prefactor + quad;
}

template <std::floating_point Real>
Real evaluate_diagonal(const DiagonalForm<Real> &df, Real x1, Real x2) {
    detail::require_finite(x1);
    detail::require_finite(x2);
    return df.log_prefactor - df.a_t * x1 * x1 - df.b_t * x2 * x2 + Real(2) * df.c_t * x1 * x2;
}

template <std::floating_point Real>
Real evaluate_wavefunction(const WavefunctionForm<Real> &wf, Real x1, Real x2) {
    detail::require_finite(x1);
    detail::require_finite(x2);
    return wf.log_norm - wf.alpha_t * x1 * x1 - wf.beta_t * x2 * x2 +
           Real(2) * wf.gamma_t * x1 * x2;
}

template <std::floating_point Real>
Real evaluate_reduced(const ReducedDensity<Real> &rd, Real x, Real xp) {
    detail::require_finite(x);
    detail::require_finite(xp);
    return rd.log_A - rd.a_r * (x * x + xp * xp) + rd.b_r * x * xp;
}

}  // namespace coho
