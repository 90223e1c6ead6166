#pragma once

// Independent numerical checks of the closed forms. Each check recomputes a
// quantity from more primitive objects (the wavefunction, the propagator, the
// geometric spectrum) by quadrature, series summation or finite differences,
// and reports its agreement with the closed form.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <numbers>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "coho/entropy.hpp"
#include "coho/errors.hpp"
#include "coho/params.hpp"
#include "coho/quadrature.hpp"
#include "coho/thermal.hpp"

namespace coho::oracle {

struct QuadratureSpec {
    std::size_t order = 64;          // nodes per axis
    double half_width_sigmas = 6.0;  // box half-width

    void validate() const {
        if (order < 16) throw InvalidInput("quadrature order must be >= 16");
        if (!(half_width_sigmas >= 4.0)) throw InvalidInput("half_width_sigmas must be >= 4");
    }
};

/// Estimated truncated mass above which a quadrature result is rejected.
inline constexpr double kMaxTailMass = 1e-9;

struct OracleReport {
    std::string name;
    double closed_form;
    double oracle_value;
    double rel_error;
    double tolerance;
    bool passed;
    std::string detail;
};

/// |a − b| / max(|a|, |b|, 1e−300).
inline double relative_error(double a, double b) {
    return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300});
}

inline OracleReport make_report(std::string name, double closed, double oracle, double rel_error,
                                double tolerance, std::string detail = {}) {
    return {std::move(name), closed, oracle, rel_error, tolerance, rel_error <= tolerance,
            std::move(detail)};
}

struct Endpoints {
    double x1b, x2b, x1a, x2a;
};

using Point = std::array<double, 2>;

namespace detail {

inline std::string fmt_num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

inline std::string point_label(const DerivedFrame<> &f, double beta) {
    const auto pt = reduced_point(f, beta);
    return "eta=" + fmt_num(pt.eta) + ",theta=" + fmt_num(pt.theta) + ",u=" + fmt_num(pt.u);
}

/// ρ_red of oscillator 1 traced numerically from ψ(x1, x2; β).
class TracedKernel {
public:
    TracedKernel(const DerivedFrame<> &frame, double beta, const QuadratureSpec &spec)
        : wf_(wavefunction_form(frame, beta)),
          rule_(quadrature::gauss_legendre(spec.order)),
          half_width_(spec.half_width_sigmas),
          scale_(frame.length_scale()) {
        const auto z = quadrature::integrate_log_1d(
            [this](double x) { return log_kernel(x, x); }, rule_, half_width_, 0.0, scale_);
        note_tail(z.tail_mass);
        log_trace_ = z.log_value;
    }

    /// log ∫ψ(x, y)ψ(x', y) dy.
    double log_kernel(double x, double xp) const {
        const auto r = quadrature::integrate_log_1d(
            [&](double y) {
                return evaluate_wavefunction(wf_, x, y) + evaluate_wavefunction(wf_, xp, y);
            },
            rule_, half_width_, 0.0, scale_);
        note_tail(r.tail_mass);
        return r.log_value;
    }

    /// log ρ_red(x, x') with the normalization ∫∫ψψ* dx1 dx2 divided out.
    double log_density(double x, double xp) const { return log_kernel(x, xp) - log_trace_; }

    double log_trace() const { return log_trace_; }
    double worst_tail() const { return worst_tail_; }
    const quadrature::Rule &rule() const { return rule_; }
    double half_width() const { return half_width_; }
    double scale() const { return scale_; }
    const WavefunctionForm<> &wavefunction() const { return wf_; }

private:
    void note_tail(double t) const { worst_tail_ = std::max(worst_tail_, t); }

    WavefunctionForm<> wf_;
    quadrature::Rule rule_;
    double half_width_;
    double scale_;
    double log_trace_ = 0.0;
    mutable double worst_tail_ = 0.0;
};

inline void check_tail(double tail, const char *what) {
    if (!(tail <= kMaxTailMass))
        throw QuadratureFailure(std::string(what) + ": estimated tail mass " + fmt_num(tail) +
                                " exceeds 1e-9");
}

inline double numeric_purity(const DerivedFrame<> &frame, double beta, const QuadratureSpec &spec) {
    const TracedKernel k(frame, beta, spec);
    const auto sq = quadrature::integrate_log_2d(
        [&](double x, double xp) { return k.log_density(x, xp) + k.log_density(xp, x); }, k.rule(),
        k.half_width(), {0.0, 0.0}, k.scale());
    check_tail(std::max(sq.tail_mass, k.worst_tail()), "oracle_purity");
    return std::exp(sq.log_value);
}

}  // namespace detail

/// Tr ρ_red² by nested quadrature of ψψ*, against the closed-form purity.
/// The rule is escalated once to twice the order on QuadratureFailure.
inline OracleReport oracle_purity(const DerivedFrame<> &frame, double beta,
                                  const QuadratureSpec &spec = {}, double tolerance = 1e-6) {
    spec.validate();
    const double closed = purity(reduced_point(frame, beta)).value();
    double numeric;
    try {
        numeric = detail::numeric_purity(frame, beta, spec);
    } catch (const QuadratureFailure &) {
        QuadratureSpec wider = spec;
        wider.order *= 2;
        numeric = detail::numeric_purity(frame, beta, wider);
    }
    return make_report("purity(" + detail::point_label(frame, beta) + ")", closed, numeric,
                       relative_error(closed, numeric), tolerance);
}

/// Fits (log A, a_r, b_r) of the numerically traced ρ_red from the probes
/// (s, s), (s, −s), (2s, 0), s one standard deviation of the diagonal.
/// a_r and b_r errors are measured relative to a_r, log A relative to max(|log A|, 1).
inline OracleReport oracle_reduced_fit(const DerivedFrame<> &frame, double beta,
                                       const QuadratureSpec &spec = {}, double tolerance = 1e-7) {
    spec.validate();
    const detail::TracedKernel k(frame, beta, spec);
    const auto env = quadrature::probe_envelope([&](double x) { return k.log_density(x, x); }, 0.0,
                                                k.scale());
    const double s = 1.0 / std::sqrt(env.curvature);
    if (!std::isfinite(s) || !(s > 0.0)) throw SingularFit("probe spacing is not finite");
    const double r1 = k.log_density(s, s);
    const double r2 = k.log_density(s, -s);
    const double r3 = k.log_density(2.0 * s, 0.0);
    detail::check_tail(k.worst_tail(), "oracle_reduced_fit");
    const double s2 = s * s;
    const double fit_b = (r1 - r2) / (2.0 * s2);
    const double fit_logA = r1 + r2 - r3;
    const double fit_a = (fit_logA - r3) / (4.0 * s2);
    if (!std::isfinite(fit_a) || !std::isfinite(fit_b) || !std::isfinite(fit_logA))
        throw SingularFit("probe system produced non-finite coefficients");

    const auto rd = reduced_density(k.wavefunction());
    struct Item {
        const char *label;
        double closed, fit, floor;
    };
    const Item items[] = {{"log_A", rd.log_A, fit_logA, 1.0},
                          {"a_r", rd.a_r, fit_a, rd.a_r},
                          {"b_r", rd.b_r, fit_b, rd.a_r}};
    const Item *worst = &items[0];
    double worst_err = -1.0;
    for (const auto &it : items) {
        const double err =
            std::abs(it.closed - it.fit) / std::max({std::abs(it.closed), std::abs(it.fit), it.floor});
        if (err > worst_err) worst_err = err, worst = &it;
    }
    return make_report("reduced_fit(" + detail::point_label(frame, beta) + ")", worst->closed,
                       worst->fit, worst_err, tolerance, worst->label);
}

/// Σλ_n^q (or −Σλ_n ln λ_n for q = 1) over the geometric spectrum, against
/// trace_power (or von_neumann).
inline OracleReport oracle_spectrum_entropy(double P, double q, double tolerance = 1e-10) {
    const auto p = Purity::from_value(P);
    if (!(q > 0.0)) throw InvalidInput("order q must be > 0");
    const auto spec = spectrum(p, adaptive_cutoff(p, 1e-16));
    const bool entropy = q == 1.0;
    double sum = 0.0;
    for (auto it = spec.eigenvalues.rbegin(); it != spec.eigenvalues.rend(); ++it) {
        const double l = *it;
        if (l <= 0.0) continue;
        sum += entropy ? -l * std::log(l) : std::pow(l, q);
    }
    const double closed = entropy ? von_neumann(p) : trace_power(p, q);
    std::string name = "spectrum(P=" + detail::fmt_num(P) + ",q=" + detail::fmt_num(q) + ")";
    const double err = entropy && closed == 0.0 && sum == 0.0 ? 0.0 : relative_error(closed, sum);
    return make_report(std::move(name), closed, sum, err, tolerance, entropy ? "S1" : "trace");
}

namespace detail {

struct Residual {
    long double h_minus_e0;  // (H − E0)ψ / ψ
    long double d_beta;      // ∂ψ/∂β / ψ
    long double h_psi;       // Hψ / ψ
    double relative() const {
        return double(std::abs(h_minus_e0 + d_beta) / (std::abs(h_psi) + 1e-300L));
    }
};

/// Finite-difference residual of (H − E0)ψ + ∂ψ/∂β = 0, in extended precision.
inline std::vector<Residual> schrodinger_residuals(const DerivedFrame<> &frame, double beta,
                                                   std::span<const Point> points, double step) {
    using LD = long double;
    if (!(step > 0.0)) throw InvalidInput("finite-difference step must be > 0");
    if (!(beta > 2.0 * step)) throw InvalidInput("beta lies inside the finite-difference stencil of 0");
    const auto f = frame.cast<LD>();
    const auto sys = frame_hamiltonian(f);
    const LD b = beta, h = step;
    const auto wf = wavefunction_form(f, b);
    const auto wf_up = wavefunction_form(f, b + h);
    const auto wf_down = wavefunction_form(f, b - h);
    std::vector<Residual> out;
    out.reserve(points.size());
    for (const auto &p : points) {
        const LD x1 = p[0], x2 = p[1];
        const LD centre = evaluate_wavefunction(wf, x1, x2);
        auto ratio = [&](const WavefunctionForm<LD> &w, LD y1, LD y2) {
            return std::exp(evaluate_wavefunction(w, y1, y2) - centre);
        };
        const LD lap1 = (ratio(wf, x1 + h, x2) - 2 + ratio(wf, x1 - h, x2)) / (h * h);
        const LD lap2 = (ratio(wf, x1, x2 + h) - 2 + ratio(wf, x1, x2 - h)) / (h * h);
        const LD potential = (sys.C1 * x1 * x1 + sys.C2 * x2 * x2 + sys.C3 * x1 * x2) / 2;
        const LD h_psi = -sys.hbar * sys.hbar / (2 * sys.m1) * lap1 -
                         sys.hbar * sys.hbar / (2 * sys.m2) * lap2 + potential;
        const LD d_beta = (ratio(wf_up, x1, x2) - ratio(wf_down, x1, x2)) / (2 * h);
        out.push_back({h_psi - f.E0, d_beta, h_psi});
    }
    return out;
}

}  // namespace detail

/// max over points of |(H − E0)ψ + ∂ψ/∂β| / |Hψ|, central differences with
/// Δx = Δβ = step. closed_form and oracle_value hold (H − E0)ψ/ψ and −∂ψ/∂β/ψ
/// at the worst point.
inline OracleReport oracle_schrodinger_residual(const DerivedFrame<> &frame, double beta,
                                                std::span<const Point> points, double step = 1e-4,
                                                double tolerance = 1e-4) {
    const auto res = detail::schrodinger_residuals(frame, beta, points, step);
    double worst = 0.0;
    detail::Residual at{0, 0, 1};
    for (const auto &r : res) {
        if (r.relative() >= worst) worst = r.relative(), at = r;
    }
    return make_report("schrodinger(" + detail::point_label(frame, beta) + ")",
                       double(at.h_minus_e0), double(-at.d_beta), worst, tolerance);
}

/// Observed order log₂(residual(2·step)/residual(step)) of the finite-difference
/// residual; 2 for a correct closed form.
inline double schrodinger_convergence_order(const DerivedFrame<> &frame, double beta,
                                            std::span<const Point> points, double step = 1e-4) {
    auto worst = [&](double h) {
        double w = 0.0;
        for (const auto &r : detail::schrodinger_residuals(frame, beta, points, h))
            w = std::max(w, r.relative());
        return w;
    };
    return std::log2(worst(2.0 * step) / worst(step));
}

inline OracleReport oracle_schrodinger_order(const DerivedFrame<> &frame, double beta,
                                             std::span<const Point> points, double step = 1e-4,
                                             double tolerance = 0.125) {
    const double order = schrodinger_convergence_order(frame, beta, points, step);
    return make_report("schrodinger_order(" + detail::point_label(frame, beta) + ")", 2.0, order,
                       std::abs(order - 2.0) / 2.0, tolerance);
}

/// ∫ρ(β1; b, y)·ρ(β2; y, a) d²y against ρ(β1 + β2; b, a), worst over endpoint sets.
/// Values carry the e^{+βE0} shift on both sides.
inline OracleReport oracle_composition(const DerivedFrame<> &frame, double beta1, double beta2,
                                       std::span<const Endpoints> endpoints,
                                       const QuadratureSpec &spec = {}, double tolerance = 1e-6) {
    spec.validate();
    if (endpoints.empty()) throw InvalidInput("oracle_composition needs at least one endpoint set");
    const auto pc1 = propagator_coefficients(frame, beta1);
    const auto pc2 = propagator_coefficients(frame, beta2);
    const auto pc12 = propagator_coefficients(frame, beta1 + beta2);
    const auto rule = quadrature::gauss_legendre(spec.order);
    double worst = -1.0, worst_closed = 0.0, worst_oracle = 0.0;
    for (const auto &e : endpoints) {
        const auto r = quadrature::integrate_log_2d(
            [&](double y1, double y2) {
                return evaluate_propagator(pc1, e.x1b, e.x2b, y1, y2) +
                       evaluate_propagator(pc2, y1, y2, e.x1a, e.x2a);
            },
            rule, spec.half_width_sigmas, {0.0, 0.0}, frame.length_scale());
        detail::check_tail(r.tail_mass, "oracle_composition");
        const double closed = evaluate_propagator(pc12, e.x1b, e.x2b, e.x1a, e.x2a);
        const double err = -std::expm1(-std::abs(r.log_value - closed));
        if (err > worst) worst = err, worst_closed = closed, worst_oracle = r.log_value;
    }
    return make_report("composition(" + detail::point_label(frame, beta1 + beta2) +
                           ",split=" + detail::fmt_num(beta1) + "+" + detail::fmt_num(beta2) + ")",
                       std::exp(worst_closed), std::exp(worst_oracle), worst, tolerance);
}

/// σ = 1/√(2λ_min) of exp(−a x² − b y² + 2c xy): the widest standard deviation.
inline double form_sigma(double a, double b, double c) {
    const double lambda_min = 0.5 * (a + b) - std::hypot(0.5 * (a - b), c);
    if (!(lambda_min > 0.0)) throw NonNormalizable("quadratic form is not positive definite");
    return 1.0 / std::sqrt(2.0 * lambda_min);
}

/// Uniform samples inside the `sigmas`-σ ellipse of exp(−a x² − b y² + 2c xy),
/// i.e. within `sigmas` standard deviations along each principal axis.
inline std::vector<Point> sample_ellipse(double a, double b, double c, std::size_t count,
                                         double sigmas, std::uint64_t seed) {
    const double mean = 0.5 * (a + b), spread = std::hypot(0.5 * (a - b), c);
    const double l1 = mean + spread, l2 = mean - spread;
    if (!(l2 > 0.0)) throw NonNormalizable("quadratic form is not positive definite");
    const double phi = 0.5 * std::atan2(-2.0 * c, a - b);
    const double s1 = sigmas / std::sqrt(2.0 * l1), s2 = sigmas / std::sqrt(2.0 * l2);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<Point> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        const double r = std::sqrt(unit(rng));
        const double t = 2.0 * std::numbers::pi * unit(rng);
        const double p1 = s1 * r * std::cos(t), p2 = s2 * r * std::sin(t);
        out.push_back({p1 * std::cos(phi) - p2 * std::sin(phi), p1 * std::sin(phi) + p2 * std::cos(phi)});
    }
    return out;
}

/// Points within `sigmas`·σ of the thermal wavefunction at (frame, β).
inline std::vector<Point> sample_wavefunction_points(const DerivedFrame<> &frame, double beta,
                                                     std::size_t count, std::uint64_t seed,
                                                     double sigmas = 2.0) {
    const auto wf = wavefunction_form(frame, beta);
    return sample_ellipse(wf.alpha_t, wf.beta_t, wf.gamma_t, count, sigmas, seed);
}

/// Endpoint sets within `sigmas`·σ of the diagonal density P_β at (frame, β).
inline std::vector<Endpoints> sample_endpoints(const DerivedFrame<> &frame, double beta,
                                               std::size_t count, std::uint64_t seed,
                                               double sigmas = 2.0) {
    const auto df = diagonal_form(frame, beta);
    const auto pts = sample_ellipse(df.a_t, df.b_t, df.c_t, 2 * count, sigmas, seed);
    std::vector<Endpoints> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i)
        out.push_back({pts[2 * i][0], pts[2 * i][1], pts[2 * i + 1][0], pts[2 * i + 1][1]});
    return out;
}

}  // namespace coho::oracle
