#pragma once

// Fixed-node Gauss-Legendre product quadrature on boxes fitted to a
// Gaussian-like integrand. Integrands are passed as log-values so that
// strongly peaked or large-amplitude Gaussians never overflow.
//
// The box is centred on the integrand's peak and aligned with the principal
// axes of its log-Hessian, both measured by finite-difference probes (exact
// for a quadratic log-integrand). Widths are expressed in units of
// σ = 1/√(2λ) of a single Gaussian factor, where the integrand is taken to be
// the product of two such factors: σ = √2 · (standard deviation of the
// integrand along that axis).

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <vector>

#include "coho/errors.hpp"

namespace coho::quadrature {

struct Rule {
    std::vector<double> nodes;    // on [-1, 1]
    std::vector<double> weights;
};

/// n-point Gauss-Legendre rule by Newton iteration on P_n.
inline Rule gauss_legendre(std::size_t n) {
    if (n < 1) throw InvalidInput("quadrature order must be >= 1");
    Rule r;
    r.nodes.resize(n);
    r.weights.resize(n);
    const std::size_t half = (n + 1) / 2;
    for (std::size_t i = 0; i < half; ++i) {
        long double x = std::cos(std::numbers::pi * (double(i) + 0.75) / (double(n) + 0.5));
        long double dp = 0;
        for (int iter = 0; iter < 100; ++iter) {
            long double p0 = 1, p1 = x;
            for (std::size_t k = 2; k <= n; ++k) {
                const long double pk = ((2.0L * k - 1) * x * p1 - (k - 1.0L) * p0) / k;
                p0 = p1;
                p1 = pk;
            }
            dp = n * (x * p1 - p0) / (x * x - 1);
            const long double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-19L) break;
        }
        const double w = double(2.0L / ((1 - x * x) * dp * dp));
        r.nodes[i] = -double(x);
        r.nodes[n - 1 - i] = double(x);
        r.weights[i] = w;
        r.weights[n - 1 - i] = w;
    }
    return r;
}

struct LogIntegral {
    double log_value;  // log ∫ f
    double tail_mass;  // estimated fraction of ∫ f outside the box
};

namespace detail {

/// Accumulates Σ wᵢ·exp(gᵢ) in log space.
class LogSum {
public:
    explicit LogSum(std::size_t n) { terms_.reserve(n); }
    void add(double log_weight, double g) { terms_.push_back(log_weight + g); }
    double value() const {
        const double top = *std::max_element(terms_.begin(), terms_.end());
        if (!std::isfinite(top)) throw QuadratureFailure("integrand is not finite on the box");
        double s = 0.0;
        for (double t : terms_) s += std::exp(t - top);
        return top + std::log(s);
    }

private:
    std::vector<double> terms_;
};

/// Fraction of a Gaussian's mass beyond an edge whose log-drop from the peak is `drop`.
inline double side_tail(double drop) {
    if (!(drop < 0.0)) return 1.0;
    return 0.5 * std::erfc(std::sqrt(-drop));
}

}  // namespace detail

/// log f ≈ const − ½·curvature·(y − center)².
struct Envelope1D {
    double center;
    double curvature;
};

template <class LogF>
Envelope1D probe_envelope(const LogF &logf, double center, double step) {
    const double fm = logf(center - step), f0 = logf(center), fp = logf(center + step);
    const double curvature = -(fp - 2.0 * f0 + fm) / (step * step);
    if (!(curvature > 0.0) || !std::isfinite(curvature))
        throw QuadratureFailure("integrand has no Gaussian peak along the probed axis");
    const double slope = (fp - fm) / (2.0 * step);
    return {center + slope / curvature, curvature};
}

template <class LogF>
LogIntegral integrate_log_1d(const LogF &logf, const Rule &rule, double half_width_sigmas,
                             double center_guess, double scale_guess) {
    Envelope1D env = probe_envelope(logf, center_guess, scale_guess);
    env = probe_envelope(logf, env.center, 1.0 / std::sqrt(env.curvature));
    const double half = half_width_sigmas * std::sqrt(2.0 / env.curvature);
    detail::LogSum sum(rule.nodes.size());
    for (std::size_t i = 0; i < rule.nodes.size(); ++i)
        sum.add(std::log(rule.weights[i]), logf(env.center + half * rule.nodes[i]));
    const double peak = logf(env.center);
    const double tail = detail::side_tail(logf(env.center - half) - peak) +
                        detail::side_tail(logf(env.center + half) - peak);
    return {sum.value() + std::log(half), tail};
}

/// Gaussian envelope of a 2D log-integrand: peak and −Hessian.
struct Envelope2D {
    std::array<double, 2> center;
    std::array<double, 3> curvature;  // (k11, k12, k22) of −∇²log f
};

template <class LogF>
Envelope2D probe_envelope(const LogF &logf, std::array<double, 2> c, double h) {
    const double f0 = logf(c[0], c[1]);
    const double fxp = logf(c[0] + h, c[1]), fxm = logf(c[0] - h, c[1]);
    const double fyp = logf(c[0], c[1] + h), fym = logf(c[0], c[1] - h);
    const double fpp = logf(c[0] + h, c[1] + h), fmm = logf(c[0] - h, c[1] - h);
    const double fpm = logf(c[0] + h, c[1] - h), fmp = logf(c[0] - h, c[1] + h);
    const double h2 = h * h;
    const double k11 = -(fxp - 2.0 * f0 + fxm) / h2;
    const double k22 = -(fyp - 2.0 * f0 + fym) / h2;
    const double k12 = -(fpp - fpm - fmp + fmm) / (4.0 * h2);
    const double det = k11 * k22 - k12 * k12;
    if (!(k11 > 0.0) || !(k22 > 0.0) || !(det > 0.0) || !std::isfinite(det))
        throw QuadratureFailure("integrand has no Gaussian peak in the probed plane");
    const double g1 = (fxp - fxm) / (2.0 * h), g2 = (fyp - fym) / (2.0 * h);
    // Newton step: center + K⁻¹·∇log f.
    return {{c[0] + (k22 * g1 - k12 * g2) / det, c[1] + (k11 * g2 - k12 * g1) / det},
            {k11, k12, k22}};
}

template <class LogF>
LogIntegral integrate_log_2d(const LogF &logf, const Rule &rule, double half_width_sigmas,
                             std::array<double, 2> center_guess, double scale_guess) {
    Envelope2D env = probe_envelope(logf, center_guess, scale_guess);
    auto eigen = [](const std::array<double, 3> &k) {
        const double mean = 0.5 * (k[0] + k[2]);
        const double spread = std::hypot(0.5 * (k[0] - k[2]), k[1]);
        return std::array<double, 2>{mean + spread, mean - spread};
    };
    env = probe_envelope(logf, env.center, 1.0 / std::sqrt(eigen(env.curvature)[0]));
    const auto &k = env.curvature;
    const auto lambda = eigen(k);
    if (!(lambda[1] > 0.0)) throw QuadratureFailure("integrand envelope is not positive definite");
    // Principal axes of −Hessian.
    const double phi = 0.5 * std::atan2(2.0 * k[1], k[0] - k[2]);
    const std::array<double, 2> v1{std::cos(phi), std::sin(phi)};
    const std::array<double, 2> v2{-std::sin(phi), std::cos(phi)};
    const double l11 = k[0] * v1[0] * v1[0] + 2.0 * k[1] * v1[0] * v1[1] + k[2] * v1[1] * v1[1];
    const double l22 = k[0] * v2[0] * v2[0] + 2.0 * k[1] * v2[0] * v2[1] + k[2] * v2[1] * v2[1];
    const double half1 = half_width_sigmas * std::sqrt(2.0 / l11);
    const double half2 = half_width_sigmas * std::sqrt(2.0 / l22);
    const auto &c = env.center;
    auto at = [&](double t1, double t2) {
        return logf(c[0] + half1 * t1 * v1[0] + half2 * t2 * v2[0],
                    c[1] + half1 * t1 * v1[1] + half2 * t2 * v2[1]);
    };
    const std::size_t n = rule.nodes.size();
    detail::LogSum sum(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            sum.add(std::log(rule.weights[i] * rule.weights[j]), at(rule.nodes[i], rule.nodes[j]));
    const double peak = at(0.0, 0.0);
    const double tail = detail::side_tail(at(-1.0, 0.0) - peak) + detail::side_tail(at(1.0, 0.0) - peak) +
                        detail::side_tail(at(0.0, -1.0) - peak) + detail::side_tail(at(0.0, 1.0) - peak);
    return {sum.value() + std::log(half1 * half2), tail};
}

}  // namespace coho::quadrature
