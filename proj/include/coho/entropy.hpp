#pragma once

// Purity of the reduced thermal state and the entropy family built on it.
// The reduced state has the geometric spectrum λ_n = (1 − ξ)·ξⁿ with
// ξ = (1 − P)/(1 + P); every formula below is evaluated through ξ and the
// separately tracked complement 1 − P, so nothing degrades near P = 1.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "coho/errors.hpp"
#include "coho/params.hpp"
#include "coho/special.hpp"

namespace coho {

/// A purity value together with its complement 1 − P.
class Purity {
public:
    static Purity from_value(double P) {
        if (!(P > 0.0) || !(P <= 1.0)) throw InvalidInput("purity must lie in (0, 1]");
        return Purity(P, 1.0 - P);
    }

    /// Keeps full relative precision of 1 − P when it is tiny.
    static Purity from_complement(double one_minus_P) {
        if (!(one_minus_P >= 0.0) || !(one_minus_P < 1.0))
            throw InvalidInput("1 - purity must lie in [0, 1)");
        return Purity(1.0 - one_minus_P, one_minus_P);
    }

    double value() const { return value_; }
    double complement() const { return complement_; }

    /// (1 − P)/(1 + P).
    double xi() const { return complement_ / (2.0 - complement_); }
    /// 2P/(1 + P).
    double one_minus_xi() const { return 2.0 * value_ / (1.0 + value_); }

private:
    Purity(double value, double complement) : value_(value), complement_(complement) {}
    double value_;
    double complement_;
};

/// P(η, θ, u) = [1 + sinh²(L)·sin²θ]^{-1/2} with
/// L = η + ½·ln[tanh(u e^{η}) / tanh(u e^{−η})], an exact rewriting of the
/// ratio form √(T₊T₋ / (D₁D₂)) that makes P ≤ 1 and the η ↦ −η symmetry exact.
inline Purity purity(const ReducedPoint &pt) {
    const double lt_up = special::log_tanh(pt.u * std::exp(pt.eta));
    const double lt_down = special::log_tanh(pt.u * std::exp(-pt.eta));
    const double L = pt.eta + 0.5 * (lt_up - lt_down);
    const double s = std::sin(pt.theta);
    if (L == 0.0 || s == 0.0) return Purity::from_complement(0.0);
    const double log_excess = 2.0 * special::log_abs_sinh(L) + 2.0 * std::log(std::abs(s));
    const double half_log = 0.5 * special::softplus(log_excess);  // ½·ln(1 + sinh²L·sin²θ)
    return Purity::from_complement(-std::expm1(-half_log));
}

inline double linear_entropy(const Purity &p) { return p.complement(); }

/// Tr ρ^q = (1 − ξ)^q / (1 − ξ^q) = (2P)^q / ((1 + P)^q − (1 − P)^q).
inline double trace_power(const Purity &p, double q) {
    if (!(q > 0.0) || !std::isfinite(q)) throw InvalidInput("order q must be finite and > 0");
    const double xi = p.xi();
    if (q == 1.0 || xi == 0.0) return 1.0;
    const double log_head = q * std::log(p.one_minus_xi());
    const double log_tail = std::log(-std::expm1(q * std::log(xi)));
    return std::exp(log_head - log_tail);
}

/// S_q = q/(1−q)·ln(1 − ξ) − 1/(1−q)·ln(1 − ξ^q).
inline double renyi(const Purity &p, double q) {
    if (!(q > 0.0) || !std::isfinite(q)) throw InvalidInput("order q must be finite and > 0");
    if (std::abs(q - 1.0) <= 1e-9)
        throw OrderNearOne("Renyi order within 1e-9 of 1; use von_neumann");
    const double xi = p.xi();
    if (xi == 0.0) return 0.0;
    const double log_head = xi < 0.5 ? std::log1p(-xi) : std::log(p.one_minus_xi());
    const double log_tail = std::log(-std::expm1(q * std::log(xi)));
    const double s = (q * log_head - log_tail) / (1.0 - q);
    return s > 0.0 ? s : 0.0;
}

/// S₂ = −ln P.
inline double renyi2(const Purity &p) { return -std::log1p(-p.complement()); }

/// S₃ = ½·ln((3 + P²)/(4P²)).
inline double renyi3(const Purity &p) {
    const double P = p.value();
    return 0.5 * std::log1p(3.0 * p.complement() * (1.0 + P) / (4.0 * P * P));
}

/// S₁ = −ln(1 − ξ) − ξ/(1 − ξ)·ln ξ.
inline double von_neumann(const Purity &p) {
    const double xi = p.xi();
    if (xi < 1e-300) return 0.0;
    const double log_head = xi < 0.5 ? std::log1p(-xi) : std::log(p.one_minus_xi());
    const double ratio = p.complement() / (2.0 * p.value());  // ξ/(1 − ξ)
    return -log_head - ratio * std::log(xi);
}

inline double trace_power(double P, double q) { return trace_power(Purity::from_value(P), q); }
inline double renyi(double P, double q) { return renyi(Purity::from_value(P), q); }
inline double renyi2(double P) { return renyi2(Purity::from_value(P)); }
inline double renyi3(double P) { return renyi3(Purity::from_value(P)); }
inline double von_neumann(double P) { return von_neumann(Purity::from_value(P)); }
inline double linear_entropy(double P) { return linear_entropy(Purity::from_value(P)); }

struct Spectrum {
    std::vector<double> eigenvalues;  // λ_0 .. λ_{n_max}
    double tail;                      // Σ_{n > n_max} λ_n = ξ^{n_max+1}
};

inline Spectrum spectrum(const Purity &p, std::size_t n_max) {
    const double xi = p.xi();
    const double head = p.one_minus_xi();
    Spectrum out;
    out.eigenvalues.reserve(n_max + 1);
    double power = 1.0;
    for (std::size_t n = 0; n <= n_max; ++n) {
        out.eigenvalues.push_back(head * power);
        power *= xi;
    }
    out.tail = std::pow(xi, double(n_max + 1));
    return out;
}

inline Spectrum spectrum(double P, std::size_t n_max) { return spectrum(Purity::from_value(P), n_max); }

/// Smallest n_max with ξ^{n_max+1} < tail.
inline std::size_t adaptive_cutoff(const Purity &p, double tail = 1e-16) {
    if (!(tail > 0.0) || !(tail < 1.0)) throw InvalidInput("tail bound must lie in (0, 1)");
    const double xi = p.xi();
    if (xi == 0.0) return 0;
    constexpr double kMaxTerms = 5e7;
    const double n = std::floor(std::log(tail) / std::log(xi));
    if (n > kMaxTerms) throw InvalidInput("spectrum too flat for an explicit cutoff (purity too small)");
    return n < 0.0 ? 0 : std::size_t(n);
}

struct EntropyResult {
    double purity;
    double xi;
    std::vector<std::pair<double, double>> values;  // (q, S_q), ascending q
};

/// Entropies at the requested orders; orders within 1e-9 of 1 give S₁.
inline EntropyResult entropies(const Purity &p, std::span<const double> orders) {
    EntropyResult r{p.value(), p.xi(), {}};
    for (double q : orders) {
        const double s = std::abs(q - 1.0) <= 1e-9 ? von_neumann(p) : renyi(p, q);
        r.values.emplace_back(q, s);
    }
    std::sort(r.values.begin(), r.values.end());
    return r;
}

}  // namespace coho
