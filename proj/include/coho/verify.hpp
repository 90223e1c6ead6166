#pragma once

// The full oracle suite: a fixed grid plus seeded random points.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "coho/oracle.hpp"

namespace coho::verify {

using oracle::OracleReport;

struct Options {
    std::uint64_t seed = 1;
    double tolerance_scale = 1.0;  // multiplies every check tolerance
    std::size_t random_points = 3;

    void validate() const {
        if (!std::isfinite(tolerance_scale) || !(tolerance_scale > 0.0))
            throw InvalidInput("tolerance scale must be finite and > 0");
    }
};

struct Summary {
    std::vector<OracleReport> reports;  // sorted by name
    std::size_t failed = 0;
    bool passed() const { return failed == 0; }
};

inline Summary run(const Options &opt = {}) {
    opt.validate();
    constexpr double pi = std::numbers::pi;
    const double s = opt.tolerance_scale;
    std::vector<OracleReport> out;
    std::mt19937_64 rng(opt.seed);

    auto frame = [](double eta, double theta, double u) {
        return frame_from_reduced(ReducedPoint(eta, theta, u));
    };

    // Purity and reduced-density fit on the fixed grid and at random points.
    std::vector<ReducedPoint> points;
    for (double eta : {0.5, 1.0, 3.0})
        for (double theta : {pi / 8, pi / 4, pi / 2})
            for (double u : {0.3, 1.0, 5.0}) points.emplace_back(eta, theta, u);
    std::uniform_real_distribution<double> d_eta(0.2, 3.0), d_theta(0.05, pi - 0.05), d_u(0.2, 5.0);
    for (std::size_t i = 0; i < opt.random_points; ++i) {
        const double eta = d_eta(rng), theta = d_theta(rng), u = d_u(rng);
        points.emplace_back(eta, theta, u);
    }
    for (const auto &p : points) {
        const auto f = frame(p.eta, p.theta, p.u);
        out.push_back(oracle::oracle_purity(f, p.u, {}, 1e-6 * s));
        out.push_back(oracle::oracle_reduced_fit(f, p.u, {}, 1e-7 * s));
    }

    for (double P : {1.0 / std::cosh(2.0), 0.5, 0.9, 1.0})
        for (double q : {1.0, 2.0, 3.0, 5.0}) out.push_back(oracle::oracle_spectrum_entropy(P, q, 1e-10 * s));

    struct Case {
        double eta, theta, u;
    };
    for (const Case c : {Case{0.0, pi / 2, 1.0}, Case{1.0, pi / 2, 1.0}, Case{2.0, pi / 3, 0.5}}) {
        const auto f = frame(c.eta, c.theta, c.u);
        const auto pts = oracle::sample_wavefunction_points(f, c.u, 5, rng());
        out.push_back(oracle::oracle_schrodinger_residual(f, c.u, pts, 1e-4, 1e-4 * s));
        out.push_back(oracle::oracle_schrodinger_order(f, c.u, pts, 1e-4, 0.125 * s));
    }

    {
        const oracle::Endpoints origin[] = {{0.0, 0.0, 0.0, 0.0}};
        out.push_back(oracle::oracle_composition(frame(0.0, pi / 2, 1.0), 0.5, 0.5, origin, {}, 1e-6 * s));
        const auto f = frame(1.0, pi / 2, 1.0);
        const auto ends = oracle::sample_endpoints(f, 1.0, 5, rng());
        out.push_back(oracle::oracle_composition(f, 0.5, 0.5, ends, {}, 1e-6 * s));
        out.push_back(oracle::oracle_composition(f, 0.1, 0.9, ends, {}, 1e-6 * s));
    }

    std::stable_sort(out.begin(), out.end(),
                     [](const OracleReport &a, const OracleReport &b) { return a.name < b.name; });
    Summary sum{std::move(out), 0};
    sum.failed = std::size_t(std::count_if(sum.reports.begin(), sum.reports.end(),
                                           [](const OracleReport &r) { return !r.passed; }));
    return sum;
}

inline std::string format(const OracleReport &r) {
    char buf[512];
    std::snprintf(buf, sizeof buf, "%s %s closed=%.12g oracle=%.12g rel_err=%.3e tol=%.3e",
                  r.passed ? "PASS" : "FAIL", r.name.c_str(), r.closed_form, r.oracle_value,
                  r.rel_error, r.tolerance);
    std::string line = buf;
    if (!r.detail.empty()) line += " [" + r.detail + "]";
    return line;
}

}  // namespace coho::verify
