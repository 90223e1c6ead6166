#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <vector>

#include "coho/oracle.hpp"
#include "coho/verify.hpp"

using namespace coho;
using namespace coho::oracle;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

constexpr double pi = std::numbers::pi;

DerivedFrame<> reduced(double eta, double theta, double u) {
    return frame_from_reduced(ReducedPoint(eta, theta, u));
}

}  // namespace

TEST_CASE("Gauss-Legendre rule integrates polynomials exactly") {
    const auto rule = quadrature::gauss_legendre(16);
    double w = 0.0, x2 = 0.0, x30 = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        w += rule.weights[i];
        x2 += rule.weights[i] * rule.nodes[i] * rule.nodes[i];
        x30 += rule.weights[i] * std::pow(rule.nodes[i], 30);
    }
    CHECK_THAT(w, WithinRel(2.0, 1e-15));
    CHECK_THAT(x2, WithinRel(2.0 / 3.0, 1e-14));
    CHECK_THAT(x30, WithinRel(2.0 / 31.0, 1e-13));
}

TEST_CASE("log-space quadrature of an offset Gaussian") {
    const auto rule = quadrature::gauss_legendre(64);
    const auto r = quadrature::integrate_log_1d(
        [](double x) { return -2.5 * (x - 3.0) * (x - 3.0) + 700.0; }, rule, 6.0, 0.0, 1.0);
    CHECK_THAT(r.log_value, WithinAbs(700.0 + 0.5 * std::log(pi / 2.5), 1e-12));
    CHECK(r.tail_mass < 1e-12);

    const auto r2 = quadrature::integrate_log_2d(
        [](double x, double y) { return -(3.0 * x * x + 0.5 * y * y - 2.0 * x * y) + 1.0; }, rule, 6.0,
        {0.0, 0.0}, 1.0);
    CHECK_THAT(r2.log_value, WithinAbs(1.0 + std::log(pi / std::sqrt(3.0 * 0.5 - 1.0)), 1e-11));
}

TEST_CASE("QuadratureSpec validation") {
    CHECK_THROWS_AS((QuadratureSpec{8, 6.0}.validate()), InvalidInput);
    CHECK_THROWS_AS((QuadratureSpec{64, 3.0}.validate()), InvalidInput);
    CHECK_NOTHROW((QuadratureSpec{16, 4.0}.validate()));
}

TEST_CASE("oracle_purity reference cases") {
    const auto pure = oracle_purity(reduced(0.0, pi / 2, 1.0), 1.0);
    CHECK(pure.closed_form == 1.0);
    CHECK(pure.rel_error < 1e-8);

    const auto mid = oracle_purity(reduced(1.0, pi / 2, 1.0), 1.0);
    CHECK(mid.passed);
    CHECK(mid.rel_error < 1e-6);

    const auto stress = oracle_purity(reduced(3.0, pi / 4, 0.3), 0.3);
    CHECK(stress.passed);
    CHECK(stress.rel_error == relative_error(stress.closed_form, stress.oracle_value));
}

TEST_CASE("oracle_purity with physical constants") {
    const auto f = derive_frame(OscillatorSystem<>{2.0, 0.5, 3.0, 1.5, 1.2, 0.7});
    const auto r = oracle_purity(f, 1.7);
    CHECK(r.passed);
    CHECK(oracle_reduced_fit(f, 1.7).passed);
}

TEST_CASE("doubling the quadrature order leaves the purity unchanged") {
    for (double eta : {0.5, 1.0, 3.0})
        for (double theta : {pi / 8, pi / 4, pi / 2})
            for (double u : {0.3, 1.0, 5.0}) {
                const auto f = reduced(eta, theta, u);
                const double a = oracle_purity(f, u, {64, 6.0}).oracle_value;
                const double b = oracle_purity(f, u, {128, 6.0}).oracle_value;
                CHECK(std::abs(a - b) < 1e-9);
            }
}

TEST_CASE("oracle_reduced_fit reference cases") {
    const auto product = oracle_reduced_fit(reduced(0.0, 1.0, 1.0), 1.0);
    CHECK(product.passed);
    const auto f = reduced(0.0, 1.0, 1.0);
    CHECK(reduced_density(wavefunction_form(f, 1.0)).b_r == 0.0);

    CHECK(oracle_reduced_fit(reduced(1.0, pi / 2, 1.0), 1.0).rel_error < 1e-7);
    CHECK(oracle_reduced_fit(reduced(2.0, pi / 3, 5.0), 5.0).rel_error < 1e-7);
}

TEST_CASE("oracle_spectrum_entropy reference cases") {
    const auto a = oracle_spectrum_entropy(1.0, 3.0);
    CHECK(a.closed_form == 1.0);
    CHECK(a.oracle_value == 1.0);
    const auto b = oracle_spectrum_entropy(0.5, 2.0);
    CHECK_THAT(b.closed_form, WithinRel(0.5, 1e-15));
    CHECK_THAT(b.oracle_value, WithinRel(0.5, 1e-14));
    CHECK(oracle_spectrum_entropy(1.0 / std::cosh(2.0), 1.0).rel_error < 1e-10);
    CHECK(oracle_spectrum_entropy(0.999999, 1.0).passed);
    CHECK(oracle_spectrum_entropy(0.01, 1.0).passed);
}

TEST_CASE("Schrodinger residual") {
    const auto sep = reduced(0.0, pi / 2, 1.0);
    const auto pts0 = sample_wavefunction_points(sep, 1.0, 5, 17);
    CHECK(oracle_schrodinger_residual(sep, 1.0, pts0).rel_error < 1e-6);

    const auto f = reduced(1.0, pi / 2, 1.0);
    const auto pts = sample_wavefunction_points(f, 1.0, 5, 18);
    const auto r = oracle_schrodinger_residual(f, 1.0, pts);
    CHECK(r.passed);
    CHECK(r.rel_error < 1e-4);
    CHECK_THAT(schrodinger_convergence_order(f, 1.0, pts), WithinAbs(2.0, 0.25));

    const auto phys = derive_frame(OscillatorSystem<>{1.3, 0.6, 2.0, 0.8, -0.9, 1.4});
    const auto pp = sample_wavefunction_points(phys, 0.8, 5, 19);
    CHECK(oracle_schrodinger_residual(phys, 0.8, pp).passed);

    CHECK_THROWS_AS(oracle_schrodinger_residual(f, 1e-4, pts), InvalidInput);
}

TEST_CASE("Schrodinger residual detects a wrong energy shift") {
    auto f = reduced(1.0, pi / 2, 1.0);
    const auto pts = sample_wavefunction_points(f, 1.0, 5, 20);
    auto wrong = f;
    wrong.E0 *= 1.01;
    CHECK_FALSE(oracle_schrodinger_residual(wrong, 1.0, pts).passed);
}

TEST_CASE("composition of propagators") {
    const Endpoints origin[] = {{0.0, 0.0, 0.0, 0.0}};
    const auto sep = oracle_composition(reduced(0.0, pi / 2, 1.0), 0.5, 0.5, origin);
    CHECK(sep.rel_error < 1e-8);

    const auto f = reduced(1.0, pi / 2, 1.0);
    const auto ends = sample_endpoints(f, 1.0, 5, 23);
    CHECK(oracle_composition(f, 0.5, 0.5, ends).rel_error < 1e-6);
    CHECK(oracle_composition(f, 0.1, 0.9, ends).rel_error < 1e-6);
    CHECK_THROWS_AS(oracle_composition(f, 0.5, 0.0, ends), InvalidInput);
}

TEST_CASE("sampled points stay inside the requested ellipse") {
    const auto f = reduced(2.0, pi / 3, 0.5);
    const auto wf = wavefunction_form(f, 0.5);
    for (const auto &p : sample_wavefunction_points(f, 0.5, 200, 1)) {
        const double q = wf.alpha_t * p[0] * p[0] + wf.beta_t * p[1] * p[1] - 2 * wf.gamma_t * p[0] * p[1];
        CHECK(q <= 0.5 * 4.0 * (1.0 + 1e-12));  // (2 sigma)^2 with sigma^2 = 1/(2 lambda)
    }
}

TEST_CASE("verify suite passes and is deterministic") {
    const auto a = verify::run();
    CHECK(a.passed());
    CHECK(a.reports.size() > 60);
    const auto b = verify::run();
    REQUIRE(a.reports.size() == b.reports.size());
    for (std::size_t i = 0; i < a.reports.size(); ++i) CHECK(verify::format(a.reports[i]) == verify::format(b.reports[i]));
    for (std::size_t i = 1; i < a.reports.size(); ++i) CHECK(a.reports[i - 1].name <= a.reports[i].name);
    for (const auto &r : a.reports) CHECK(r.passed == (r.rel_error <= r.tolerance));
}

TEST_CASE("verify suite fails under tightened tolerances") {
    verify::Options opt;
    opt.tolerance_scale = 1e-3;
    CHECK_FALSE(verify::run(opt).passed());
    opt.tolerance_scale = 0.0;
    CHECK_THROWS_AS(verify::run(opt), InvalidInput);
}
