#include <catch2/catch.hpp>

#include <cmath>

#include "qdecay/model.hpp"
#include "qdecay/quadrature.hpp"

using qdecay::Complex;
using qdecay::ModelParams;
using qdecay::UnitMap;

TEST_CASE("initial bound state values") {
    CHECK(qdecay::psi_initial(0.0, 0.0) == Complex(1.0, 0.0));
    CHECK(qdecay::psi_initial(2.0, 0.0).real() == Approx(std::exp(-2.0)).epsilon(1e-15));
    CHECK(qdecay::psi_initial(2.0, 0.0).imag() == 0.0);
    CHECK(qdecay::psi_initial(-1.5, 0.3) == qdecay::psi_initial(1.5, 0.3));
}

TEST_CASE("initial state has unit norm") {
    auto density = [](double x) { return Complex(std::norm(qdecay::psi_initial(x, 0.0)), 0.0); };
    const auto r = qdecay::integrate(density, -40.0, 40.0, 1e-12, {0.0});
    CHECK(r.converged);
    CHECK(r.value.real() == Approx(1.0).margin(1e-10));
}

TEST_CASE("final bound state") {
    CHECK(qdecay::psi_bound_final(0.0, 0.0, 1.0) == Complex(1.0, 0.0));
    const double mu = 3.0;
    auto density = [&](double x) { return Complex(std::norm(qdecay::psi_bound_final(x, 0.0, mu)), 0.0); };
    const auto r = qdecay::integrate(density, -20.0, 20.0, 1e-12, {0.0});
    CHECK(r.value.real() == Approx(1.0).margin(1e-10));
    CHECK_THROWS_AS(qdecay::psi_bound_final(0.0, 0.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(qdecay::psi_bound_final(0.0, 0.0, -1.0), std::invalid_argument);
}

TEST_CASE("final state evolves by a global phase only") {
    const double mu = 2.5, t = 7.3;
    for (double x : {-3.0, -0.4, 0.0, 1.7, 5.0}) {
        const double m0 = std::abs(qdecay::psi_bound_final(x, 0.0, mu));
        const double mt = std::abs(qdecay::psi_bound_final(x, t, mu));
        CHECK(std::abs(mt - m0) <= 1e-14 * std::max(1.0, m0));
    }
}

TEST_CASE("bound-state overlap") {
    const double mu = 3.0;
    CHECK(qdecay::bound_overlap(mu) == Approx(2.0 * std::sqrt(3.0) / 4.0).epsilon(1e-15));
    auto integrand = [&](double x) {
        return std::conj(qdecay::psi_bound_final(x, 0.0, mu)) * qdecay::psi_initial(x, 0.0);
    };
    const auto r = qdecay::integrate(integrand, -40.0, 40.0, 1e-12, {0.0});
    CHECK(r.value.real() == Approx(0.8660254037844386).margin(1e-10));
    CHECK(std::abs(r.value.imag()) < 1e-12);
}

TEST_CASE("bound energies") {
    CHECK(qdecay::bound_energy(1.0) == -1.0);
    CHECK(qdecay::bound_energy(3.0) == -9.0);
    CHECK(qdecay::bound_energy(0.5) == -0.25);
    CHECK_THROWS_AS(qdecay::bound_energy(0.0), std::invalid_argument);
}

TEST_CASE("delta-well jump condition of the initial state") {
    const double h = 1e-6;
    const Complex p0 = qdecay::psi_initial(0.0, 0.0);
    const Complex dplus = (qdecay::psi_initial(h, 0.0) - p0) / h;
    const Complex dminus = (p0 - qdecay::psi_initial(-h, 0.0)) / h;
    CHECK(std::abs((dplus - dminus) - (-2.0 * p0)) < 1e-4);
}

TEST_CASE("model parameters") {
    const ModelParams p(2.0, 6.0);
    CHECK(p.mu == Approx(3.0).epsilon(1e-14));
    CHECK(p.alpha.value() == 2.0);
    CHECK(p.lambda.value() == 6.0);
    CHECK_THROWS_AS(ModelParams(0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(ModelParams(-0.5), std::invalid_argument);
    CHECK(ModelParams(0.0).mu == 0.0);
}

TEST_CASE("unit map round-trips") {
    const UnitMap u(2.0);
    CHECK(u.to_physical_x(4.0) == 2.0);
    CHECK(u.to_physical_t(8.0) == 2.0);
    CHECK(u.to_dimensionless_x(u.to_physical_x(1.234)) == Approx(1.234).epsilon(1e-15));
    CHECK(u.to_dimensionless_t(u.to_physical_t(9.87)) == Approx(9.87).epsilon(1e-15));
    CHECK_THROWS_AS(UnitMap(0.0), std::invalid_argument);
}
