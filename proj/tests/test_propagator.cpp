#include <catch2/catch.hpp>

#include <cmath>
#include <random>
#include <thread>

#include "qdecay/propagator.hpp"
#include "qdecay/quadrature.hpp"

using qdecay::Complex;
using qdecay::kernel;
using qdecay::kernel_free;
using qdecay::psi_exact;
using qdecay::psi_exact_mu0;
using qdecay::RegimeError;

namespace {

// ||psi(.,t)||^2 integrated out to where the ballistic momentum tail of the
// released state is below the tolerance budget.
double norm_sq(double t, double mu, double abs_tol = 1e-7) {
    const double L = 40.0 + 90.0 * t;
    auto density = [&](double x) { return Complex(std::norm(psi_exact(x, t, mu)), 0.0); };
    const auto r = qdecay::integrate(density, 0.0, L, abs_tol, {1.0, 10.0, 40.0});
    REQUIRE(r.converged);
    return 2.0 * r.value.real();
}

} // namespace

TEST_CASE("free kernel basics") {
    const Complex k1 = kernel_free(1.0, -2.0, 0.3);
    CHECK(std::abs(k1) == Approx(1.0 / (2.0 * std::sqrt(qdecay::kPi * 0.3))).epsilon(1e-14));
    CHECK(kernel_free(0.4, 1.1, 0.2) == kernel_free(1.1, 0.4, 0.2));
    CHECK_THROWS_AS(kernel_free(0.0, 0.0, 0.0), std::invalid_argument);
}

TEST_CASE("free kernel propagates a gaussian to the closed form") {
    // psi0 = e^{-x^2}: sigma^2 = 1/4, and psi(x,t) = sqrt(s2/(s2+it)) e^{-x^2/(4(s2+it))}
    const double x = 0.5, t = 0.1, s2 = 0.25;
    auto integrand = [&](double xp) { return kernel_free(x, xp, t) * std::exp(-xp * xp); };
    const auto r = qdecay::integrate(integrand, -10.0, 10.0, 1e-12, {x});
    REQUIRE(r.converged);
    const Complex d(s2, t);
    const Complex want = std::sqrt(Complex(s2, 0.0) / d) * std::exp(-x * x / (4.0 * d));
    CHECK(std::abs(r.value - want) < 1e-8);
}

TEST_CASE("kernel reduces to the free kernel at mu = 0") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> pos(-3.0, 3.0), tau(0.05, 2.0);
    for (int i = 0; i < 5; ++i) {
        const double x = pos(rng), xp = pos(rng), t = tau(rng);
        CHECK(kernel(x, xp, t, 0.0) == kernel_free(x, xp, t));
    }
}

TEST_CASE("kernel propagates the eigenstate at mu = 1") {
    const double x = 0.7, t = 0.5;
    auto psi0 = [](double xp) { return qdecay::psi_initial(xp, 0.0); };
    const Complex got = qdecay::propagate_by_kernel_fn(psi0, x, t, 1.0);
    const Complex want = std::exp(Complex(-x, t));
    CHECK(std::abs(got - want) < 1e-8);
}

TEST_CASE("kernel at the origin approaches the bound-state projector") {
    const Complex k = kernel(0.0, 0.0, 200.0, 3.0);
    CHECK(std::abs(std::abs(k) - 3.0) < 0.03);
}

TEST_CASE("identity quench leaves the eigenstate untouched") {
    const double x = 0.3, t = 2.7;
    const Complex got = psi_exact(x, t, 1.0);
    CHECK(std::abs(got - std::exp(Complex(-x, t))) < 1e-12);
}

TEST_CASE("short times recover the initial condition") {
    CHECK(std::abs(psi_exact(1.0, 1e-8, 3.0) - std::exp(-1.0)) < 1e-3);
}

TEST_CASE("exact field against a frozen reference value") {
    // mpmath (dps=50) evaluation at (x, t, mu) = (0.5, 0.2, 3)
    const Complex want(-0.047924145036158124431, 0.24609148391608133786);
    CHECK(std::abs(psi_exact(0.5, 0.2, 3.0) - want) < 1e-13);
}

TEST_CASE("exact field equals kernel propagation of the initial state") {
    auto psi0 = [](double xp) { return qdecay::psi_initial(xp, 0.0); };
    for (double mu : {0.0, 0.5, 3.0}) {
        for (double t : {0.1, 0.4, 1.1}) {
            for (double x : {0.0, 0.5, 1.2, -2.3, 4.0}) {
                const Complex via_kernel = qdecay::propagate_by_kernel_fn(psi0, x, t, mu);
                CHECK(std::abs(via_kernel - psi_exact(x, t, mu)) < 1e-6);
            }
        }
    }
}

TEST_CASE("semigroup property of the kernel") {
    const double t1 = 0.1, t2 = 0.2, mu = 3.0;
    auto state_t1 = [&](double xp) { return psi_exact(xp, t1, mu); };
    for (double x : {0.0, 0.4, 1.3}) {
        const Complex got = qdecay::propagate_by_kernel_fn(state_t1, x, t2, mu);
        CHECK(std::abs(got - psi_exact(x, t1 + t2, mu)) < 1e-5);
    }
}

TEST_CASE("kernel propagation of a sampled field") {
    const double mu = 3.0, t = 0.3;
    const qdecay::GridSpec g(-45.0, 45.0, 18001);
    const auto field = qdecay::sample_field(g, [](double x) { return qdecay::psi_initial(x, 0.0); });
    const Complex got = qdecay::propagate_by_kernel(field, 0.4, t, mu);
    CHECK(std::abs(got - psi_exact(0.4, t, mu)) < 1e-4);

    // a field whose boundary values are not negligible is rejected
    const qdecay::GridSpec tiny(-2.0, 2.0, 201);
    const auto cramped = qdecay::sample_field(tiny, [](double x) { return qdecay::psi_initial(x, 0.0); });
    CHECK_THROWS_AS(qdecay::propagate_by_kernel(cramped, 0.0, t, mu), std::invalid_argument);
}

TEST_CASE("mu = 0 closed form matches the general expression") {
    double worst = 0.0;
    for (int i = 0; i <= 100; ++i) {
        const double x = -10.0 + 0.2 * i;
        worst = std::max(worst, std::abs(psi_exact_mu0(x, 0.7) - psi_exact(x, 0.7, 0.0)));
    }
    CHECK(worst <= 1e-13);
    CHECK(std::abs(psi_exact_mu0(0.0, 1e-12) - 1.0) < 1e-3);
}

TEST_CASE("released state develops the algebraic far tail") {
    // |psi| ~ x^{-2} for x >> 2t: amplitude ratio 30 -> 60 at t = 1
    const double r30 = std::abs(psi_exact_mu0(30.0, 1.0));
    const double r60 = std::abs(psi_exact_mu0(60.0, 1.0));
    CHECK(r30 / r60 == Approx(3.9865).epsilon(0.01));
}

TEST_CASE("unitarity of the exact field") {
    for (double mu : {0.0, 0.5, 1.0, 3.0})
        for (double t : {0.07, 0.2, 0.7, 5.0})
            CHECK(norm_sq(t, mu) == Approx(1.0).margin(1e-4));
}

TEST_CASE("parity and regularity at the origin") {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> pos(0.1, 6.0);
    for (int i = 0; i < 5; ++i) {
        const double x = pos(rng);
        CHECK(psi_exact(x, 0.4, 2.0) == psi_exact(-x, 0.4, 2.0));
    }
    // derivative jump -2 mu psi(0) at t > 0
    const double mu = 3.0, t = 0.3, h = 1e-5;
    const Complex p0 = psi_exact(0.0, t, mu);
    const Complex dplus = (psi_exact(h, t, mu) - p0) / h;
    const Complex dminus = (p0 - psi_exact(-h, t, mu)) / h;
    const Complex jump = dplus - dminus;
    CHECK(std::abs(jump + 2.0 * mu * p0) / std::abs(2.0 * mu * p0) < 1e-3);
}

TEST_CASE("far-field form") {
    const Complex ff = qdecay::psi_farfield(20.0, 1.0, 0.0);
    const Complex ex = psi_exact_mu0(20.0, 1.0);
    CHECK(std::abs(ff - ex) / std::abs(ex) < 0.05);

    // modulus profile: |psi| (1 + (x/2t)^2) is constant in the tail
    const double c20 = std::abs(qdecay::psi_farfield(20.0, 1.0, 0.0)) * (1.0 + 100.0);
    const double c40 = std::abs(qdecay::psi_farfield(40.0, 1.0, 0.0)) * (1.0 + 400.0);
    const double c80 = std::abs(qdecay::psi_farfield(80.0, 1.0, 0.0)) * (1.0 + 1600.0);
    CHECK(c40 == Approx(c20).epsilon(1e-12));
    CHECK(c80 == Approx(c20).epsilon(1e-12));

    // carrier phase e^{i x^2/4t}: the residual argument is constant
    const double a1 = std::arg(qdecay::psi_farfield(20.0, 1.0, 0.0) *
                               std::exp(Complex(0.0, -400.0 / 4.0)));
    const double a2 = std::arg(qdecay::psi_farfield(40.0, 1.0, 0.0) *
                               std::exp(Complex(0.0, -1600.0 / 4.0)));
    CHECK(std::abs(a1 - a2) < 0.05);

    // nonzero quench ratio
    const Complex ff3 = qdecay::psi_farfield(20.0, 1.0, 3.0);
    const Complex ex3 = psi_exact(20.0, 1.0, 3.0);
    CHECK(std::abs(ff3 - ex3) / std::abs(ex3) < 0.05);

    CHECK_THROWS_AS(qdecay::psi_farfield(2.0, 1.0, 0.0), RegimeError);
}

TEST_CASE("short-time form") {
    // mu = 1: correction vanishes identically
    CHECK(std::abs(qdecay::psi_shorttime(2.0, 0.1, 1.0) - std::exp(Complex(-2.0, 0.1))) < 1e-16);

    const Complex st = qdecay::psi_shorttime(10.0, 0.01, 0.0);
    const Complex ex = psi_exact_mu0(10.0, 0.01);
    CHECK(std::abs(st - ex) / std::abs(ex) < 0.02);

    // correction term scales as t^{3/2}
    const double x = 6.0;
    const double c1 = std::abs(qdecay::psi_shorttime(x, 1e-3, 0.0) - std::exp(Complex(-x, 1e-3)));
    const double c4 = std::abs(qdecay::psi_shorttime(x, 4e-3, 0.0) - std::exp(Complex(-x, 4e-3)));
    CHECK(c4 / c1 == Approx(8.0).epsilon(0.02));

    CHECK_THROWS_AS(qdecay::psi_shorttime(1.0, 0.5, 0.0), RegimeError);
}

TEST_CASE("long-time form") {
    const Complex lt = qdecay::psi_longtime(0.0, 500.0, 3.0);
    const Complex ex = psi_exact(0.0, 500.0, 3.0);
    CHECK(std::abs(lt - ex) <= 1e-2);

    // bound component alone carries probability 4 mu/(1+mu)^2 <= 1
    const double mu = 3.0;
    const double cb = 2.0 * mu / (1.0 + mu);
    CHECK(cb * cb / mu == Approx(0.75).epsilon(1e-15));

    // mu = 1: dispersive term vanishes, bound term is the eigenstate
    const Complex lt1 = qdecay::psi_longtime(5.0, 200.0, 1.0);
    CHECK(std::abs(lt1 - std::exp(Complex(-5.0, 200.0))) < 1e-15);

    CHECK_THROWS_AS(qdecay::psi_longtime(0.0, 5.0, 3.0), RegimeError);
    CHECK_THROWS_AS(qdecay::psi_longtime(0.0, 100.0, 0.0), std::invalid_argument);
}

TEST_CASE("closed forms stay finite out to t = 1e6") {
    for (double t : {1e5, 1e6}) {
        const Complex v = psi_exact(0.0, t, 3.0);
        CHECK(std::isfinite(v.real()));
        CHECK(std::isfinite(v.imag()));
        CHECK(std::abs(v) < 4.0);
    }
}

TEST_CASE("argument validation") {
    CHECK_THROWS_AS(psi_exact(0.5, 0.0, 3.0), std::invalid_argument);
    CHECK_THROWS_AS(psi_exact(0.5, -1.0, 3.0), std::invalid_argument);
    CHECK_THROWS_AS(psi_exact(0.5, 1.0, -0.1), std::invalid_argument);
    CHECK_THROWS_AS(kernel(0.0, 0.0, -0.1, 1.0), std::invalid_argument);
}

TEST_CASE("grid sweeps are safe to parallelize") {
    const qdecay::GridSpec g(-10.0, 10.0, 801);
    std::vector<Complex> serial(g.n_points), parallel(g.n_points);
    for (int i = 0; i < g.n_points; ++i) serial[i] = psi_exact(g.x(i), 0.2, 3.0);
    std::vector<std::thread> pool;
    const int n_threads = 4;
    for (int tix = 0; tix < n_threads; ++tix)
        pool.emplace_back([&, tix] {
            for (int i = tix; i < g.n_points; i += n_threads)
                parallel[i] = psi_exact(g.x(i), 0.2, 3.0);
        });
    for (auto& th : pool) th.join();
    CHECK(parallel == serial);
}
