#include <catch2/catch.hpp>

#include <random>
#include <thread>

#include "qdecay/complex_math.hpp"
#include "qdecay/reference_data.hpp"

using qdecay::Complex;
using qdecay::erf_complex;
using qdecay::erfc_complex;
using qdecay::erfc_scaled;
using qdecay::faddeeva_w;

namespace {

double rel_err(Complex got, Complex want) {
    const double scale = std::abs(want);
    return scale > 0 ? std::abs(got - want) / scale : std::abs(got - want);
}

} // namespace

TEST_CASE("erfc at distinguished points") {
    CHECK(std::abs(erfc_complex({0.0, 0.0}) - 1.0) < 2e-16);
    CHECK(std::abs(erfc_scaled({0.0, 0.0}) - 1.0) < 2e-16);
    CHECK(erf_complex({0.0, 0.0}) == Complex(0.0, 0.0));

    // reference values computed with mpmath at dps=50
    const Complex e11 = erfc_complex({1.0, 1.0});
    CHECK(rel_err(e11, {-0.31615128169794764488, -0.19045346923783468628}) < 1e-13);

    const Complex arg = 3.0 * Complex(qdecay::kInvSqrt2, qdecay::kInvSqrt2);
    const Complex erf3 = erf_complex(arg);
    CHECK(rel_err(erf3, {1.1780175780881444773, -0.056409615960234747571}) < 1e-13);

    CHECK(rel_err(erfc_scaled({50.0, 0.0}), {0.0112815362653237725, 0.0}) < 1e-13);
}

TEST_CASE("erfc matches the arbitrary-precision table") {
    double worst = 0.0;
    Complex worst_z;
    for (const auto& row : qdecay::refdata::erfc_reference()) {
        const Complex z(row.z_re, row.z_im);
        const Complex want(row.erfc_re, row.erfc_im);
        const double e = rel_err(erfc_complex(z), want);
        if (e > worst) {
            worst = e;
            worst_z = z;
        }
    }
    INFO("worst relative error " << worst << " at z = " << worst_z.real() << " + "
                                 << worst_z.imag() << "i");
    CHECK(worst < 1e-12);
}

TEST_CASE("erfcx asymptotic series agreement on the real axis") {
    // independent check: erfcx(x) ~ (1/(x sqrt(pi))) sum_k (-1)^k (2k-1)!!/(2x^2)^k
    const double x = 50.0;
    double term = 1.0, sum = 1.0;
    for (int k = 1; k <= 8; ++k) {
        term *= -(2.0 * k - 1.0) / (2.0 * x * x);
        sum += term;
    }
    const double want = sum / (x * qdecay::kSqrtPi);
    CHECK(rel_err(erfc_scaled({x, 0.0}), {want, 0.0}) < 1e-14);
}

TEST_CASE("reflection and conjugation identities") {
    std::mt19937 rng(20240817);
    std::uniform_real_distribution<double> radius(0.0, 20.0);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * qdecay::kPi);
    for (int i = 0; i < 1000; ++i) {
        const double r = radius(rng), th = angle(rng);
        const Complex z(r * std::cos(th), r * std::sin(th));
        const Complex a = erfc_complex(z);
        const Complex b = erfc_complex(-z);
        const double scale = std::max({1.0, std::abs(a), std::abs(b)});
        CHECK(std::abs(a + b - 2.0) / scale < 1e-12);
        CHECK(std::abs(erfc_complex(std::conj(z)) - std::conj(a)) / scale < 1e-12);
    }
}

TEST_CASE("erf identities") {
    // odd symmetry
    const Complex z(2.0, -1.0);
    CHECK(std::abs(erf_complex(z) + erf_complex(-z)) < 1e-14);
    // reflection through the erfc route, spot value
    const Complex w(0.7, 0.3);
    CHECK(std::abs(erfc_complex(-w) - (2.0 - erfc_complex(w))) < 1e-14);
    // defining identity of the scaled form
    const Complex v(0.5, 0.5);
    CHECK(rel_err(std::exp(-v * v) * erfc_scaled(v), erfc_complex(v)) < 1e-13);
    // series/continuation seam near |z| = 1
    for (double r : {0.99, 0.999, 1.001, 1.01}) {
        const Complex s = r * Complex(0.6, 0.8);
        CHECK(rel_err(erf_complex(s), 1.0 - erfc_complex(s)) < 1e-12);
    }
}

TEST_CASE("faddeeva function basics") {
    CHECK(std::abs(faddeeva_w({0.0, 0.0}) - 1.0) < 2e-16);
    // w(iy) = erfcx(y) on the positive imaginary axis
    CHECK(rel_err(faddeeva_w({0.0, 2.0}), erfc_scaled({2.0, 0.0})) < 1e-14);
    // lower half-plane reflection w(z) = 2 e^{-z^2} - w(-z)
    const Complex z(1.3, -0.4);
    const Complex want = 2.0 * std::exp(-z * z) - faddeeva_w(-z);
    CHECK(rel_err(faddeeva_w(z), want) < 1e-13);
}

TEST_CASE("no overflow at extreme scaled-form arguments") {
    // arguments that arise in the closed forms at t up to 1e6
    for (double t : {1e4, 1e5, 1e6}) {
        const double rt = std::sqrt(t);
        for (double mu : {0.0, 1.0, 3.0}) {
            const Complex a = Complex(qdecay::kInvSqrt2, qdecay::kInvSqrt2) *
                              Complex(std::max(mu, 1.0) * rt, 1.0 / rt);
            const Complex v = erfc_scaled(a);
            CHECK(std::isfinite(v.real()));
            CHECK(std::isfinite(v.imag()));
        }
    }
}

TEST_CASE("pure functions are safe under concurrent calls") {
    const Complex z(1.7, -2.3);
    const Complex expect = erfc_complex(z);
    std::vector<std::thread> pool;
    std::vector<Complex> results(8);
    for (int i = 0; i < 8; ++i)
        pool.emplace_back([&, i] {
            Complex v;
            for (int k = 0; k < 2000; ++k) v = erfc_complex(z);
            results[i] = v;
        });
    for (auto& th : pool) th.join();
    for (const auto& v : results) CHECK(v == expect);
}
