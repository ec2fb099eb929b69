#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>

namespace qdecay {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kSqrtPi = 1.77245385090551602730;
inline constexpr double kInvSqrt2 = 0.70710678118654752440;

/// sqrt(i*t) on the principal branch, pinned as e^{i pi/4} sqrt(t).
/// Computing it this way (rather than std::sqrt of a product) keeps the
/// branch fixed for all t > 0.
inline Complex sqrt_it(double t) {
    if (!(t > 0.0))
        throw std::invalid_argument("sqrt_it: requires t > 0");
    const double r = std::sqrt(t) * kInvSqrt2;
    return {r, r};
}

namespace detail {

// e^{i pi u} with the argument reduced in exact half-turn arithmetic, so
// integer and half-integer u give exact axis values.
inline Complex cis_pi(double u) {
    const double r = std::remainder(u, 2.0);          // in [-1, 1], exact
    const int k = static_cast<int>(std::lround(2.0 * r));
    const double q = r - 0.5 * static_cast<double>(k);  // in [-1/4, 1/4], exact
    const double c = std::cos(kPi * q);
    const double s = std::sin(kPi * q);
    switch ((k + 4) % 4) {
        case 0: return {c, s};
        case 1: return {-s, c};
        case 2: return {-c, -s};
        default: return {s, -c};
    }
}

// Faddeeva function w(z) = e^{-z^2} erfc(-iz) for Im(z) >= 0.
//
// Trapezoidal quadrature of (i/pi) Int e^{-u^2}/(z-u) du with step h plus the
// residue correction for the pole row nearest the real axis.  The node set is
// offset by h/2 whenever Re(z) would come closer than h/4 to a node, which
// bounds every denominator away from zero and keeps the correction-term
// denominator |1-q| >= 1.  Truncation error ~ e^{-(pi/h)^2} ~ 7e-18 at h=1/2.
inline Complex faddeeva_upper(Complex z) {
    constexpr double h = 0.5;
    const double x = z.real();
    const double y = z.imag();

    const double k = std::round(x / h);
    const double theta = (std::abs(x - k * h) >= 0.25 * h) ? 0.0 : 0.5;

    Complex sum = 0.0;
    const int n_lo = (theta == 0.0) ? -15 : -16;  // keep the node set symmetric
    for (int n = n_lo; n <= 15; ++n) {
        const double un = (static_cast<double>(n) + theta) * h;
        sum += std::exp(-un * un) / (z - un);
    }
    Complex w = Complex(0.0, h / kPi) * sum;

    // Residue correction, valid (and needed) only below the first pole row
    // at Im(z) = pi/h; above it the term is < 1e-17 and is dropped.
    if (y < 6.0) {
        const Complex q =
            std::exp(-2.0 * kPi * y / h) * cis_pi(2.0 * (x / h - theta));
        w -= 2.0 * std::exp(-z * z) * q / (1.0 - q);
    }
    return w;
}

} // namespace detail

/// Faddeeva function w(z) = e^{-z^2} erfc(-iz) for arbitrary z.
/// For Im(z) < 0 the reflection w(z) = 2 e^{-z^2} - w(-z) applies; there the
/// function itself grows like e^{|Im z|^2} and overflows for |Im z| > ~26.
inline Complex faddeeva_w(Complex z) {
    if (z.imag() >= 0.0)
        return detail::faddeeva_upper(z);
    return 2.0 * std::exp(-z * z) - detail::faddeeva_upper(-z);
}

/// Scaled complementary error function erfcx(z) = e^{z^2} erfc(z).
/// This is the numerically safe primitive: for Re(z) >= 0 it stays O(1/|z|)
/// however large t-dependent arguments get, so callers can combine the
/// exponential prefactors analytically.
inline Complex erfc_scaled(Complex z) {
    if (z.real() >= 0.0)
        return detail::faddeeva_upper(Complex(-z.imag(), z.real()));  // w(iz)
    // erfcx grows like 2 e^{z^2} in this half-plane; overflow here means the
    // true value is not representable.
    return 2.0 * std::exp(z * z) -
           detail::faddeeva_upper(Complex(z.imag(), -z.real()));      // w(-iz)
}

/// Complementary error function for complex argument.
/// Relative accuracy ~1e-13 against an arbitrary-precision reference for
/// |z| <= 10 (see tests/data/erfc_reference.inc).
inline Complex erfc_complex(Complex z) {
    if (z.real() >= 0.0)
        return std::exp(-z * z) *
               detail::faddeeva_upper(Complex(-z.imag(), z.real()));
    return 2.0 - erfc_complex(-z);
}

/// Error function, erf(z) = 1 - erfc(z).  A Maclaurin series takes over for
/// |z| <= 1 where the subtraction from 1 would lose relative accuracy.
inline Complex erf_complex(Complex z) {
    const double r2 = std::norm(z);
    if (r2 <= 1.0) {
        if (r2 == 0.0) return 0.0;
        const Complex mz2 = -z * z;
        Complex term = z;
        Complex sum = z;
        for (int n = 1; n < 40; ++n) {
            term *= mz2 / static_cast<double>(n);
            const Complex inc = term / static_cast<double>(2 * n + 1);
            sum += inc;
            if (std::norm(inc) < 1e-34 * std::norm(sum)) break;
        }
        return (2.0 / kSqrtPi) * sum;
    }
    return 1.0 - erfc_complex(z);
}

} // namespace qdecay
