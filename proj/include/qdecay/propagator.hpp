#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

#include "qdecay/complex_math.hpp"
#include "qdecay/grid.hpp"
#include "qdecay/model.hpp"
#include "qdecay/quadrature.hpp"

namespace qdecay {

/// Thrown when an asymptotic form is requested outside its validity domain.
struct RegimeError : std::domain_error {
    using std::domain_error::domain_error;
};

namespace detail {

inline void require_time(double t) {
    if (!(t > 0.0)) throw std::invalid_argument("requires t > 0");
}

inline void require_mu(double mu) {
    if (!(mu >= 0.0)) throw std::invalid_argument("requires mu >= 0");
}

} // namespace detail

/// Free-particle propagator kernel: exp(i (x-x')^2 / 4t) / (2 sqrt(i pi t)).
inline Complex kernel_free(double x, double xp, double t) {
    detail::require_time(t);
    const double d = x - xp;
    const Complex pref =
        Complex(kInvSqrt2, -kInvSqrt2) / (2.0 * std::sqrt(kPi * t));  // 1/(2 sqrt(i pi t))
    return pref * std::exp(Complex(0.0, d * d / (4.0 * t)));
}

/// Propagator kernel of the quenched well of strength ratio mu.
///
/// The bound/scattering part (mu/2) e^{-mu(S - i mu t)} erfc((S - 2 i mu t)/(2 sqrt(it)))
/// with S = |x|+|x'| is evaluated through the scaled erfc: the exponentials
/// combine to the pure phase e^{i S^2/4t}, so nothing overflows at large t.
inline Complex kernel(double x, double xp, double t, double mu) {
    detail::require_time(t);
    detail::require_mu(mu);
    const Complex free_part = kernel_free(x, xp, t);
    if (mu == 0.0) return free_part;
    const double S = std::abs(x) + std::abs(xp);
    const double rt = std::sqrt(t);
    // (S - 2 i mu t) / (2 sqrt(it)) = e^{-i pi/4} (S/(2 sqrt t) - i mu sqrt t)
    const Complex b = Complex(kInvSqrt2, -kInvSqrt2) * Complex(S / (2.0 * rt), -mu * rt);
    const Complex phase = std::exp(Complex(0.0, S * S / (4.0 * t)));
    return free_part + 0.5 * mu * phase * erfc_scaled(b);
}

/// Exact post-quench wavefunction at t > 0 for the initial state e^{-|x|}.
///
/// Evaluated in the cancellation- and overflow-safe arrangement
///   psi = 1/2 e^{i x^2/4t} [ erfcx(a1) + c2 erfcx(a2) - c3 erfcx(a3) ]
///         + c3 e^{i mu^2 t - mu|x|},
/// a1,2 = e^{i pi/4}(sqrt t +- i |x|/(2 sqrt t)), a3 = e^{i pi/4}(mu sqrt t + i |x|/(2 sqrt t)),
/// c2 = (1-mu)/(1+mu), c3 = 2mu/(1+mu).  At mu = 1 the bracket vanishes
/// identically and psi reduces to e^{it-|x|} exactly.
inline Complex psi_exact(double x, double t, double mu) {
    detail::require_time(t);
    detail::require_mu(mu);
    const double X = std::abs(x);
    const double rt = std::sqrt(t);
    const double u = X / (2.0 * rt);
    const Complex rot(kInvSqrt2, kInvSqrt2);  // e^{i pi/4}
    const Complex a1 = rot * Complex(rt, u);
    const Complex a2 = rot * Complex(rt, -u);
    const Complex a3 = rot * Complex(mu * rt, u);
    const double c2 = (1.0 - mu) / (1.0 + mu);
    const double c3 = 2.0 * mu / (1.0 + mu);
    const Complex bracket = erfc_scaled(a1) + c2 * erfc_scaled(a2) - c3 * erfc_scaled(a3);
    const Complex phase = std::exp(Complex(0.0, X * X / (4.0 * t)));
    Complex psi = 0.5 * phase * bracket;
    if (mu > 0.0) psi += c3 * std::exp(Complex(-mu * X, mu * mu * t));
    return psi;
}

/// Free release (mu = 0): the initial bound state propagating in empty space.
inline Complex psi_exact_mu0(double x, double t) {
    detail::require_time(t);
    const double X = std::abs(x);
    const double rt = std::sqrt(t);
    const double u = X / (2.0 * rt);
    const Complex rot(kInvSqrt2, kInvSqrt2);
    const Complex a1 = rot * Complex(rt, u);
    const Complex a2 = rot * Complex(rt, -u);
    return 0.5 * std::exp(Complex(0.0, X * X / (4.0 * t))) *
           (erfc_scaled(a1) + erfc_scaled(a2));
}

/// Far-field form for x^2 >> t: the outgoing wave radiated by the potential
/// kink, an algebraic x^{-2}-amplitude tail carrying the phase e^{i x^2/4t}.
/// The surviving exponentially small e^{it-|x|} piece is not included.
inline Complex psi_farfield(double x, double t, double mu) {
    detail::require_time(t);
    detail::require_mu(mu);
    const double X = std::abs(x);
    if (!(X * X > 25.0 * t))
        throw RegimeError("psi_farfield: outside asymptotic domain (needs x^2 > 25 t)");
    const double rt = std::sqrt(t);
    const double r = X / (2.0 * rt);
    const Complex phase = std::exp(Complex(0.0, X * X / (4.0 * t)));
    const Complex emip4(kInvSqrt2, -kInvSqrt2);  // e^{-i pi/4}
    return (1.0 - mu) * phase * emip4 * (r * rt) /
           (kSqrtPi * (r * r + t) * Complex(r, -mu * rt));
}

/// Short-time form for t << x^2: initial state plus the leading fractional
/// t^{3/2} correction (it vanishes at mu = 1).
inline Complex psi_shorttime(double x, double t, double mu) {
    detail::require_time(t);
    detail::require_mu(mu);
    const double X = std::abs(x);
    if (!(t < X * X / 25.0))
        throw RegimeError("psi_shorttime: outside asymptotic domain (needs t < x^2/25)");
    const Complex lead = std::exp(Complex(-X, t));
    const Complex it32 = std::pow(t, 1.5) * Complex(-kInvSqrt2, kInvSqrt2);  // (it)^{3/2}
    const Complex phase = std::exp(Complex(0.0, X * X / (4.0 * t)));
    return lead - 4.0 * (1.0 - mu) * it32 / kSqrtPi * phase / (X * X);
}

/// Long-time form for t >> max(1, x), mu > 0: dispersive t^{-3/2} tail plus
/// the persisting bound-state component 2mu/(1+mu) e^{i mu^2 t - mu|x|}.
inline Complex psi_longtime(double x, double t, double mu) {
    detail::require_time(t);
    if (!(mu > 0.0))
        throw std::invalid_argument("psi_longtime: requires mu > 0 (no bound term otherwise)");
    const double X = std::abs(x);
    if (!(t > 10.0 * std::max(1.0, X)))
        throw RegimeError("psi_longtime: outside asymptotic domain (needs t > 10 max(1,x))");
    const Complex sqrt_i_over_pi = Complex(kInvSqrt2, kInvSqrt2) / kSqrtPi;
    const Complex dispersive = (1.0 / mu - 1.0) * sqrt_i_over_pi * X *
                               std::pow(t, -1.5) *
                               std::exp(Complex(0.0, X * X / (4.0 * t)));
    const Complex bound =
        (2.0 * mu / (1.0 + mu)) * std::exp(Complex(-mu * X, mu * mu * t));
    return dispersive + bound;
}

/// Integration half-width for kernel propagation: large enough that the
/// initial state's e^{-|x'|} tail is below 1e-17.
inline double kernel_box_halfwidth(double x, double t) {
    return std::abs(x) + 40.0 + 10.0 * std::sqrt(t);
}

/// Propagate a state forward by t under the quenched well via the kernel
/// integral Int K(x,x';t) psi0(x') dx'.  The integration is split at x'=0
/// (kink of |x'|) and x'=x (stationary point of the free phase).
/// Throws std::runtime_error if the quadrature cannot reach abs_tol.
template <typename F>
Complex propagate_by_kernel_fn(F&& psi0, double x, double t, double mu,
                               double abs_tol = 1e-8) {
    detail::require_time(t);
    detail::require_mu(mu);
    const double L = kernel_box_halfwidth(x, t);
    auto integrand = [&](double xp) { return kernel(x, xp, t, mu) * psi0(xp); };
    std::vector<double> breaks;
    if (0.0 > -L && 0.0 < L) breaks.push_back(0.0);
    if (x > -L && x < L) breaks.push_back(x);
    const IntegrationResult r = integrate(integrand, -L, L, abs_tol, breaks);
    if (!r.converged)
        throw std::runtime_error(
            "propagate_by_kernel: quadrature did not converge (error estimate " +
            std::to_string(r.error_estimate) + ")");
    return r.value;
}

/// Same, with the state given as grid samples (cubically interpolated).
/// The field must be sampled on a box wide enough that its boundary values
/// are negligible.
inline Complex propagate_by_kernel(const ComplexField& psi0, double x, double t,
                                   double mu, double abs_tol = 1e-8) {
    psi0.validate();
    const double edge = std::max(std::abs(psi0.values.front()),
                                 std::abs(psi0.values.back()));
    if (edge >= 1e-12)
        throw std::invalid_argument(
            "propagate_by_kernel: field boundary values not negligible");
    auto fn = [&](double xp) { return interpolate_field(psi0, xp); };
    // clip the integration to the field support
    const double L = std::min(kernel_box_halfwidth(x, t),
                              std::max(std::abs(psi0.grid.x_min), std::abs(psi0.grid.x_max)));
    auto integrand = [&](double xp) { return kernel(x, xp, t, mu) * fn(xp); };
    std::vector<double> breaks;
    if (0.0 > -L && 0.0 < L) breaks.push_back(0.0);
    if (x > -L && x < L) breaks.push_back(x);
    const IntegrationResult r = integrate(integrand, -L, L, abs_tol, breaks);
    if (!r.converged)
        throw std::runtime_error(
            "propagate_by_kernel: quadrature did not converge (error estimate " +
            std::to_string(r.error_estimate) + ")");
    return r.value;
}

} // namespace qdecay
