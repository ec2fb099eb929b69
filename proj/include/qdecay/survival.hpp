#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <stdexcept>
#include <vector>

#include "qdecay/complex_math.hpp"
#include "qdecay/propagator.hpp"

namespace qdecay {

/// Survival amplitude of the initial bound state under a quench to strength
/// ratio mu, measured against the freely phase-evolving initial state
/// (so A(t) = 1 for all t when mu = 1).
///
/// The closed form is an erfc expression; it is evaluated with the scaled
/// erfc and the explicit cancellation bracket 1/sqrt(pi) - s erfcx(s) so that
/// no term grows with t and A(0) = 1, A(t; mu=1) = 1 hold exactly.
inline Complex survival_amplitude(double t, double mu) {
    if (!(t >= 0.0)) throw std::invalid_argument("survival_amplitude: requires t >= 0");
    detail::require_mu(mu);
    if (t == 0.0) return 1.0;
    const Complex s = sqrt_it(t);
    const Complex erfc_s = erfc_complex(s);
    const Complex erfc_mus = erfc_complex(mu * s);
    const Complex omega = 1.0 / kSqrtPi - s * erfc_scaled(s);
    const Complex e_mit = std::exp(Complex(0.0, -t));
    const double mu2 = mu * mu;
    const Complex total = (1.0 + mu2) * erfc_s +
                          2.0 * (1.0 - mu2) * e_mit * s * omega +
                          2.0 * mu * std::exp(Complex(0.0, t * (mu2 - 1.0))) *
                              (2.0 - erfc_mus);
    return total / ((1.0 + mu) * (1.0 + mu));
}

/// Full-release (mu = 0) special case of the survival amplitude.
inline Complex survival_amplitude_mu0(double t) {
    if (!(t >= 0.0)) throw std::invalid_argument("survival_amplitude_mu0: requires t >= 0");
    if (t == 0.0) return 1.0;
    const Complex s = sqrt_it(t);
    const Complex omega = 1.0 / kSqrtPi - s * erfc_scaled(s);
    return erfc_complex(s) + 2.0 * std::exp(Complex(0.0, -t)) * s * omega;
}

/// Non-decay probability P(t) = |A(t)|^2, clamped to [0, 1].  Roundoff may
/// push |A| above 1 by ~1e-15; anything beyond 1e-9 is treated as a bug.
inline double survival_probability(double t, double mu) {
    const double p = std::norm(survival_amplitude(t, mu));
    if (p > 1.0 + 1e-9)
        throw std::runtime_error("survival_probability: |A|^2 exceeds unity beyond tolerance");
    return std::clamp(p, 0.0, 1.0);
}

/// Oscillation-averaged limit of P(t) as t -> infinity: 16 mu^2/(1+mu)^4.
inline double survival_probability_limit(double mu) {
    detail::require_mu(mu);
    const double d = 1.0 + mu;
    return 16.0 * mu * mu / (d * d * d * d);
}

/// Escape probability 1 - P(t), computed as 2 Re(1-A) - |1-A|^2 so that the
/// tiny short-time escape is not lost to cancellation against 1.
inline double escape_probability(double t, double mu) {
    const Complex d = 1.0 - survival_amplitude(t, mu);
    return std::max(0.0, 2.0 * d.real() - std::norm(d));
}

/// Long-time asymptotic amplitude (t > 10, mu > 0): constant-modulus leading
/// term 4 mu/(1+mu)^2 with a t^{-3/2} oscillating correction.
inline Complex survival_amplitude_longtime(double t, double mu) {
    if (!(mu > 0.0)) throw std::invalid_argument("survival_amplitude_longtime: requires mu > 0");
    if (!(t > 10.0))
        throw RegimeError("survival_amplitude_longtime: outside asymptotic domain (needs t > 10)");
    const double mu2 = mu * mu;
    const double beta = (mu - 1.0 / mu) * (mu - 1.0 / mu) /
                        (4.0 * mu * kSqrtPi * std::pow(t, 1.5));
    const Complex corr = beta * std::exp(Complex(0.0, -t * mu2 - 0.75 * kPi));
    return 4.0 * mu / ((1.0 + mu) * (1.0 + mu)) *
           std::exp(Complex(0.0, t * (mu2 - 1.0))) * (1.0 + corr);
}

/// Long-time asymptotic P(t): plateau plus t^{-3/2} cosine ripple of angular
/// frequency mu^2.
inline double survival_probability_longtime(double t, double mu) {
    if (!(mu > 0.0)) throw std::invalid_argument("survival_probability_longtime: requires mu > 0");
    if (!(t > 10.0))
        throw RegimeError("survival_probability_longtime: outside asymptotic domain (needs t > 10)");
    const double mu2 = mu * mu;
    const double ripple = (mu - 1.0 / mu) * (mu - 1.0 / mu) /
                          (2.0 * mu * kSqrtPi * std::pow(t, 1.5)) *
                          std::cos(t * mu2 + 0.75 * kPi);
    return survival_probability_limit(mu) * (1.0 + ripple);
}

/// Fractional-power short-time series of A(t), truncated at half-power
/// `order`: order 2 keeps terms through t, 3 through t^{3/2}, 4 through t^2,
/// 5 through t^{5/2}.  All corrections carry (mu-1) factors, so the series
/// is identically 1 at mu = 1.
inline Complex survival_amplitude_shorttime(double t, double mu, int order) {
    if (!(t >= 0.0)) throw std::invalid_argument("survival_amplitude_shorttime: requires t >= 0");
    detail::require_mu(mu);
    if (order < 1 || order > 5)
        throw std::invalid_argument("survival_amplitude_shorttime: order must be in 1..5");
    if (!(t < 0.1))
        throw RegimeError("survival_amplitude_shorttime: outside asymptotic domain (needs t < 0.1)");
    const double m1 = mu - 1.0;
    const double m1sq = m1 * m1;
    Complex a = 1.0;
    if (order >= 2) a += Complex(0.0, 2.0 * m1 * t);
    if (order >= 3)
        a += 8.0 * m1sq * std::pow(t, 1.5) / (3.0 * kSqrtPi) *
             Complex(-kInvSqrt2, kInvSqrt2);                     // (-1)^{3/4}
    if (order >= 4) a += -m1sq * mu * t * t;
    if (order >= 5)
        a += -8.0 * m1sq * (2.0 * mu * mu - 1.0) * std::pow(t, 2.5) / (15.0 * kSqrtPi) *
             Complex(kInvSqrt2, kInvSqrt2);                      // (-1)^{1/4}
    return a;
}

/// Leading fractional escape law 1 - P ~ (8/3) sqrt(2/pi) (mu-1)^2 t^{3/2}.
inline double escape_probability_shorttime(double t, double mu) {
    if (!(t >= 0.0)) throw std::invalid_argument("escape_probability_shorttime: requires t >= 0");
    detail::require_mu(mu);
    if (!(t < 0.1))
        throw RegimeError("escape_probability_shorttime: outside asymptotic domain (needs t < 0.1)");
    const double m1 = mu - 1.0;
    return 8.0 / 3.0 * std::sqrt(2.0 / kPi) * m1 * m1 * std::pow(t, 1.5);
}

/// Survival amplitude by direct quadrature of the overlap of the evolved
/// field with the phase-evolving initial state.  Cross-validates the two
/// closed forms against each other.
inline Complex survival_overlap_numeric(double t, double mu, double abs_tol = 1e-7) {
    detail::require_time(t);
    detail::require_mu(mu);
    const double L = 40.0 + 10.0 * std::sqrt(t);
    auto integrand = [&](double x) { return std::exp(-x) * psi_exact(x, t, mu); };
    const IntegrationResult r = integrate(integrand, 0.0, L, 0.5 * abs_tol, {1.0, 10.0});
    if (!r.converged)
        throw std::runtime_error(
            "survival_overlap_numeric: quadrature did not converge (error estimate " +
            std::to_string(r.error_estimate) + ")");
    return 2.0 * std::exp(Complex(0.0, -t)) * r.value;  // parity doubles the half-line
}

enum class SurvivalMethod { exact, quadrature, short_time, long_time };

inline const char* to_string(SurvivalMethod m) {
    switch (m) {
        case SurvivalMethod::exact: return "exact";
        case SurvivalMethod::quadrature: return "quadrature";
        case SurvivalMethod::short_time: return "short_time";
        case SurvivalMethod::long_time: return "long_time";
    }
    return "?";
}

/// Time series of A(t) and P(t) with method provenance.
struct SurvivalSeries {
    std::vector<double> times;
    std::vector<Complex> amplitudes;
    std::vector<double> probabilities;
    double mu = 0.0;
    SurvivalMethod method = SurvivalMethod::exact;
};

inline Complex survival_amplitude_by(SurvivalMethod m, double t, double mu) {
    switch (m) {
        case SurvivalMethod::exact: return survival_amplitude(t, mu);
        case SurvivalMethod::quadrature:
            return t == 0.0 ? Complex(1.0) : survival_overlap_numeric(t, mu);
        case SurvivalMethod::short_time: return survival_amplitude_shorttime(t, mu, 5);
        case SurvivalMethod::long_time: return survival_amplitude_longtime(t, mu);
    }
    throw std::invalid_argument("unknown survival method");
}

/// Build a series over strictly increasing sample times.  Probabilities are
/// |A|^2 clamped into [0, 1]; an overshoot beyond 1e-9 is an error.
inline SurvivalSeries make_survival_series(std::span<const double> times, double mu,
                                           SurvivalMethod method = SurvivalMethod::exact) {
    SurvivalSeries s;
    s.mu = mu;
    s.method = method;
    s.times.assign(times.begin(), times.end());
    for (std::size_t i = 0; i < s.times.size(); ++i) {
        if (!(s.times[i] >= 0.0) || (i > 0 && !(s.times[i] > s.times[i - 1])))
            throw std::invalid_argument("make_survival_series: times must be increasing and >= 0");
        const Complex a = survival_amplitude_by(method, s.times[i], mu);
        const double p = std::norm(a);
        if (p > 1.0 + 1e-9)
            throw std::runtime_error("make_survival_series: probability exceeds unity beyond tolerance");
        s.amplitudes.push_back(a);
        s.probabilities.push_back(std::clamp(p, 0.0, 1.0));
    }
    return s;
}

} // namespace qdecay
