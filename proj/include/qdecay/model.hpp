#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>

#include "qdecay/complex_math.hpp"

namespace qdecay {

// Units: hbar = 1, 2m = 1, and space/time rescaled by the initial well
// strength so the pre-quench well has unit strength and bound energy -1.
// The quench is then described by the single ratio mu.

/// Quench parameters.  mu is the dimensionless strength ratio; alpha/lambda
/// are kept only when the caller wants to convert back to physical units.
struct ModelParams {
    double mu = 1.0;
    std::optional<double> alpha;
    std::optional<double> lambda;

    explicit ModelParams(double mu_) : mu(mu_) {
        if (!(mu >= 0.0)) throw std::invalid_argument("ModelParams: mu must be >= 0");
    }
    ModelParams(double alpha_, double lambda_)
        : mu(lambda_ / alpha_), alpha(alpha_), lambda(lambda_) {
        if (!(alpha_ > 0.0)) throw std::invalid_argument("ModelParams: alpha must be > 0");
        if (!(lambda_ >= 0.0)) throw std::invalid_argument("ModelParams: lambda must be >= 0");
    }
};

/// Maps dimensionless coordinates back to physical ones for a given
/// pre-quench strength alpha:  x_phys = x/alpha, t_phys = t/alpha^2.
struct UnitMap {
    double alpha;

    explicit UnitMap(double a) : alpha(a) {
        if (!(alpha > 0.0)) throw std::invalid_argument("UnitMap: alpha must be > 0");
    }
    double to_physical_x(double x) const { return x / alpha; }
    double to_physical_t(double t) const { return t / (alpha * alpha); }
    double to_dimensionless_x(double x) const { return x * alpha; }
    double to_dimensionless_t(double t) const { return t * alpha * alpha; }
};

/// Bound state of the pre-quench well: e^{-|x|} e^{it}, unit L2 norm.
inline Complex psi_initial(double x, double t) {
    return std::exp(Complex(-std::abs(x), t));
}

/// L2-normalized bound state of the post-quench well (exists for mu > 0):
/// sqrt(mu) e^{-mu|x|} e^{i mu^2 t}.
inline Complex psi_bound_final(double x, double t, double mu) {
    if (!(mu > 0.0))
        throw std::invalid_argument("psi_bound_final: no bound state for mu <= 0");
    return std::sqrt(mu) * std::exp(Complex(-mu * std::abs(x), mu * mu * t));
}

/// Bound-state energy of a well of strength ratio mu: -mu^2.
inline double bound_energy(double mu) {
    if (!(mu > 0.0))
        throw std::invalid_argument("bound_energy: no bound state for mu <= 0");
    return -mu * mu;
}

/// Overlap <psi_bound_final | psi_initial> at t = 0: 2 sqrt(mu)/(1 + mu).
inline double bound_overlap(double mu) {
    if (!(mu > 0.0)) throw std::invalid_argument("bound_overlap: mu must be > 0");
    return 2.0 * std::sqrt(mu) / (1.0 + mu);
}

} // namespace qdecay
