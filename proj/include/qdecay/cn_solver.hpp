#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <span>
#include <stdexcept>
#include <vector>

#include "qdecay/grid.hpp"
#include "qdecay/model.hpp"
#include "qdecay/survival.hpp"

namespace qdecay {

/// Configuration for the grid-propagation reference solver.
struct OracleConfig {
    GridSpec grid;
    double dt = 5e-5;
    double mu = 3.0;
    double well_width = 0.0;    // 0 = single-node delta; > 0 = square well
    double cap_strength = 0.0;  // absorbing layer (imaginary potential) peak
    double cap_width = 0.0;

    void validate() const {
        if (!(dt > 0.0)) throw std::invalid_argument("OracleConfig: dt must be > 0");
        if (!(mu >= 0.0)) throw std::invalid_argument("OracleConfig: mu must be >= 0");
        if (well_width < 0.0 || cap_strength < 0.0 || cap_width < 0.0)
            throw std::invalid_argument("OracleConfig: negative parameter");
        const double h = grid.spacing();
        if (well_width > 0.0) {
            const double m = well_width / h;
            if (std::abs(m - std::round(m)) > 1e-6)
                throw std::invalid_argument("OracleConfig: well_width must be a multiple of h");
        }
        if (cap_width > 0.0 && 2.0 * cap_width >= grid.x_max - grid.x_min)
            throw std::invalid_argument("OracleConfig: absorbing layers overlap");
    }
};

/// On-grid potential of a well with integral -2 mu.
///
/// well_width = 0 puts -2 mu / h on the single node nearest x = 0;
/// well_width = m h puts depth -2 mu / well_width on the m nodes with
/// -well_width/2 <= x < well_width/2, so the integral is -2 mu either way.
inline std::vector<double> build_potential(const OracleConfig& cfg) {
    cfg.validate();
    const GridSpec& g = cfg.grid;
    std::vector<double> v(g.n_points, 0.0);
    if (cfg.mu == 0.0) return v;
    const double h = g.spacing();
    if (cfg.well_width == 0.0) {
        const int i0 = static_cast<int>(std::lround((0.0 - g.x_min) / h));
        if (i0 < 0 || i0 >= g.n_points)
            throw std::invalid_argument("build_potential: grid does not contain x = 0");
        v[i0] = -2.0 * cfg.mu / h;
        return v;
    }
    if (cfg.well_width < h - 1e-12 * h)
        throw std::invalid_argument("build_potential: well narrower than one grid cell");
    const double depth = -2.0 * cfg.mu / cfg.well_width;
    const double half = 0.5 * cfg.well_width;
    const double tol = 1e-6 * h;
    for (int i = 0; i < g.n_points; ++i) {
        const double x = g.x(i);
        if (x >= -half - tol && x < half - tol) v[i] = depth;
    }
    return v;
}

/// Quadratic absorbing ramp on the outer cap_width of each box edge.
inline std::vector<double> build_cap(const OracleConfig& cfg) {
    cfg.validate();
    const GridSpec& g = cfg.grid;
    std::vector<double> w(g.n_points, 0.0);
    if (cfg.cap_strength == 0.0 || cfg.cap_width == 0.0) return w;
    for (int i = 0; i < g.n_points; ++i) {
        const double x = g.x(i);
        const double dl = (g.x_min + cfg.cap_width) - x;
        const double dr = x - (g.x_max - cfg.cap_width);
        const double d = std::max({dl, dr, 0.0}) / cfg.cap_width;
        w[i] = cfg.cap_strength * d * d;
    }
    return w;
}

namespace detail {

// Apply H = -D2 + diag(V) with Dirichlet boundaries (real field).
inline void apply_h(std::span<const double> v, std::span<const double> pot,
                    double h, std::vector<double>& out) {
    const int n = static_cast<int>(v.size());
    const double h2inv = 1.0 / (h * h);
    out.assign(n, 0.0);
    for (int i = 1; i + 1 < n; ++i)
        out[i] = -(v[i - 1] - 2.0 * v[i] + v[i + 1]) * h2inv + pot[i] * v[i];
    out[0] = (2.0 * v[0] - v[1]) * h2inv + pot[0] * v[0];
    out[n - 1] = (2.0 * v[n - 1] - v[n - 2]) * h2inv + pot[n - 1] * v[n - 1];
}

inline double dot_h(std::span<const double> a, std::span<const double> b, double h) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s * h;
}

// Solve (T - sigma I) x = rhs for the real symmetric tridiagonal
// T = -D2 + diag(pot).  Plain Thomas; T - sigma is diagonally dominant for
// sigma below the spectrum.
inline void solve_shifted(std::span<const double> pot, double h, double sigma,
                          std::span<const double> rhs, std::vector<double>& x) {
    const int n = static_cast<int>(rhs.size());
    const double h2inv = 1.0 / (h * h);
    const double off = -h2inv;
    std::vector<double> c(n), d(n);
    double den = 2.0 * h2inv + pot[0] - sigma;
    if (den == 0.0) throw std::runtime_error("solve_shifted: zero pivot");
    c[0] = off / den;
    d[0] = rhs[0] / den;
    for (int i = 1; i < n; ++i) {
        den = 2.0 * h2inv + pot[i] - sigma - off * c[i - 1];
        if (den == 0.0) throw std::runtime_error("solve_shifted: zero pivot");
        c[i] = off / den;
        d[i] = (rhs[i] - off * d[i - 1]) / den;
    }
    x.assign(n, 0.0);
    x[n - 1] = d[n - 1];
    for (int i = n - 2; i >= 0; --i) x[i] = d[i] - c[i] * x[i + 1];
}

} // namespace detail

/// Lowest eigenstate of -D2 + diag(V) by Rayleigh-quotient iteration,
/// L2-normalized, converged to residual ||Hv - Ev|| <= 1e-10.
/// Throws std::runtime_error when the potential binds no state.
inline ComplexField ground_state(std::span<const double> potential, const GridSpec& grid,
                                 double* eigenvalue_out = nullptr) {
    if (static_cast<int>(potential.size()) != grid.n_points)
        throw std::invalid_argument("ground_state: potential length != grid");
    const double vmin = *std::min_element(potential.begin(), potential.end());
    if (!(vmin < 0.0)) throw std::runtime_error("ground_state: no bound state (V >= 0)");
    const double h = grid.spacing();
    const int n = grid.n_points;

    // start from a kink exponential centred on the well
    int imin = 0;
    for (int i = 0; i < n; ++i)
        if (potential[i] < potential[imin]) imin = i;
    const double xw = grid.x(imin);
    std::vector<double> v(n), hv, w;
    for (int i = 0; i < n; ++i) v[i] = std::exp(-std::abs(grid.x(i) - xw));
    double nv = std::sqrt(detail::dot_h(v, v, h));
    for (auto& a : v) a /= nv;

    detail::apply_h(v, potential, h, hv);
    double sigma = detail::dot_h(v, hv, h);
    double resid = 0.0;
    bool converged = false;
    for (int it = 0; it < 60; ++it) {
        detail::solve_shifted(potential, h, sigma, v, w);
        const double nw = std::sqrt(detail::dot_h(w, w, h));
        for (auto& a : w) a /= nw;
        v = w;
        detail::apply_h(v, potential, h, hv);
        sigma = detail::dot_h(v, hv, h);
        double r2 = 0.0;
        for (int i = 0; i < n; ++i) {
            const double d = hv[i] - sigma * v[i];
            r2 += d * d;
        }
        resid = std::sqrt(r2 * h);
        if (resid <= 1e-10) { converged = true; break; }
    }
    if (!converged)
        throw std::runtime_error("ground_state: iteration stalled at residual " +
                                 std::to_string(resid));
    if (!(sigma < 0.0)) throw std::runtime_error("ground_state: no negative eigenvalue found");

    // ground state of a Sturm-Liouville operator is nodeless
    int sign_changes = 0;
    const double big = *std::max_element(v.begin(), v.end(),
                                         [](double a, double b) { return std::abs(a) < std::abs(b); });
    double prev = 0.0;
    for (double a : v) {
        if (std::abs(a) < 1e-8 * std::abs(big)) continue;
        if (prev != 0.0 && a * prev < 0.0) ++sign_changes;
        prev = a;
    }
    if (sign_changes > 0)
        throw std::runtime_error("ground_state: converged to an excited state");

    if (big < 0.0)
        for (auto& a : v) a = -a;
    if (eigenvalue_out) *eigenvalue_out = sigma;

    ComplexField f;
    f.grid = grid;
    f.mu = 0.0;
    f.values.assign(v.begin(), v.end());
    return f;
}

/// Crank-Nicolson propagator: n_steps of
///   (I + i dt/2 H) psi_new = (I - i dt/2 H) psi_old,
/// H = -D2 + diag(V - i W), Dirichlet box.  Exactly norm-preserving for
/// W = 0 up to solver roundoff.  The constant tridiagonal factorization is
/// reused across steps, and the sweeps run in extended precision: in double
/// the per-step rounding bias accumulates to ~1e-8 norm drift over 1e4
/// steps, extended precision keeps it near 1e-15.
inline ComplexField propagate_cn(ComplexField psi, std::span<const double> potential,
                                 std::span<const double> cap, double dt, long n_steps) {
    using CL = std::complex<long double>;
    psi.validate();
    const int n = psi.grid.n_points;
    if (static_cast<int>(potential.size()) != n || static_cast<int>(cap.size()) != n)
        throw std::invalid_argument("propagate_cn: potential/cap length != grid");
    if (!(dt > 0.0)) throw std::invalid_argument("propagate_cn: dt must be > 0");
    double vmax = 0.0;
    for (double p : potential) vmax = std::max(vmax, std::abs(p));
    if (dt * vmax > 0.5)
        std::fprintf(stderr,
                     "propagate_cn: warning: dt*max|V| = %.3g > 0.5; time step is coarse "
                     "for the well depth\n", dt * vmax);

    const double h = psi.grid.spacing();
    const long double h2inv = 1.0L / ((long double)h * h);
    const CL idt2(0.0L, 0.5L * dt);
    const CL off_p = idt2 * (-h2inv);   // forward-matrix off-diagonal
    const CL off_m = -off_p;            // rhs-matrix off-diagonal

    std::vector<CL> diag_p(n), diag_m(n), cprime(n), inv_den(n);
    for (int i = 0; i < n; ++i) {
        const CL hz = 2.0L * h2inv + CL(potential[i], -cap[i]);
        diag_p[i] = 1.0L + idt2 * hz;
        diag_m[i] = 1.0L - idt2 * hz;
    }
    CL den = diag_p[0];
    for (int i = 0; i < n; ++i) {
        if (i > 0) den = diag_p[i] - off_p * cprime[i - 1];
        if (std::abs(den) < 1e-300L)
            throw std::runtime_error("propagate_cn: tridiagonal solve failure");
        inv_den[i] = 1.0L / den;
        cprime[i] = off_p * inv_den[i];
    }

    std::vector<CL> u(psi.values.begin(), psi.values.end()), rhs(n), y(n);
    for (long step = 0; step < n_steps; ++step) {
        rhs[0] = diag_m[0] * u[0] + off_m * u[1];
        for (int i = 1; i + 1 < n; ++i)
            rhs[i] = diag_m[i] * u[i] + off_m * (u[i - 1] + u[i + 1]);
        rhs[n - 1] = diag_m[n - 1] * u[n - 1] + off_m * u[n - 2];

        y[0] = rhs[0] * inv_den[0];
        for (int i = 1; i < n; ++i) y[i] = (rhs[i] - off_p * y[i - 1]) * inv_den[i];
        u[n - 1] = y[n - 1];
        for (int i = n - 2; i >= 0; --i) u[i] = y[i] - cprime[i] * u[i + 1];
    }
    for (int i = 0; i < n; ++i)
        psi.values[i] = Complex(static_cast<double>(u[i].real()),
                                static_cast<double>(u[i].imag()));
    psi.time += dt * static_cast<double>(n_steps);
    return psi;
}

/// A quench run: prepare the pre-quench bound state, switch the well
/// strength to mu at t = 0, propagate, and record survival overlaps (and
/// optional field snapshots).
struct QuenchResult {
    SurvivalSeries series;
    std::vector<ComplexField> snapshots;
    double initial_energy = -1.0;
};

inline QuenchResult quench_experiment(const OracleConfig& cfg,
                                      std::span<const double> t_samples,
                                      std::span<const double> snapshot_times = {}) {
    cfg.validate();
    for (std::size_t i = 0; i < t_samples.size(); ++i)
        if (!(t_samples[i] >= 0.0) || (i > 0 && !(t_samples[i] > t_samples[i - 1])))
            throw std::invalid_argument("quench_experiment: t_samples must be increasing and >= 0");

    QuenchResult out;
    ComplexField psi0;
    if (cfg.well_width == 0.0) {
        // delta well: the pre-quench bound state is known analytically
        psi0 = sample_field(cfg.grid, [](double x) { return psi_initial(x, 0.0); });
        normalize_field(psi0);
        out.initial_energy = -1.0;
    } else {
        OracleConfig pre = cfg;
        pre.mu = 1.0;  // pre-quench well has unit strength ratio
        const std::vector<double> v0 = build_potential(pre);
        psi0 = ground_state(v0, cfg.grid, &out.initial_energy);
    }

    const std::vector<double> pot = build_potential(cfg);
    const std::vector<double> cap = build_cap(cfg);

    ComplexField psi = psi0;
    psi.mu = cfg.mu;
    out.series.mu = cfg.mu;
    out.series.method = SurvivalMethod::quadrature;

    // merge sample and snapshot times into one forward march on the dt lattice
    std::vector<std::pair<long, int>> events;  // (step index, 0=sample 1=snapshot)
    for (double t : t_samples) events.emplace_back(std::lround(t / cfg.dt), 0);
    for (double t : snapshot_times) events.emplace_back(std::lround(t / cfg.dt), 1);
    std::sort(events.begin(), events.end());

    long step_now = 0;
    for (const auto& [step_target, kind] : events) {
        if (step_target > step_now) {
            psi = propagate_cn(std::move(psi), pot, cap, cfg.dt, step_target - step_now);
            step_now = step_target;
        }
        const double t_actual = cfg.dt * static_cast<double>(step_now);
        if (kind == 0) {
            // overlap against the phase-evolving initial state: conj(e^{-i E_i t})
            const Complex raw = field_overlap(psi0, psi);
            const Complex a = raw * std::exp(Complex(0.0, out.initial_energy * t_actual));
            out.series.times.push_back(t_actual);
            out.series.amplitudes.push_back(a);
            out.series.probabilities.push_back(std::clamp(std::norm(a), 0.0, 1.0));
        } else {
            ComplexField snap = psi;
            snap.time = t_actual;
            out.snapshots.push_back(std::move(snap));
        }
    }
    return out;
}

} // namespace qdecay
