#pragma once

#include <cmath>
#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include "qdecay/cn_solver.hpp"
#include "qdecay/fitting.hpp"
#include "qdecay/propagator.hpp"
#include "qdecay/reference_data.hpp"
#include "qdecay/survival.hpp"

namespace qdecay::verify {

inline std::string format_compact(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%g", v);
    return buf;
}

struct CheckResult {
    std::string id;
    std::string description;
    double measured = 0.0;
    double threshold = 0.0;
    bool less_is_pass = true;  // pass iff measured <= threshold (after tol scaling)
    bool passed = false;
};

struct VerifyOptions {
    double tol_scale = 1.0;          // multiplies every threshold
    std::optional<double> mu;        // overrides mu where a suite is parametric
};

namespace detail {

inline CheckResult check_le(std::string id, std::string desc, double measured,
                            double threshold, const VerifyOptions& opt) {
    CheckResult c;
    c.id = std::move(id);
    c.description = std::move(desc);
    c.measured = measured;
    c.threshold = threshold * opt.tol_scale;
    c.less_is_pass = true;
    c.passed = measured <= c.threshold;
    return c;
}

inline CheckResult check_ge(std::string id, std::string desc, double measured,
                            double threshold, const VerifyOptions& opt) {
    CheckResult c;
    c.id = std::move(id);
    c.description = std::move(desc);
    c.measured = measured;
    c.threshold = threshold / opt.tol_scale;
    c.less_is_pass = false;
    c.passed = measured >= c.threshold;
    return c;
}

inline double field_norm_quadrature(double t, double mu) {
    const double box = 40.0 + 90.0 * t;
    auto density = [&](double x) { return Complex(std::norm(psi_exact(x, t, mu)), 0.0); };
    const auto r = integrate(density, 0.0, box, 1e-7, {1.0, 10.0, 40.0});
    return std::sqrt(2.0 * r.value.real());
}

inline std::vector<double> log_spaced(double lo, double hi, int n) {
    std::vector<double> t(n);
    for (int i = 0; i < n; ++i) t[i] = lo * std::pow(hi / lo, i / double(n - 1));
    return t;
}

// |P - P_inf| envelope maxima over [t_lo, t_hi]
inline std::vector<std::pair<double, double>> plateau_envelope(double mu, double t_lo,
                                                               double t_hi, double dt) {
    const double pinf = survival_probability_limit(mu);
    std::vector<double> ts, vs;
    for (double t = t_lo; t <= t_hi; t += dt) {
        ts.push_back(t);
        vs.push_back(std::abs(survival_probability(t, mu) - pinf));
    }
    return local_maxima(ts, vs);
}

inline ComplexField sample_exact(const GridSpec& g, double t, double mu) {
    return sample_field(g, [&](double x) { return psi_exact(x, t, mu); }, t, mu);
}

inline ComplexField restrict_window(const ComplexField& f, double lo, double hi) {
    const double h = f.grid.spacing();
    const int i0 = static_cast<int>(std::lround((lo - f.grid.x_min) / h));
    const int i1 = static_cast<int>(std::lround((hi - f.grid.x_min) / h));
    ComplexField out;
    out.grid = GridSpec(f.grid.x(i0), f.grid.x(i1), i1 - i0 + 1);
    out.values.assign(f.values.begin() + i0, f.values.begin() + i1 + 1);
    out.time = f.time;
    out.mu = f.mu;
    return out;
}

} // namespace detail

/// Criterion 1: the identity quench (mu = 1) is exact.
inline std::vector<CheckResult> criterion_1(const VerifyOptions& opt = {}) {
    std::vector<CheckResult> out;
    const GridSpec g(-10.0, 10.0, 2001);
    for (double t : {0.1, 1.0, 10.0}) {
        double worst = 0.0;
        for (int i = 0; i < g.n_points; ++i) {
            const double x = g.x(i);
            worst = std::max(worst,
                             std::abs(psi_exact(x, t, 1.0) - std::exp(Complex(-std::abs(x), t))));
        }
        out.push_back(detail::check_le("1:psi t=" + format_compact(t),
                                       "max |psi - e^{it-|x|}| on 2001-point grid", worst, 1e-12, opt));
        out.push_back(detail::check_le("1:A t=" + format_compact(t), "|A(t) - 1|",
                                       std::abs(survival_amplitude(t, 1.0) - 1.0), 1e-12, opt));
    }
    return out;
}

/// Criterion 2: unit L2 norm of the exact field.
inline std::vector<CheckResult> criterion_2(const VerifyOptions& opt = {}) {
    std::vector<CheckResult> out;
    for (double mu : {0.0, 0.5, 3.0})
        for (double t : {0.07, 0.2, 0.7, 5.0}) {
            const double n = detail::field_norm_quadrature(t, mu);
            out.push_back(detail::check_le(
                "2:mu=" + format_compact(mu) + ",t=" + format_compact(t),
                "|  ||psi|| - 1 |", std::abs(n - 1.0), 1e-4, opt));
        }
    return out;
}

/// Criterion 3: closed-form amplitude vs direct overlap quadrature.
inline std::vector<CheckResult> criterion_3(const VerifyOptions& opt = {}) {
    std::vector<CheckResult> out;
    for (double mu : {0.0, 0.5, 3.0})
        for (double t : {0.05, 0.3, 1.0, 5.0}) {
            const double d =
                std::abs(survival_overlap_numeric(t, mu) - survival_amplitude(t, mu));
            out.push_back(detail::check_le(
                "3:mu=" + format_compact(mu) + ",t=" + format_compact(t),
                "|overlap quadrature - closed form|", d, 1e-6, opt));
        }
    return out;
}

/// Criterion 4: fractional t^{3/2} escape law from a log-log fit.
inline std::vector<CheckResult> criterion_4(const VerifyOptions& opt = {}) {
    std::vector<CheckResult> out;
    const auto ts = detail::log_spaced(1e-4, 1e-2, 200);
    auto fit_for = [&](double mu) {
        std::vector<double> esc;
        for (double t : ts) esc.push_back(escape_probability(t, mu));
        return fit_power_law(ts, esc, 0.99e-4, 1.01e-2);
    };
    const auto f3 = fit_for(3.0);
    out.push_back(detail::check_le("4:exponent mu=3", "|exponent - 1.5|",
                                   std::abs(f3.exponent - 1.5), 0.02, opt));
    const double coef_law = 8.0 / 3.0 * std::sqrt(2.0 / kPi) * 4.0;
    out.push_back(detail::check_le("4:coefficient mu=3",
                                   "|coefficient/" + format_compact(coef_law) + " - 1|",
                                   std::abs(f3.coefficient / coef_law - 1.0), 0.01, opt));
    for (double mu : {0.5, 0.0}) {
        const auto f = fit_for(mu);
        out.push_back(detail::check_le("4:exponent mu=" + format_compact(mu),
                                       "|exponent - 1.5| (and far from 2)",
                                       std::abs(f.exponent - 1.5), 0.05, opt));
    }
    return out;
}

/// Criterion 5: long-time plateau, envelope decay, oscillation frequency.
inline std::vector<CheckResult> criterion_5(const VerifyOptions& opt = {}) {
    std::vector<CheckResult> out;
    const double mu = 3.0;
    const double pinf = survival_probability_limit(mu);

    const double period = 2.0 * kPi / (mu * mu);
    const int n = 2000;
    double avg = 0.0;
    for (int i = 0; i <= n; ++i) {
        const double t = 200.0 + period * i / n;
        avg += ((i == 0 || i == n) ? 0.5 : 1.0) * survival_probability(t, mu);
    }
    avg /= n;
    out.push_back(detail::check_le("5:plateau", "|<P> over one period at t=200 - 0.5625|",
                                   std::abs(avg - pinf), 1e-3, opt));

    const auto peaks = detail::plateau_envelope(mu, 20.0, 200.0, 0.01);
    std::vector<double> pt, pv;
    for (const auto& [a, b] : peaks) {
        pt.push_back(a);
        pv.push_back(b);
    }
    const auto env = fit_power_law(pt, pv, 19.9, 200.1);
    out.push_back(detail::check_le("5:envelope", "|envelope exponent + 1.5|",
                                   std::abs(env.exponent + 1.5), 0.05, opt));

    std::vector<double> ts, vs;
    for (double t = 20.0; t <= 60.0; t += 0.005) {
        ts.push_back(t);
        vs.push_back(survival_probability(t, mu) - pinf);
    }
    const auto signed_peaks = local_maxima(ts, vs);
    const double omega = 2.0 * kPi / mean_peak_spacing(signed_peaks);
    out.push_back(detail::check_le("5:frequency", "|omega/mu^2 - 1|",
                                   std::abs(omega / (mu * mu) - 1.0), 0.02, opt));
    return out;
}

/// Criterion 6: Crank-Nicolson adjudication of the exact field at the
/// stated resolution (h = 0.005, dt = 5e-5, box [-60, 60], mu = 3).
inline std::vector<CheckResult> criterion_6(const VerifyOptions& opt = {}) {
    std::vector<CheckResult> out;
    OracleConfig cfg;
    cfg.grid = GridSpec(-60.0, 60.0, 24001);
    cfg.dt = 5e-5;
    cfg.mu = opt.mu.value_or(3.0);
    const std::vector<double> snaps{0.07, 0.2, 0.7};
    const auto run = quench_experiment(cfg, {}, snaps);
    double err_dt_02 = 0.0;
    for (const auto& s : run.snapshots) {
        const auto exact = detail::sample_exact(cfg.grid, s.time, cfg.mu);
        const auto full = compare_fields(s, exact);
        if (std::abs(s.time - 0.2) < 1e-9) err_dt_02 = full.l2_abs;
        out.push_back(detail::check_le("6:l2 t=" + format_compact(s.time),
                                       "relative L2 error vs closed form, box [-60,60]",
                                       full.l2_rel, 1e-3, opt));
    }
    OracleConfig half = cfg;
    half.dt = 0.5 * cfg.dt;
    const auto run_half = quench_experiment(half, {}, std::vector<double>{0.2});
    const auto exact02 = detail::sample_exact(cfg.grid, run_half.snapshots[0].time, cfg.mu);
    const double err_half = compare_fields(run_half.snapshots[0], exact02).l2_abs;
    const double ratio = err_dt_02 / err_half;
    out.push_back(detail::check_le("6:dt ratio", "error(dt)/error(dt/2) at t=0.2 (at most 4x)",
                                   ratio, 4.0, opt));
    return out;
}

/// Criterion 7: long-time bound-state population from the absorbing-boundary
/// oracle run equals 4 mu/(1+mu)^2.
inline std::vector<CheckResult> criterion_7(const VerifyOptions& opt = {}) {
    const double mu = opt.mu.value_or(3.0);
    OracleConfig cfg;
    cfg.grid = GridSpec(-40.0, 40.0, 16001);  // h = 0.005
    cfg.dt = 4e-4;
    cfg.mu = mu;
    cfg.cap_strength = 0.8;
    cfg.cap_width = 12.0;
    const auto pot = build_potential(cfg);
    const auto cap = build_cap(cfg);
    ComplexField psi = sample_field(cfg.grid, [](double x) { return psi_initial(x, 0.0); });
    normalize_field(psi);
    psi = propagate_cn(std::move(psi), pot, cap, cfg.dt, std::lround(50.0 / cfg.dt));
    ComplexField bound =
        sample_field(cfg.grid, [&](double x) { return psi_bound_final(x, 0.0, mu); });
    normalize_field(bound);
    const double population = std::norm(field_overlap(bound, psi));
    const double want = 4.0 * mu / ((1.0 + mu) * (1.0 + mu));
    std::vector<CheckResult> out;
    out.push_back(detail::check_le("7:population",
                                   "| |<bound|psi(50)>|^2 / (4mu/(1+mu)^2) - 1 |",
                                   std::abs(population / want - 1.0), 0.01, opt));
    return out;
}

/// Criterion 8: finite-width well vs the point-well model at Delta x = 0.2.
inline std::vector<CheckResult> criterion_8(const VerifyOptions& opt = {}) {
    std::vector<CheckResult> out;
    OracleConfig cfg;
    cfg.grid = GridSpec(-60.0, 60.0, 24001);
    cfg.dt = 5e-5;
    cfg.mu = opt.mu.value_or(3.0);
    cfg.well_width = 0.2;
    const std::vector<double> samples{0.01, 0.1, 1.0};
    const auto run = quench_experiment(cfg, samples, {});
    std::vector<double> diff(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) {
        diff[i] = std::abs(run.series.probabilities[i] -
                           survival_probability(run.series.times[i], cfg.mu));
        out.push_back(detail::check_le("8:report t=" + format_compact(samples[i]),
                                       "|P_oracle - P_exact| (reported)", diff[i],
                                       i + 1 == samples.size() ? 0.02 : 1.0, opt));
    }
    const bool monotone = diff[0] > diff[1] && diff[1] > diff[2];
    CheckResult mono;
    mono.id = "8:trend";
    mono.description = "|P_oracle - P_exact| improves monotonically across t = 0.01, 0.1, 1";
    mono.measured = monotone ? 1.0 : 0.0;
    mono.threshold = 1.0;
    mono.less_is_pass = false;
    mono.passed = monotone;
    out.push_back(mono);

    // diagnostic: the same comparison with a 4x narrower well at the same
    // integral, showing convergence toward the point-well model as the
    // width shrinks
    OracleConfig narrow = cfg;
    narrow.well_width = 0.05;
    const auto run_narrow = quench_experiment(narrow, std::vector<double>{1.0}, {});
    const double d_narrow = std::abs(run_narrow.series.probabilities[0] -
                                     survival_probability(run_narrow.series.times[0], cfg.mu));
    out.push_back(detail::check_le("8:width=0.05 t=1",
                                   "|P_oracle - P_exact| at a 4x narrower well (diagnostic)",
                                   d_narrow, diff[2], opt));
    return out;
}

/// Criterion 9: complex erfc accuracy against the frozen reference table and
/// finiteness of every closed-form ingredient at extreme times.
inline std::vector<CheckResult> criterion_9(const VerifyOptions& opt = {}) {
    std::vector<CheckResult> out;
    double worst = 0.0;
    for (const auto& row : refdata::erfc_reference()) {
        const Complex got = erfc_complex({row.z_re, row.z_im});
        const Complex want(row.erfc_re, row.erfc_im);
        worst = std::max(worst, std::abs(got - want) / std::abs(want));
    }
    out.push_back(detail::check_le("9:table", "max relative erfc error over the reference grid",
                                   worst, 1e-12, opt));
    bool finite = true;
    for (double t : {1e5, 1e6})
        for (double x : {0.0, 1.0, 50.0}) {
            const Complex v = psi_exact(x, t, 3.0);
            finite = finite && std::isfinite(v.real()) && std::isfinite(v.imag());
        }
    CheckResult f;
    f.id = "9:finite";
    f.description = "closed-form field finite at t = 1e5..1e6";
    f.measured = finite ? 1.0 : 0.0;
    f.threshold = 1.0;
    f.less_is_pass = false;
    f.passed = finite;
    out.push_back(f);
    return out;
}

/// Criterion 10: no single exponential describes the plateau approach --
/// its log-residual must be at least 5x the power-law envelope's.
inline std::vector<CheckResult> criterion_10(const VerifyOptions& opt = {}) {
    const double mu = 3.0;
    const double pinf = survival_probability_limit(mu);

    // exponential model fitted to |P - P_inf| sampled over the window
    const auto ts = detail::log_spaced(0.1, 50.0, 200);
    std::vector<double> tt, vv;
    for (double t : ts) {
        const double v = std::abs(survival_probability(t, mu) - pinf);
        if (v > 0.0) {
            tt.push_back(t);
            vv.push_back(v);
        }
    }
    const auto efit = fit_exponential(tt, vv, 0.099, 50.1);

    // power-law model fitted to the oscillation envelope
    const auto peaks = detail::plateau_envelope(mu, 0.1, 50.0, 0.01);
    std::vector<double> pt, pv;
    for (const auto& [a, b] : peaks) {
        pt.push_back(a);
        pv.push_back(b);
    }
    const auto pfit = fit_power_law(pt, pv, 0.099, 50.1);

    std::vector<CheckResult> out;
    out.push_back(detail::check_ge("10:ratio",
                                   "exponential-fit log-residual / envelope-fit log-residual",
                                   efit.rms_log_residual / pfit.rms_log_residual, 5.0, opt));
    return out;
}

inline std::vector<CheckResult> run_criterion(int n, const VerifyOptions& opt = {}) {
    switch (n) {
        case 1: return criterion_1(opt);
        case 2: return criterion_2(opt);
        case 3: return criterion_3(opt);
        case 4: return criterion_4(opt);
        case 5: return criterion_5(opt);
        case 6: return criterion_6(opt);
        case 7: return criterion_7(opt);
        case 8: return criterion_8(opt);
        case 9: return criterion_9(opt);
        case 10: return criterion_10(opt);
    }
    throw std::invalid_argument("run_criterion: unknown criterion " + std::to_string(n));
}

/// Map of the named verification suites onto criteria.
inline std::vector<int> suite_criteria(const std::string& suite) {
    if (suite == "cerf") return {9};
    if (suite == "exact") return {1, 2};
    if (suite == "survival") return {3, 4, 5, 10};
    if (suite == "oracle") return {6, 7, 8};
    if (suite == "all") return {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
    throw std::invalid_argument("unknown verification suite: " + suite);
}

} // namespace qdecay::verify
