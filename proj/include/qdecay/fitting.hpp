#pragma once

#include <cmath>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace qdecay {

/// Result of a least-squares power-law fit y = coefficient * t^exponent,
/// performed as a line fit in log-log space.
struct PowerLawFit {
    double exponent = 0.0;
    double coefficient = 0.0;
    double rms_log_residual = 0.0;
    double t_lo = 0.0;
    double t_hi = 0.0;
    int n_points = 0;
};

/// Result of a least-squares exponential fit y = amplitude * exp(-rate * t)
/// (line fit of log y against t).
struct ExponentialFit {
    double rate = 0.0;
    double amplitude = 0.0;
    double rms_log_residual = 0.0;
    int n_points = 0;
};

namespace detail {

struct LineFit {
    double slope, intercept, rms_residual;
};

inline LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    const double denom = n * sxx - sx * sx;
    if (denom == 0.0) throw std::invalid_argument("fit_line: degenerate abscissae");
    LineFit f{};
    f.slope = (n * sxy - sx * sy) / denom;
    f.intercept = (sy - f.slope * sx) / n;
    double r2 = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double d = y[i] - (f.intercept + f.slope * x[i]);
        r2 += d * d;
    }
    f.rms_residual = std::sqrt(r2 / n);
    return f;
}

inline void select_window(std::span<const double> t, std::span<const double> y,
                          double t_lo, double t_hi, bool log_abscissa,
                          std::vector<double>& xs, std::vector<double>& ys) {
    if (t.size() != y.size())
        throw std::invalid_argument("fit: times and values differ in length");
    if (!(t_lo < t_hi)) throw std::invalid_argument("fit: need t_lo < t_hi");
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (t[i] <= t_lo || t[i] >= t_hi) continue;
        if (!(y[i] > 0.0))
            throw std::invalid_argument("fit: non-positive ordinate inside window");
        xs.push_back(log_abscissa ? std::log(t[i]) : t[i]);
        ys.push_back(std::log(y[i]));
    }
    if (xs.size() < 8)
        throw std::invalid_argument("fit: fewer than 8 samples strictly inside window");
}

} // namespace detail

/// Fit y ~ C t^p over samples strictly inside (t_lo, t_hi).
/// Requires at least 8 samples with positive ordinates in the window.
inline PowerLawFit fit_power_law(std::span<const double> t, std::span<const double> y,
                                 double t_lo, double t_hi) {
    std::vector<double> xs, ys;
    detail::select_window(t, y, t_lo, t_hi, /*log_abscissa=*/true, xs, ys);
    const detail::LineFit f = detail::fit_line(xs, ys);
    PowerLawFit out;
    out.exponent = f.slope;
    out.coefficient = std::exp(f.intercept);
    out.rms_log_residual = f.rms_residual;
    out.t_lo = t_lo;
    out.t_hi = t_hi;
    out.n_points = static_cast<int>(xs.size());
    return out;
}

/// Fit y ~ A e^{-r t} over samples strictly inside (t_lo, t_hi).
inline ExponentialFit fit_exponential(std::span<const double> t, std::span<const double> y,
                                      double t_lo, double t_hi) {
    std::vector<double> xs, ys;
    detail::select_window(t, y, t_lo, t_hi, /*log_abscissa=*/false, xs, ys);
    const detail::LineFit f = detail::fit_line(xs, ys);
    ExponentialFit out;
    out.rate = -f.slope;
    out.amplitude = std::exp(f.intercept);
    out.rms_log_residual = f.rms_residual;
    out.n_points = static_cast<int>(xs.size());
    return out;
}

/// Interior local maxima of a sampled curve, with parabolic refinement of
/// the peak position and value.  Used to extract oscillation envelopes.
inline std::vector<std::pair<double, double>> local_maxima(std::span<const double> t,
                                                           std::span<const double> y) {
    if (t.size() != y.size()) throw std::invalid_argument("local_maxima: length mismatch");
    std::vector<std::pair<double, double>> out;
    for (std::size_t i = 1; i + 1 < t.size(); ++i) {
        if (!(y[i] > y[i - 1] && y[i] > y[i + 1])) continue;
        const double denom = y[i - 1] - 2.0 * y[i] + y[i + 1];
        double tp = t[i], vp = y[i];
        if (denom < 0.0) {
            const double shift = 0.5 * (y[i - 1] - y[i + 1]) / denom;
            tp = t[i] + shift * (t[i + 1] - t[i]);
            vp = y[i] - 0.25 * (y[i - 1] - y[i + 1]) * shift;
        }
        out.emplace_back(tp, vp);
    }
    return out;
}

/// Mean spacing of a peak sequence; 2 pi / spacing is the angular frequency.
inline double mean_peak_spacing(const std::vector<std::pair<double, double>>& peaks) {
    if (peaks.size() < 2) throw std::invalid_argument("mean_peak_spacing: need >= 2 peaks");
    return (peaks.back().first - peaks.front().first) / (peaks.size() - 1);
}

} // namespace qdecay
