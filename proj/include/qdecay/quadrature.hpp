#pragma once

#include <algorithm>
#include <cmath>
#include <queue>
#include <vector>

#include "qdecay/complex_math.hpp"

namespace qdecay {

struct IntegrationResult {
    Complex value{};
    double error_estimate = 0.0;
    bool converged = false;
    long evaluations = 0;
};

namespace detail {

// Gauss-Kronrod 7-15 nodes and weights (positive half; node 0 is the centre).
inline constexpr double kGK15Nodes[8] = {
    0.0,
    0.2077849550078984676006894037732449,
    0.4058451513773971669066064120769615,
    0.5860872354676911302941448382587296,
    0.7415311855993944398638647732807884,
    0.8648644233597690727897127886409262,
    0.9491079123427585245261896840478513,
    0.9914553711208126392068546975263285,
};
inline constexpr double kGK15WeightsK[8] = {
    0.2094821410847278280129991748917143,
    0.2044329400752988924141619992346491,
    0.1903505780647854099132564024210137,
    0.1690047266392679028265834265985503,
    0.1406532597155259187451895905102379,
    0.1047900103222501838398763225415180,
    0.0630920926299785532907006631892042,
    0.0229353220105292249637320080589695,
};
inline constexpr double kGK15WeightsG[4] = {
    0.4179591836734693877551020408163265,
    0.3818300505051189449503697754889751,
    0.2797053914892766679014677714237796,
    0.1294849661688696932706114326790820,
};

template <typename F>
void gk15(F& f, double a, double b, Complex& value, double& error) {
    const double c = 0.5 * (a + b);
    const double m = 0.5 * (b - a);
    const Complex f0 = f(c);
    Complex k = kGK15WeightsK[0] * f0;
    Complex g = kGK15WeightsG[0] * f0;
    for (int i = 1; i < 8; ++i) {
        const double dx = m * kGK15Nodes[i];
        const Complex fs = f(c + dx) + f(c - dx);
        k += kGK15WeightsK[i] * fs;
        if (i % 2 == 0) g += kGK15WeightsG[i / 2] * fs;
    }
    value = m * k;
    // |K15 - G7| is a conservative estimate of the K15 error.
    error = std::abs(m * (k - g));
}

struct Segment {
    double a, b, error;
    Complex value;
    bool operator<(const Segment& o) const { return error < o.error; }
};

} // namespace detail

/// Globally adaptive Gauss-Kronrod integration of a complex-valued function
/// over [a, b] to an absolute tolerance.  `breakpoints` seeds segment edges
/// at known kinks or stationary points so the subdivision does not have to
/// find them.
template <typename F>
IntegrationResult integrate(F&& f, double a, double b, double abs_tol,
                            std::vector<double> breakpoints = {},
                            int max_segments = 20000) {
    IntegrationResult res;
    if (a == b) { res.converged = true; return res; }

    breakpoints.push_back(a);
    breakpoints.push_back(b);
    std::sort(breakpoints.begin(), breakpoints.end());
    std::priority_queue<detail::Segment> heap;
    Complex total = 0.0;
    double total_err = 0.0;
    int n_segments = 0;
    for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
        const double lo = breakpoints[i], hi = breakpoints[i + 1];
        if (!(lo >= a && hi <= b && lo < hi)) continue;
        detail::Segment s{lo, hi, 0.0, {}};
        detail::gk15(f, lo, hi, s.value, s.error);
        res.evaluations += 15;
        total += s.value;
        total_err += s.error;
        heap.push(s);
        ++n_segments;
    }

    while (total_err > abs_tol && n_segments < max_segments && !heap.empty()) {
        const detail::Segment worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b) continue;  // interval at rounding limit
        detail::Segment left{worst.a, mid, 0.0, {}};
        detail::Segment right{mid, worst.b, 0.0, {}};
        detail::gk15(f, left.a, left.b, left.value, left.error);
        detail::gk15(f, right.a, right.b, right.value, right.error);
        res.evaluations += 30;
        total += left.value + right.value - worst.value;
        total_err += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        ++n_segments;
    }

    res.value = total;
    res.error_estimate = total_err;
    res.converged = total_err <= abs_tol;
    return res;
}

} // namespace qdecay
