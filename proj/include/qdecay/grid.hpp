#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <stdexcept>
#include <vector>

#include "qdecay/complex_math.hpp"

namespace qdecay {

/// Uniform 1-D spatial grid.
struct GridSpec {
    double x_min = 0.0;
    double x_max = 0.0;
    int n_points = 0;

    GridSpec() = default;
    GridSpec(double xmin, double xmax, int n) : x_min(xmin), x_max(xmax), n_points(n) {
        if (!(x_min < x_max) || n_points < 2)
            throw std::invalid_argument("GridSpec: need x_min < x_max and n_points >= 2");
    }

    double spacing() const { return (x_max - x_min) / (n_points - 1); }
    double x(int i) const { return x_min + spacing() * i; }

    bool operator==(const GridSpec& o) const {
        return x_min == o.x_min && x_max == o.x_max && n_points == o.n_points;
    }
};

/// Wavefunction samples on a grid.
struct ComplexField {
    GridSpec grid;
    std::vector<Complex> values;
    double time = 0.0;
    double mu = 0.0;

    void validate() const {
        if (static_cast<int>(values.size()) != grid.n_points)
            throw std::invalid_argument("ComplexField: values length != grid.n_points");
    }
};

/// Sample a callable psi(x) onto a grid.
template <typename F>
ComplexField sample_field(const GridSpec& g, F&& psi, double time = 0.0, double mu = 0.0) {
    ComplexField f;
    f.grid = g;
    f.time = time;
    f.mu = mu;
    f.values.resize(g.n_points);
    for (int i = 0; i < g.n_points; ++i) f.values[i] = psi(g.x(i));
    return f;
}

/// Trapezoid <a|b> = Int conj(a) b dx on a common grid.
inline Complex field_overlap(const ComplexField& a, const ComplexField& b) {
    if (!(a.grid == b.grid))
        throw std::invalid_argument("field_overlap: grid mismatch");
    const double h = a.grid.spacing();
    Complex s = 0.0;
    for (int i = 0; i < a.grid.n_points; ++i) {
        const Complex v = std::conj(a.values[i]) * b.values[i];
        s += (i == 0 || i == a.grid.n_points - 1) ? 0.5 * v : v;
    }
    return s * h;
}

inline double field_norm_sq(const ComplexField& f) {
    const double h = f.grid.spacing();
    double s = 0.0;
    for (int i = 0; i < f.grid.n_points; ++i) {
        const double v = std::norm(f.values[i]);
        s += (i == 0 || i == f.grid.n_points - 1) ? 0.5 * v : v;
    }
    return s * h;
}

inline double field_norm(const ComplexField& f) { return std::sqrt(field_norm_sq(f)); }

inline void normalize_field(ComplexField& f) {
    const double n = field_norm(f);
    if (n == 0.0) throw std::invalid_argument("normalize_field: zero field");
    for (auto& v : f.values) v /= n;
}

struct FieldComparison {
    double l2_abs = 0.0;   // trapezoid ||a - b||
    double l2_rel = 0.0;   // ||a - b|| / ||b||
    double linf = 0.0;     // max |a_i - b_i|
    Complex overlap{};     // <a|b>
};

/// Trapezoid-weighted distances between two fields on identical grids.
inline FieldComparison compare_fields(const ComplexField& a, const ComplexField& b) {
    if (!(a.grid == b.grid))
        throw std::invalid_argument("compare_fields: grid mismatch");
    FieldComparison c;
    const double h = a.grid.spacing();
    double d2 = 0.0, nb2 = 0.0;
    for (int i = 0; i < a.grid.n_points; ++i) {
        const double w = (i == 0 || i == a.grid.n_points - 1) ? 0.5 : 1.0;
        const double d = std::abs(a.values[i] - b.values[i]);
        d2 += w * d * d;
        nb2 += w * std::norm(b.values[i]);
        c.linf = std::max(c.linf, d);
    }
    c.l2_abs = std::sqrt(d2 * h);
    const double nb = std::sqrt(nb2 * h);
    c.l2_rel = nb > 0.0 ? c.l2_abs / nb : c.l2_abs;
    c.overlap = field_overlap(a, b);
    return c;
}

/// Cubic (Catmull-Rom) interpolation of a field at an arbitrary point;
/// zero outside the grid.
inline Complex interpolate_field(const ComplexField& f, double x) {
    const GridSpec& g = f.grid;
    if (x < g.x_min || x > g.x_max) return 0.0;
    const double h = g.spacing();
    const double s = (x - g.x_min) / h;
    if (g.n_points < 4) {  // too few points for a cubic; fall back to linear
        const int i = std::clamp(static_cast<int>(std::floor(s)), 0, g.n_points - 2);
        const double u = s - i;
        return (1.0 - u) * f.values[i] + u * f.values[i + 1];
    }
    int i = static_cast<int>(std::floor(s));
    i = std::clamp(i, 1, g.n_points - 3);
    const double u = s - i;
    const Complex p0 = f.values[i - 1], p1 = f.values[i];
    const Complex p2 = f.values[i + 1], p3 = f.values[i + 2];
    return p1 + 0.5 * u * (p2 - p0 +
           u * (2.0 * p0 - 5.0 * p1 + 4.0 * p2 - p3 +
           u * (3.0 * (p1 - p2) + p3 - p0)));
}

} // namespace qdecay
