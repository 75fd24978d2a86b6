#pragma once
// Discrete star-function machinery on uniform circle grids.
//
// The star function g*(theta) = sup over sets E of measure 2*theta of the
// integral of g over E. On an M-cell grid the sup over unions of cells is
// attained by the cells carrying the largest values, so the discrete star
// function is (2pi/M) times sorted-descending prefix sums, with linear
// interpolation at fractional cell counts. This is the exact sup over grid
// sets, not an approximation of one.

#include <algorithm>
#include <cstdio>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "starmeans/operators.hpp"
#include "starmeans/series.hpp"

namespace starmeans {

struct RealCircleSamples {
    std::vector<double> values;
    double radius = 0.0;

    int size() const { return static_cast<int>(values.size()); }
    double theta_at(int j) const { return -kPi + 2.0 * kPi * j / size(); }
};

// Log-moduli of complex samples. A modulus at or below 1e-300 means the
// sampled function (an f' or a class ratio, nonvanishing by construction)
// effectively hit a zero on the grid: a modeling failure worth a hard stop.
inline RealCircleSamples log_modulus(const CircleSamples& samples) {
    RealCircleSamples out;
    out.radius = samples.radius;
    out.values.reserve(samples.values.size());
    for (const Complex& v : samples.values) {
        const double mod = std::abs(v);
        if (!(mod > 1e-300))
            throw std::domain_error("log_modulus: sample modulus below 1e-300");
        out.values.push_back(std::log(mod));
    }
    return out;
}

inline RealCircleSamples negate_samples(const RealCircleSamples& g) {
    auto out = g;
    for (double& v : out.values) v = -v;
    return out;
}

inline RealCircleSamples add_samples(const RealCircleSamples& g, const RealCircleSamples& h) {
    if (g.size() != h.size())
        throw std::invalid_argument("add_samples: grid sizes differ");
    auto out = g;
    for (int j = 0; j < out.size(); ++j) out.values[static_cast<size_t>(j)] += h.values[static_cast<size_t>(j)];
    return out;
}

inline double samples_min(const RealCircleSamples& g) {
    return *std::min_element(g.values.begin(), g.values.end());
}

inline double samples_max(const RealCircleSamples& g) {
    return *std::max_element(g.values.begin(), g.values.end());
}

struct StarFunction {
    std::vector<double> theta_grid; // 0 = theta_0 < ... < theta_M = pi
    std::vector<double> values;     // g*(theta_m), units value * radians

    int segments() const { return static_cast<int>(theta_grid.size()) - 1; }

    // Linear interpolation between grid nodes.
    double value_at(double theta) const {
        if (!(theta >= 0.0 && theta <= kPi))
            throw std::invalid_argument("StarFunction::value_at: theta must lie in [0, pi]");
        const int m = segments();
        const double x = theta * m / kPi;
        const int lo = std::min(static_cast<int>(x), m - 1);
        const double frac = x - lo;
        return values[static_cast<size_t>(lo)] * (1.0 - frac) +
               values[static_cast<size_t>(lo) + 1] * frac;
    }
};

// Sorted-descending prefix sums, accumulated in long double: the discrete
// sup over unions of m cells is the top-m mass.
inline StarFunction star_function(const RealCircleSamples& g) {
    const int m_cells = g.size();
    if (m_cells < 2 || m_cells % 2 != 0)
        throw std::invalid_argument("star_function: grid size must be even and >= 2");
    std::vector<double> sorted = g.values;
    std::sort(sorted.begin(), sorted.end(), std::greater<double>());
    StarFunction out;
    out.theta_grid.resize(static_cast<size_t>(m_cells) + 1);
    out.values.resize(static_cast<size_t>(m_cells) + 1);
    const double h = 2.0 * kPi / m_cells;
    long double acc = 0.0L;
    out.theta_grid[0] = 0.0;
    out.values[0] = 0.0;
    for (int m = 1; m <= m_cells; ++m) {
        acc += sorted[static_cast<size_t>(m) - 1];
        out.theta_grid[static_cast<size_t>(m)] = kPi * m / m_cells;
        out.values[static_cast<size_t>(m)] = static_cast<double>(h * acc);
    }
    return out;
}

// The unique grid function symmetric about theta = 0 and nonincreasing on
// [0, pi] that is equimeasurable with g. Read outward from the center cell
// (j = M/2 is theta = 0), the placement order M/2, M/2+1, M/2-1, M/2+2, ...
// is descending, so sums of two rearranged functions have their top-m mass
// on the same cells: the subadditivity bound collapses to equality.
inline RealCircleSamples rearrange_sym_decreasing(const RealCircleSamples& g) {
    const int m_cells = g.size();
    if (m_cells < 2 || m_cells % 2 != 0)
        throw std::invalid_argument("rearrange_sym_decreasing: grid size must be even and >= 2");
    std::vector<double> sorted = g.values;
    std::sort(sorted.begin(), sorted.end(), std::greater<double>());
    RealCircleSamples out;
    out.radius = g.radius;
    out.values.assign(static_cast<size_t>(m_cells), 0.0);
    const int c = m_cells / 2;
    out.values[static_cast<size_t>(c)] = sorted[0];
    for (int m = 1; m < c; ++m) {
        out.values[static_cast<size_t>(c + m)] = sorted[static_cast<size_t>(2 * m - 1)];
        out.values[static_cast<size_t>(c - m)] = sorted[static_cast<size_t>(2 * m)];
    }
    out.values[0] = sorted[static_cast<size_t>(m_cells) - 1];
    return out;
}

struct ConvexTestFn {
    enum class Kind { Hinge, Exp, Linear };
    Kind kind = Kind::Hinge;
    double param = 0.0; // hinge threshold t, or exp rate lambda (> 0)

    static ConvexTestFn hinge(double t) { return {Kind::Hinge, t}; }
    static ConvexTestFn exponential(double lambda) {
        if (!(lambda > 0.0))
            throw std::invalid_argument("ConvexTestFn: exp rate must be positive");
        return {Kind::Exp, lambda};
    }
    static ConvexTestFn linear() { return {Kind::Linear, 0.0}; }

    double operator()(double x) const {
        switch (kind) {
            case Kind::Hinge: return x > param ? x - param : 0.0;
            case Kind::Exp: return std::exp(param * x);
            case Kind::Linear: return x;
        }
        return 0.0;
    }

    std::string describe() const {
        char buf[64];
        switch (kind) {
            case Kind::Hinge: std::snprintf(buf, sizeof buf, "hinge(t=%.9g)", param); break;
            case Kind::Exp: std::snprintf(buf, sizeof buf, "exp(lambda=%.9g)", param); break;
            case Kind::Linear: std::snprintf(buf, sizeof buf, "linear"); break;
        }
        return buf;
    }
};

// (2pi/M) * sum phi(g_j): the uniform periodic trapezoid rule. For the exp
// kind with lambda * max(g) > 600 the sum runs in log-sum-exp form so that a
// single overflowing term cannot destroy a finite mean.
inline double integral_mean(const RealCircleSamples& g, const ConvexTestFn& phi) {
    const int m_cells = g.size();
    if (m_cells < 1) throw std::invalid_argument("integral_mean: empty samples");
    const double h = 2.0 * kPi / m_cells;
    if (phi.kind == ConvexTestFn::Kind::Exp) {
        const double top = *std::max_element(g.values.begin(), g.values.end());
        if (phi.param * top > 600.0) {
            long double acc = 0.0L;
            for (double v : g.values) acc += std::exp(static_cast<long double>(phi.param) * (v - top));
            const long double log_mean =
                static_cast<long double>(phi.param) * top + std::log(static_cast<long double>(h) * acc);
            return static_cast<double>(std::exp(log_mean));
        }
    }
    long double acc = 0.0L;
    for (double v : g.values) acc += phi(v);
    return static_cast<double>(h * acc);
}

// Log-modulus samples of L_{n-1}(a,b:z) (k(z)/z)^{1-alpha} on |z| = r.
// The Koebe part uses the closed form log|k(z)/z| = -2 log|1-z|; the
// Janowski part is evaluated from its series at the caller's order so that
// inequality checks compare like-discretized objects.
inline RealCircleSamples majorant_samples(const ClassParams& params, double r, int grid,
                                          int order) {
    require_theorem_range(params);
    ClassParams prev = params;
    prev.n = params.n - 1;
    const auto level = evaluate_circle(janowski_Ln(prev, order), r, grid);
    RealCircleSamples out = log_modulus(level);
    const double exponent = 1.0 - params.alpha;
    if (exponent != 0.0) {
        for (int j = 0; j < out.size(); ++j) {
            const Complex z = std::polar(r, out.theta_at(j));
            out.values[static_cast<size_t>(j)] += exponent * (-2.0 * std::log(std::abs(Complex(1.0) - z)));
        }
    }
    return out;
}

struct StarDominance {
    bool dominated = false;
    double max_violation = 0.0; // max over theta of lhs* - rhs*
    double witness_theta = 0.0;
};

inline constexpr double kStarTol = 1e-6;

inline StarDominance star_dominates(const StarFunction& lhs, const StarFunction& rhs,
                                    double tol = kStarTol) {
    if (lhs.theta_grid.size() != rhs.theta_grid.size())
        throw std::invalid_argument("star_dominates: grids differ");
    StarDominance out;
    out.max_violation = -std::numeric_limits<double>::infinity();
    for (size_t m = 0; m < lhs.values.size(); ++m) {
        const double viol = lhs.values[m] - rhs.values[m];
        if (viol > out.max_violation) {
            out.max_violation = viol;
            out.witness_theta = lhs.theta_grid[m];
        }
    }
    out.dominated = out.max_violation <= tol;
    return out;
}

// The canonical convex test family: hinges on a 41-point threshold grid
// spanning [lo, hi] (the hinge family alone decides star domination), plus
// the exponential means that give classical integral means of |f'|.
inline std::vector<ConvexTestFn> phi_family(double lo, double hi) {
    std::vector<ConvexTestFn> out;
    const int points = 41;
    for (int i = 0; i < points; ++i)
        out.push_back(ConvexTestFn::hinge(lo + (hi - lo) * i / (points - 1)));
    for (double lambda : {0.5, 1.0, 2.0}) out.push_back(ConvexTestFn::exponential(lambda));
    return out;
}

}  // namespace starmeans
