#pragma once
// Operator calculus for the function classes: the Janowski generator family,
// the averaging integral iteration and its exact inverse, the Salagean
// derivative, class membership via subordination, and member construction.
//
// The fractional factor z^alpha is never represented as a series. Every
// operator acts on ratio series with c0 = 1 (p, p_n, L_n, or G = f^alpha /
// z^alpha), using the coefficient identities of the operators themselves:
// the n-fold averaging integral is the diagonal map c_k -> c_k
// (alpha/(alpha+k))^n, and D^n(z^alpha G) = z^alpha ((alpha+theta)^n G)
// turns the Salagean derivative into the exact inverse diagonal map.

#include <optional>
#include <vector>

#include "starmeans/series.hpp"

namespace starmeans {

struct ClassParams {
    double alpha = 1.0;
    int n = 1;
    double a = 1.0;
    double b = -1.0;
};

inline void validate_params(const ClassParams& p) {
    if (!(p.alpha > 0.0) || !std::isfinite(p.alpha))
        throw std::invalid_argument("ClassParams: alpha must be positive");
    if (p.n < 0)
        throw std::invalid_argument("ClassParams: n must be >= 0");
    if (!(p.b >= -1.0 && p.b < p.a && p.a <= 1.0))
        throw std::invalid_argument("ClassParams: require -1 <= b < a <= 1");
}

// The inequality suites are stated only for 0 < alpha <= 1 and n >= 1;
// operator paths accept the wider validate_params range.
inline void require_theorem_range(const ClassParams& p) {
    validate_params(p);
    if (p.alpha > 1.0)
        throw std::invalid_argument("ClassParams: inequality checks need alpha <= 1");
    if (p.n < 1)
        throw std::invalid_argument("ClassParams: inequality checks need n >= 1");
}

// How a member was built: the generating p (c0 = 1) and the Schwarz data
// behind it. Kept for factorization checks and reproducible reports.
struct MemberProvenance {
    TruncatedSeries p;
    std::vector<Complex> schwarz_zeros;
    Complex schwarz_rotation{1.0, 0.0};
    unsigned long long seed = 0;
};

// f(z) = z * g(z) with g = g_series, c0 = 1. The class data lives in the
// ratio series; f itself never needs materializing.
struct ClassMember {
    TruncatedSeries g_series;
    ClassParams params;
    std::optional<MemberProvenance> provenance;
};

// Salagean derivative D^n: a_k -> k^n a_k (n-fold theta_op).
inline TruncatedSeries salagean(const TruncatedSeries& f_coeffs, int n) {
    if (n < 0) throw std::invalid_argument("salagean: n must be >= 0");
    auto out = f_coeffs;
    for (int k = 0; k <= out.order(); ++k)
        out[k] *= ipow(static_cast<double>(k), n);
    return out;
}

// n-fold averaging integral (alpha/z^alpha) Int_0^z t^{alpha-1} (.) dt in
// closed coefficient form: c_k -> c_k (alpha/(alpha+k))^n.
inline TruncatedSeries iterate_coeff(const TruncatedSeries& p, double alpha, int n) {
    if (!(alpha > 0.0)) throw std::invalid_argument("iterate_coeff: alpha must be positive");
    if (n < 0) throw std::invalid_argument("iterate_coeff: n must be >= 0");
    if (p[0] != Complex(1.0)) throw std::invalid_argument("iterate_coeff: requires c0 = 1");
    auto out = p;
    for (int k = 1; k <= out.order(); ++k)
        out[k] *= ipow(alpha / (alpha + k), n);
    return out;
}

// Exact inverse of iterate_coeff: c_k -> c_k ((alpha+k)/alpha)^n.
inline TruncatedSeries deiterate_coeff(const TruncatedSeries& p_n, double alpha, int n) {
    if (!(alpha > 0.0)) throw std::invalid_argument("deiterate_coeff: alpha must be positive");
    if (n < 0) throw std::invalid_argument("deiterate_coeff: n must be >= 0");
    if (p_n[0] != Complex(1.0)) throw std::invalid_argument("deiterate_coeff: requires c0 = 1");
    auto out = p_n;
    for (int k = 1; k <= out.order(); ++k)
        out[k] *= ipow((alpha + k) / alpha, n);
    return out;
}

// L0(a,b:z) = (1+az)/(1+bz): c0 = 1, c_k = (a-b)(-b)^{k-1}.
inline TruncatedSeries janowski_L0(double a, double b, int order) {
    validate_params(ClassParams{1.0, 1, a, b});
    auto out = TruncatedSeries::one(order);
    double pw = 1.0;
    for (int k = 1; k <= order; ++k) {
        out[k] = Complex((a - b) * pw);
        pw *= -b;
    }
    return out;
}

// L_n(a,b:z): the n-fold averaging iterate of L0.
inline TruncatedSeries janowski_Ln(const ClassParams& params, int order) {
    validate_params(params);
    return iterate_coeff(janowski_L0(params.a, params.b, order), params.alpha, params.n);
}

// Koebe function k(z) = z/(1-z)^2 as a full function series: c_k = k.
inline TruncatedSeries koebe(int order) {
    auto out = TruncatedSeries::zero(order);
    for (int k = 1; k <= order; ++k) out[k] = Complex(static_cast<double>(k));
    return out;
}

// k(z)/z = 1/(1-z)^2: c_k = k+1, c0 = 1. The ratio form used everywhere.
inline TruncatedSeries koebe_over_z(int order) {
    auto out = TruncatedSeries::zero(order);
    for (int k = 0; k <= order; ++k) out[k] = Complex(static_cast<double>(k + 1));
    return out;
}

// k'(z) = (1+z)/(1-z)^3: c_k = (k+1)^2.
inline TruncatedSeries koebe_derivative(int order) {
    auto out = TruncatedSeries::zero(order);
    for (int k = 0; k <= order; ++k)
        out[k] = Complex(static_cast<double>(k + 1) * static_cast<double>(k + 1));
    return out;
}

// Series of f'(z) for f = z * g: coefficients (k+1) g_k.
inline TruncatedSeries derivative_series(const ClassMember& member) {
    auto out = member.g_series;
    for (int k = 0; k <= out.order(); ++k) out[k] *= static_cast<double>(k + 1);
    return out;
}

// q(z) = D^n f(z)^alpha / (alpha^n z^alpha), computed without z^alpha:
// q = ((alpha+theta)/alpha)^n G with G = g^alpha.
inline TruncatedSeries geometric_condition(const ClassMember& member) {
    validate_params(member.params);
    auto big_g = pow_real(member.g_series, member.params.alpha);
    return deiterate_coeff(big_g, member.params.alpha, member.params.n);
}

// Member with f^alpha/z^alpha equal to the n-th iterate of p.
inline ClassMember build_member(const TruncatedSeries& p, const ClassParams& params) {
    validate_params(params);
    auto p_n = iterate_coeff(p, params.alpha, params.n);
    ClassMember member;
    member.g_series = pow_real(p_n, 1.0 / params.alpha);
    member.params = params;
    member.provenance = MemberProvenance{p, {}, Complex(1.0), 0};
    return member;
}

struct SubordinationResult {
    bool passed = false;
    double max_modulus = 0.0;   // sup_j |w(theta_j)|
    double witness_theta = 0.0; // where the sup is attained
    double limit = 0.0;         // r * (1 + tol)
    bool degenerate = false;    // denominator a - b*p collapsed on the grid
};

inline constexpr double kSubordinationTol = 1e-9;

// Subordination of p to L0(a,b:.) at radius r, tested through the explicit
// Moebius inverse w = (p-1)/(a - b*p) and the Schwarz bound |w| <= |z|.
// For genuine class elements a - b*p = (a-b)/(1+b*w) stays away from zero,
// so a collapsing denominator is itself a failure witness, not an exception.
inline SubordinationResult subordination_check(const CircleSamples& samples, double a,
                                               double b, double r,
                                               double tol = kSubordinationTol) {
    validate_params(ClassParams{1.0, 1, a, b});
    if (std::abs(samples.radius - r) > 1e-15)
        throw std::invalid_argument("subordination_check: sample radius differs from r");
    SubordinationResult res;
    res.limit = r * (1.0 + tol);
    for (int j = 0; j < samples.size(); ++j) {
        const Complex p = samples.values[static_cast<size_t>(j)];
        const Complex den = Complex(a) - Complex(b) * p;
        double mod;
        if (std::abs(den) < 1e-12) {
            mod = 1e300;
            res.degenerate = true;
        } else {
            mod = std::abs((p - Complex(1.0)) / den);
        }
        if (mod > res.max_modulus) {
            res.max_modulus = mod;
            res.witness_theta = samples.theta_at(j);
        }
    }
    res.passed = !res.degenerate && res.max_modulus <= res.limit;
    return res;
}

inline constexpr int kDefaultGrid = 4096;

// p_n in P_n[a,b]: de-iterate exactly, then test subordination of the
// recovered p. The inverse diagonal map is exact, so this realizes the
// equivalence chain without inverting the non-Moebius L_n numerically.
inline SubordinationResult membership_Pn(const TruncatedSeries& p_n, const ClassParams& params,
                                         double r, int grid = kDefaultGrid,
                                         double tol = kSubordinationTol) {
    validate_params(params);
    auto p = deiterate_coeff(p_n, params.alpha, params.n);
    return subordination_check(evaluate_circle(p, r, grid), params.a, params.b, r, tol);
}

// f in T_n^alpha[a,b]: geometric condition, then subordination.
inline SubordinationResult membership_Tn(const ClassMember& member, double r,
                                         int grid = kDefaultGrid,
                                         double tol = kSubordinationTol) {
    auto q = geometric_condition(member);
    return subordination_check(evaluate_circle(q, r, grid), member.params.a, member.params.b,
                               r, tol);
}

}  // namespace starmeans
