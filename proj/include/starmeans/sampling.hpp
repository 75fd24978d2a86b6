#pragma once
// Random Schwarz functions and class members. Schwarz functions are Blaschke
// products w(z) = rotation * z * prod (zj - z)/(1 - conj(zj) z), which gives
// w(0) = 0 and |w(z)| <= |z| by construction. Members follow the composition
// route p = L0 o w, p_n = iterate, g = p_n^{1/alpha}.
//
// Every sample draws from its own counter-derived RNG stream, so a batch is
// reproducible bit-for-bit regardless of evaluation order or thread count.

#include <cstdint>
#include <vector>

#include "starmeans/operators.hpp"
#include "starmeans/series.hpp"

namespace starmeans {

struct SplitMix64 {
    std::uint64_t state;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    static std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    std::uint64_t next() {
        state += 0x9E3779B97F4A7C15ULL;
        return mix(state);
    }

    // Uniform in [0, 1).
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
};

// Independent stream for sample `index`: the start state is a mixed function
// of (seed, index), so streams neither overlap nor shift into each other.
inline SplitMix64 sample_stream(std::uint64_t seed, std::uint64_t index) {
    return SplitMix64(seed ^ SplitMix64::mix((index + 1) * 0x9E3779B97F4A7C15ULL));
}

inline constexpr double kZeroCap = 0.8;
inline constexpr int kDefaultOrder = 64;

struct SchwarzFunction {
    std::vector<Complex> zeros;
    Complex rotation{1.0, 0.0};
    TruncatedSeries series; // c0 = 0, order from the sampling config

    // Exact rational evaluation, free of truncation; the series is the
    // algebraic object, this is its ground truth.
    Complex evaluate_exact(Complex z) const {
        Complex w = rotation * z;
        for (const Complex& zj : zeros)
            w *= (zj - z) / (Complex(1.0) - std::conj(zj) * z);
        return w;
    }
};

struct SampleConfig {
    std::uint64_t seed = 1;
    int degree = 3;  // Blaschke degree (number of zero factors)
    int count = 1;
    ClassParams params;
    int order = kDefaultOrder;
};

inline void validate_sample_config(const SampleConfig& cfg) {
    validate_params(cfg.params);
    if (cfg.count < 1) throw std::invalid_argument("SampleConfig: count must be >= 1");
    if (cfg.degree < 0 || cfg.degree > 8)
        throw std::invalid_argument("SampleConfig: degree must lie in [0, 8]");
    if (cfg.order < 1) throw std::invalid_argument("SampleConfig: order must be >= 1");
}

// One Blaschke factor (zj - z)/(1 - conj(zj) z) as a series:
// c0 = zj, c_k = conj(zj)^{k-1} (|zj|^2 - 1).
inline TruncatedSeries blaschke_factor(Complex zj, int order) {
    auto out = TruncatedSeries::zero(order);
    out[0] = zj;
    const double m2 = std::norm(zj) - 1.0;
    Complex pw(1.0);
    for (int k = 1; k <= order; ++k) {
        out[k] = pw * m2;
        pw *= std::conj(zj);
    }
    return out;
}

inline SchwarzFunction random_schwarz(const SampleConfig& cfg, SplitMix64& rng) {
    validate_sample_config(cfg);
    SchwarzFunction w;
    w.rotation = std::polar(1.0, rng.uniform(-kPi, kPi));
    for (int j = 0; j < cfg.degree; ++j) {
        const double rad = kZeroCap * std::sqrt(rng.uniform());
        const double ang = rng.uniform(-kPi, kPi);
        w.zeros.push_back(std::polar(rad, ang));
    }
    w.series = TruncatedSeries::monomial(1, w.rotation, cfg.order);
    for (const Complex& zj : w.zeros) w.series = mul(w.series, blaschke_factor(zj, cfg.order));
    return w;
}

// p = L0(a,b:w(z)) computed as (1 + a*w)/(1 + b*w). The Moebius form gives
// the same coefficients as composing the L0 series with w, at O(N^2) instead
// of the O(N^3) general composition.
inline TruncatedSeries sample_p(const SampleConfig& cfg, const SchwarzFunction& w) {
    validate_sample_config(cfg);
    const auto one = TruncatedSeries::one(w.series.order());
    auto num = add(one, scale(Complex(cfg.params.a), w.series));
    auto den = add(one, scale(Complex(cfg.params.b), w.series));
    return mul(num, reciprocal(den));
}

inline ClassMember sample_member(const SampleConfig& cfg, const SchwarzFunction& w) {
    auto p = sample_p(cfg, w);
    auto member = build_member(p, cfg.params);
    member.provenance = MemberProvenance{p, w.zeros, w.rotation, cfg.seed};
    return member;
}

// cfg.count members from independent per-index streams of cfg.seed.
inline std::vector<ClassMember> sample_batch(const SampleConfig& cfg) {
    validate_sample_config(cfg);
    std::vector<ClassMember> out;
    out.reserve(static_cast<size_t>(cfg.count));
    for (int i = 0; i < cfg.count; ++i) {
        auto rng = sample_stream(cfg.seed, static_cast<std::uint64_t>(i));
        auto w = random_schwarz(cfg, rng);
        out.push_back(sample_member(cfg, w));
    }
    return out;
}

}  // namespace starmeans
