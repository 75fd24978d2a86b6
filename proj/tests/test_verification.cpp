#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>

#include "starmeans/io.hpp"
#include "starmeans/sampling.hpp"
#include "starmeans/verification.hpp"
#include "support/oracles.hpp"

using starmeans::ClassParams;
using starmeans::ClassMember;
using starmeans::Complex;
using starmeans::ConvexTestFn;
using starmeans::ExtremalSpec;

namespace {

ClassMember sampled_member(const ClassParams& params, std::uint64_t seed, int degree, int order) {
    starmeans::SampleConfig cfg;
    cfg.seed = seed;
    cfg.degree = degree;
    cfg.params = params;
    cfg.order = order;
    auto rng = starmeans::sample_stream(seed, 0);
    auto w = starmeans::random_schwarz(cfg, rng);
    return starmeans::sample_member(cfg, w);
}

}  // namespace

TEST_CASE("extremal members attain equality at unit power single iteration", "[verification]") {
    for (double r : {0.3, 0.6, 0.9}) {
        for (auto [a, b] : {std::pair{1.0, -1.0}, std::pair{0.5, -0.5}, std::pair{0.8, 0.2}}) {
            auto member = starmeans::build_extremal(ExtremalSpec{ClassParams{1.0, 1, a, b}, 0.0});
            for (const auto& phi :
                 {ConvexTestFn::hinge(0.0), ConvexTestFn::hinge(-1.0), ConvexTestFn::exponential(1.0)}) {
                auto rep = starmeans::check_derivative_means(member, r, phi);
                CHECK(rep.pass);
                CHECK(std::abs(rep.margin) <= 1e-10);
                auto rep2 = starmeans::check_derivative_means_reciprocal(member, r, phi);
                CHECK(rep2.pass);
                CHECK(std::abs(rep2.margin) <= 1e-10);
            }
        }
    }
}

TEST_CASE("rotated extremal members still attain equality", "[verification]") {
    // Full-circle means are rotation invariant. With a rotation that is not a
    // multiple of the grid step the two sides are sampled at different points,
    // so only smooth test functions keep spectral accuracy; a hinge has a kink
    // and its discrete mean moves by O(grid^-2) under the shift.
    auto member =
        starmeans::build_extremal(ExtremalSpec{ClassParams{1.0, 1, 0.5, -0.5}, 0.7});
    for (const auto& phi : {ConvexTestFn::exponential(1.0), ConvexTestFn::linear()}) {
        auto rep = starmeans::check_derivative_means(member, 0.6, phi);
        CHECK(rep.pass);
        CHECK(std::abs(rep.margin) <= 1e-10);
    }
    auto kinked = starmeans::check_derivative_means(member, 0.6, ConvexTestFn::hinge(0.0));
    CHECK(std::abs(kinked.margin) <= 5e-6);
    CHECK_THROWS_AS(starmeans::build_extremal(ExtremalSpec{ClassParams{1.0, 1, 1.0, -1.0}, 4.0}),
                    std::invalid_argument);
}

TEST_CASE("full class extremal has the classical logarithmic coefficients", "[verification]") {
    // a = 1, b = -1, n = alpha = 1: f0 = z + sum 2/(k+1) z^{k+1}
    auto member = starmeans::build_extremal(ExtremalSpec{ClassParams{1.0, 1, 1.0, -1.0}, 0.0});
    for (int k = 0; k <= member.g_series.order(); ++k)
        CHECK(std::abs(member.g_series[k] - Complex(k == 0 ? 1.0 : 2.0 / (k + 1))) <= 1e-14);
    // and its derivative is exactly the generator series
    auto d = starmeans::derivative_series(member);
    auto l0 = starmeans::janowski_L0(1.0, -1.0, member.g_series.order());
    for (int k = 0; k <= d.order(); ++k) CHECK(std::abs(d[k] - l0[k]) <= 1e-14);
}

TEST_CASE("extremal derivative matches the rotated modulus factorization", "[verification]") {
    // |F'(z)| = |L_{n-1}(z e^{i gamma})| |F(z)/z|^{1-alpha} pointwise
    const ClassParams params{0.5, 2, 0.5, -0.5};
    const double gamma = 0.7;
    auto member = starmeans::build_extremal(ExtremalSpec{params, gamma}, 256);
    auto deriv = starmeans::derivative_series(member);
    ClassParams prev = params;
    prev.n = params.n - 1;
    auto level = starmeans::janowski_Ln(prev, 256);
    starmeans::SplitMix64 rng(71);
    for (int trial = 0; trial < 20; ++trial) {
        const Complex z = std::polar(0.6, rng.uniform(-starmeans::kPi, starmeans::kPi));
        const double lhs = std::abs(starmeans::evaluate(deriv, z));
        const double rhs = std::abs(starmeans::evaluate(level, z * std::polar(1.0, gamma))) *
                           std::pow(std::abs(starmeans::evaluate(member.g_series, z)),
                                    1.0 - params.alpha);
        CHECK(std::abs(lhs - rhs) <= 1e-10 * (1.0 + rhs));
    }
}

TEST_CASE("rotated extremal stays in the class", "[verification]") {
    auto member = starmeans::build_extremal(
        ExtremalSpec{ClassParams{0.5, 2, 1.0, -1.0}, 1.2}, starmeans::choose_order(0.9));
    CHECK(starmeans::membership_Tn(member, 0.9).passed);
}

TEST_CASE("derivative factorization holds for pipeline members", "[verification]") {
    // unit power: the window exponent vanishes
    auto unit = sampled_member(ClassParams{1.0, 2, 1.0, -1.0}, 5, 3, 64);
    auto rep_unit = starmeans::check_derivative_factorization(unit);
    CHECK(rep_unit.pass);
    CHECK(std::abs(rep_unit.margin) <= 1e-13);

    // trivial member f = z
    auto trivial = starmeans::build_member(starmeans::TruncatedSeries::one(64),
                                           ClassParams{0.5, 1, 1.0, -1.0});
    CHECK(starmeans::check_derivative_factorization(trivial).pass);

    // random members across the parameter grid
    const double alphas[] = {0.25, 0.5, 1.0};
    const int ns[] = {1, 2, 3};
    for (int trial = 0; trial < 50; ++trial) {
        const ClassParams params{alphas[trial % 3], ns[(trial / 3) % 3],
                                 trial % 2 ? 1.0 : 0.8, trial % 2 ? -1.0 : 0.2};
        auto member = sampled_member(params, 1000 + trial, 1 + trial % 4, 64);
        auto rep = starmeans::check_derivative_factorization(member);
        CHECK(rep.pass);
        CHECK(rep.lhs <= 1e-10);
    }

    ClassMember no_prov;
    no_prov.g_series = starmeans::TruncatedSeries::one(8);
    no_prov.params = ClassParams{0.5, 1, 1.0, -1.0};
    CHECK_THROWS_AS(starmeans::check_derivative_factorization(no_prov), std::invalid_argument);
}

TEST_CASE("iterate star domination for sampled generators", "[verification]") {
    auto member = sampled_member(ClassParams{0.25, 2, 0.8, 0.2}, 17, 2, 64);
    const auto& p = member.provenance->p;
    for (int sign : {1, -1}) {
        auto rep = starmeans::check_iterate_star_domination(p, member.params, 0.6, sign, 1024, 17);
        CHECK(rep.pass);
        CHECK(rep.check_name == (sign > 0 ? "iterate_star_domination_pos"
                                          : "iterate_star_domination_neg"));
    }
    auto sub = starmeans::check_subordinate_star_domination(p, member.params, 0.6, 1024, 17);
    CHECK(sub.pass);
    CHECK(sub.check_name == "subordinate_star_domination");
    CHECK_THROWS_AS(starmeans::check_iterate_star_domination(p, member.params, 0.6, 2),
                    std::invalid_argument);
}

TEST_CASE("koebe star domination for members and near equality for the koebe layout",
          "[verification]") {
    auto member = sampled_member(ClassParams{0.5, 1, 1.0, -1.0}, 23, 3, 128);
    for (double r : {0.3, 0.6}) {
        for (int sign : {1, -1}) {
            auto rep = starmeans::check_koebe_star_domination(member, r, sign, 1024);
            CHECK(rep.pass);
        }
    }
}

TEST_CASE("star subadditivity on random and rearranged pairs", "[verification]") {
    starmeans::SplitMix64 rng(201);
    for (int trial = 0; trial < 50; ++trial) {
        starmeans::RealCircleSamples g, h;
        for (int j = 0; j < 64; ++j) {
            g.values.push_back(rng.uniform(-1.0, 1.0));
            h.values.push_back(rng.uniform(-1.0, 1.0));
        }
        auto rep = starmeans::check_star_subadditivity(g, h);
        CHECK(rep.pass);
        auto eq = starmeans::check_star_subadditivity(starmeans::rearrange_sym_decreasing(g),
                                                      starmeans::rearrange_sym_decreasing(h));
        CHECK(eq.pass);
        CHECK(eq.note == "symmetric-decreasing pair: equality asserted");
        CHECK(std::abs(eq.lhs) <= 1e-12);
    }
}

TEST_CASE("special parameter cases all pass with their reduction notes", "[verification]") {
    auto reports = starmeans::run_special_cases(0.5, -0.5, 0.6, 4242);
    REQUIRE(reports.size() == 16);
    for (const auto& rep : reports) {
        CHECK(rep.pass);
        CHECK_FALSE(rep.note.empty());
        CHECK(rep.note.find(',') == std::string::npos);  // notes must stay CSV-safe
    }
    CHECK(reports.front().check_name == "special_single_iteration");
    bool found_equal = false;
    for (const auto& rep : reports)
        if (rep.check_name == "special_unit_power_single_iteration") {
            CHECK(std::abs(rep.margin) <= 1e-10);
            found_equal = true;
        }
    CHECK(found_equal);
}

TEST_CASE("perturbing the second coefficient breaks the extremal", "[verification]") {
    const ClassParams params{1.0, 1, 1.0, -1.0};
    auto member = starmeans::build_extremal(ExtremalSpec{params, 0.0}, 128);
    REQUIRE(starmeans::membership_Tn(member, 0.6).passed);
    auto bad = starmeans::perturb_second_coefficient(member, 0.05);
    CHECK_FALSE(starmeans::membership_Tn(bad, 0.6).passed);

    // and at least one hinge mean check fails as well
    auto pair = starmeans::derivative_means_samples(bad, 0.6, 4096);
    bool any_mean_failed = false;
    for (const auto& phi : starmeans::phi_family(starmeans::samples_min(pair.lhs) - 1.0,
                                                 starmeans::samples_max(pair.rhs) + 1.0)) {
        auto rep = starmeans::mean_domination_report("derivative_means", params, 0.6, phi,
                                                     pair.lhs, pair.rhs, 0, 128);
        if (!rep.pass) any_mean_failed = true;
    }
    CHECK(any_mean_failed);
}

TEST_CASE("perturbing a random member is caught by the verification stack",
          "[verification]") {
    // A deep interior member can absorb a small second-coefficient bump in
    // both the subordination test and the mean inequalities, but the
    // derivative factorization identity pins the coefficients exactly and
    // always trips. Run the same stack a consumer would.
    for (int trial = 0; trial < 10; ++trial) {
        const ClassParams params{trial % 2 ? 0.5 : 0.25, 1 + trial % 3, 1.0, -1.0};
        auto member = sampled_member(params, 9000 + trial, 1 + trial % 4, 128);
        auto bad = starmeans::perturb_second_coefficient(member, 0.05);
        CHECK_FALSE(starmeans::check_derivative_factorization(bad).pass);
        bool caught = !starmeans::membership_Tn(bad, 0.9).passed ||
                      !starmeans::check_derivative_factorization(bad).pass;
        if (!caught) {
            auto pair = starmeans::derivative_means_samples(bad, 0.9, 4096);
            for (const auto& phi :
                 starmeans::phi_family(starmeans::samples_min(pair.lhs) - 1.0,
                                       starmeans::samples_max(pair.rhs) + 1.0)) {
                auto rep = starmeans::mean_domination_report("derivative_means", params, 0.9,
                                                             phi, pair.lhs, pair.rhs, 0, 128);
                if (!rep.pass) caught = true;
            }
        }
        CHECK(caught);
    }
}

TEST_CASE("report serialization round trip", "[verification]") {
    auto member = starmeans::build_extremal(ExtremalSpec{ClassParams{1.0, 1, 1.0, -1.0}, 0.0});
    auto rep = starmeans::check_derivative_means(member, 0.5, ConvexTestFn::exponential(1.0));
    auto j = starmeans::report_to_json(rep);
    CHECK(j["check_name"] == "derivative_means");
    CHECK(j["params"]["alpha"] == 1.0);
    CHECK(j["params"]["n"] == 1);
    CHECK(j["r"] == 0.5);
    CHECK(j["pass"] == true);
    CHECK(j.contains("lhs"));
    CHECK(j.contains("rhs"));
    CHECK(j.contains("margin"));
    CHECK(j.contains("seed"));
    CHECK(j.contains("N"));
    CHECK(j.contains("M"));

    const auto row = starmeans::report_to_csv_row(rep);
    size_t commas = 0;
    for (char c : row)
        if (c == ',') ++commas;
    CHECK(commas == 16);  // 17 columns, comma-free fields
    const std::string csv = starmeans::reports_to_csv({rep});
    CHECK(csv.rfind("check_name,alpha,n,a,b,r,phi,", 0) == 0);

    const auto g17 = starmeans::format_g17(0.1);
    CHECK(g17 == "0.10000000000000001");
}
