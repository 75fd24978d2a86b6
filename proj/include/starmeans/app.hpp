#pragma once
// Command orchestration for the CLI: configuration (JSON file + flag
// overrides), suite execution over the parameter grid, and deterministic
// emission of coefficient tables, star functions, and verification sweeps.
//
// Determinism contract: a fixed config and seed produce byte-identical
// output. Grid points are visited in declaration order, every sample draws
// from a counter-derived stream, and numbers are printed with 17 significant
// digits, so no run-to-run state can leak into the files.

#include <algorithm>
#include <cstdint>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "starmeans/baernstein.hpp"
#include "starmeans/io.hpp"
#include "starmeans/operators.hpp"
#include "starmeans/parallel.hpp"
#include "starmeans/sampling.hpp"
#include "starmeans/series.hpp"
#include "starmeans/verification.hpp"

namespace starmeans::app {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline constexpr double kRadiusCap = 0.95;

struct RunConfig {
    std::vector<double> alphas{0.25, 1.0};
    std::vector<int> ns{1, 2};
    std::vector<std::pair<double, double>> ab{{1.0, -1.0}, {0.8, 0.2}};
    std::vector<double> radii{0.3, 0.6};
    int order = kDefaultOrder;
    int grid = kDefaultGrid;
    int samples = 2;
    int degree = 3;
    std::uint64_t seed = 20260816ULL;
    std::string out;            // empty: stdout
    std::string format = "csv"; // csv | json
    bool allow_high_r = false;
};

struct Overrides {
    std::optional<std::uint64_t> seed;
    std::optional<int> order;
    std::optional<int> grid;
    std::optional<int> samples;
    std::optional<std::string> radii;
    std::optional<std::string> out;
    std::optional<std::string> format;
    bool allow_high_r = false;
};

inline std::vector<double> parse_radii_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            size_t used = 0;
            const double r = std::stod(item, &used);
            if (used != item.size()) throw ConfigError("bad radius: " + item);
            out.push_back(r);
        } catch (const std::logic_error&) {
            throw ConfigError("bad radius: " + item);
        }
    }
    if (out.empty()) throw ConfigError("empty radii list");
    return out;
}

inline void config_from_json(RunConfig& cfg, const nlohmann::json& j) {
    if (!j.is_object()) throw ConfigError("config root must be a JSON object");
    try {
        for (const auto& [key, value] : j.items()) {
            if (key == "alpha") cfg.alphas = value.get<std::vector<double>>();
            else if (key == "n") cfg.ns = value.get<std::vector<int>>();
            else if (key == "ab") {
                cfg.ab.clear();
                for (const auto& pair : value) {
                    if (!pair.is_array() || pair.size() != 2)
                        throw ConfigError("ab entries must be [a, b] pairs");
                    cfg.ab.emplace_back(pair[0].get<double>(), pair[1].get<double>());
                }
            } else if (key == "radii") cfg.radii = value.get<std::vector<double>>();
            else if (key == "order") cfg.order = value.get<int>();
            else if (key == "grid") cfg.grid = value.get<int>();
            else if (key == "samples") cfg.samples = value.get<int>();
            else if (key == "degree") cfg.degree = value.get<int>();
            else if (key == "seed") cfg.seed = value.get<std::uint64_t>();
            else if (key == "out") cfg.out = value.get<std::string>();
            else if (key == "format") cfg.format = value.get<std::string>();
            else if (key == "allow_high_r") cfg.allow_high_r = value.get<bool>();
            else throw ConfigError("unknown config key: " + key);
        }
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("config type error: ") + e.what());
    }
}

inline void apply_overrides(RunConfig& cfg, const Overrides& ov) {
    if (ov.seed) cfg.seed = *ov.seed;
    if (ov.order) cfg.order = *ov.order;
    if (ov.grid) cfg.grid = *ov.grid;
    if (ov.samples) cfg.samples = *ov.samples;
    if (ov.radii) cfg.radii = parse_radii_list(*ov.radii);
    if (ov.out) cfg.out = *ov.out;
    if (ov.format) cfg.format = *ov.format;
    if (ov.allow_high_r) cfg.allow_high_r = true;
}

inline void validate_config(const RunConfig& cfg) {
    if (cfg.alphas.empty() || cfg.ns.empty() || cfg.ab.empty() || cfg.radii.empty())
        throw ConfigError("parameter grid must not be empty");
    for (double alpha : cfg.alphas)
        if (!(alpha > 0.0)) throw ConfigError("alpha entries must be positive");
    for (int n : cfg.ns)
        if (n < 0) throw ConfigError("n entries must be >= 0");
    for (const auto& [a, b] : cfg.ab)
        if (!(b >= -1.0 && b < a && a <= 1.0))
            throw ConfigError("each (a,b) must satisfy -1 <= b < a <= 1");
    for (double r : cfg.radii) {
        if (!(r > 0.0 && r < 1.0)) throw ConfigError("radii must lie in (0, 1)");
        if (r > kRadiusCap && !cfg.allow_high_r)
            throw ConfigError("radius above 0.95 requires --allow-high-r");
    }
    if (cfg.order < 1) throw ConfigError("order must be >= 1");
    if (cfg.grid < 4 || cfg.grid % 2 != 0) throw ConfigError("grid must be even and >= 4");
    if (cfg.samples < 1) throw ConfigError("samples must be >= 1");
    if (cfg.degree < 0 || cfg.degree > 8) throw ConfigError("degree must lie in [0, 8]");
    if (cfg.format != "csv" && cfg.format != "json")
        throw ConfigError("format must be csv or json");
}

inline nlohmann::ordered_json config_to_json(const RunConfig& cfg) {
    nlohmann::ordered_json j;
    j["alpha"] = cfg.alphas;
    j["n"] = cfg.ns;
    j["ab"] = nlohmann::ordered_json::array();
    for (const auto& [a, b] : cfg.ab) j["ab"].push_back({a, b});
    j["radii"] = cfg.radii;
    j["order"] = cfg.order;
    j["grid"] = cfg.grid;
    j["samples"] = cfg.samples;
    j["degree"] = cfg.degree;
    j["seed"] = cfg.seed;
    j["out"] = cfg.out;
    j["format"] = cfg.format;
    j["allow_high_r"] = cfg.allow_high_r;
    return j;
}

// Series order for a given radius: raised through the tail-bound ladder so
// high-radius suites keep truncation far below the comparison tolerances.
inline int effective_order(const RunConfig& cfg, double r) {
    return choose_order(r, cfg.order);
}

inline std::uint64_t combo_seed(std::uint64_t seed, std::uint64_t combo) {
    return sample_stream(seed, combo).state;
}

// Grid iteration order shared by verify and sweep: alpha-major, then n,
// then (a, b), matching declaration order in the config.
template <typename Fn>
void for_each_combo(const RunConfig& cfg, Fn&& fn) {
    std::uint64_t combo = 0;
    for (double alpha : cfg.alphas)
        for (int n : cfg.ns)
            for (const auto& [a, b] : cfg.ab) {
                fn(ClassParams{alpha, n, a, b}, combo);
                ++combo;
            }
}

inline VerificationReport membership_report(const ClassMember& member, double r, int grid) {
    auto res = membership_Tn(member, r, grid);
    VerificationReport rep;
    rep.check_name = "membership";
    rep.params = member.params;
    rep.r = r;
    rep.phi = "none";
    rep.lhs = res.max_modulus;
    rep.rhs = res.limit;
    rep.margin = rep.rhs - rep.lhs;
    rep.tol = 0.0;
    rep.pass = res.passed;
    rep.seed = member_seed(member);
    rep.order = member.g_series.order();
    rep.grid = grid;
    rep.witness_theta = res.witness_theta;
    if (res.degenerate) rep.note = "denominator collapsed on grid";
    return rep;
}

// All checks for one member at one radius, in fixed order.
inline std::vector<VerificationReport> verify_member_at(const ClassMember& member, double r,
                                                        int grid) {
    std::vector<VerificationReport> out;
    out.push_back(membership_report(member, r, grid));

    auto pair = derivative_means_samples(member, r, grid);
    auto neg_lhs = negate_samples(pair.lhs);
    auto neg_rhs = negate_samples(pair.rhs);
    const std::uint64_t seed = member_seed(member);
    const int order = member.g_series.order();
    for (const auto& phi : phi_family(samples_min(pair.lhs) - 1.0, samples_max(pair.rhs) + 1.0))
        out.push_back(mean_domination_report("derivative_means", member.params, r, phi,
                                             pair.lhs, pair.rhs, seed, order));
    for (const auto& phi : phi_family(samples_min(neg_lhs) - 1.0, samples_max(neg_rhs) + 1.0))
        out.push_back(mean_domination_report("derivative_means_reciprocal", member.params, r,
                                             phi, neg_lhs, neg_rhs, seed, order));

    const auto& p = member.provenance->p;
    out.push_back(check_iterate_star_domination(p, member.params, r, +1, grid, seed));
    out.push_back(check_iterate_star_domination(p, member.params, r, -1, grid, seed));
    out.push_back(check_subordinate_star_domination(p, member.params, r, grid, seed));
    out.push_back(check_koebe_star_domination(member, r, +1, grid));
    out.push_back(check_koebe_star_domination(member, r, -1, grid));
    return out;
}

inline int emit_reports(const RunConfig& cfg, const std::vector<VerificationReport>& reports) {
    write_output(cfg.out, cfg.format == "json" ? reports_to_json(reports)
                                               : reports_to_csv(reports));
    for (size_t i = 0; i < reports.size(); ++i) {
        if (!reports[i].pass) {
            std::cerr << "first failure: " << reports[i].check_name << " (report " << i
                      << (cfg.out.empty() ? ")" : ") in " + cfg.out) << "\n";
            return 1;
        }
    }
    return 0;
}

// Full inequality suite over the parameter grid.
inline int run_verify(const RunConfig& cfg) {
    validate_config(cfg);
    int n_max = cfg.order;
    for (double r : cfg.radii) n_max = std::max(n_max, effective_order(cfg, r));

    std::vector<VerificationReport> reports;
    for_each_combo(cfg, [&](const ClassParams& params, std::uint64_t combo) {
        require_theorem_range(params);
        SampleConfig scfg{combo_seed(cfg.seed, combo), cfg.degree, cfg.samples, params, n_max};
        auto members = sample_batch(scfg);
        std::vector<std::vector<VerificationReport>> per_member(members.size());
        parallel_for(static_cast<int>(members.size()), [&](int i) {
            auto& mine = per_member[static_cast<size_t>(i)];
            for (double r : cfg.radii) {
                auto batch = verify_member_at(members[static_cast<size_t>(i)], r, cfg.grid);
                mine.insert(mine.end(), batch.begin(), batch.end());
            }
            mine.push_back(check_derivative_factorization(members[static_cast<size_t>(i)]));
        });
        for (auto& chunk : per_member)
            reports.insert(reports.end(), chunk.begin(), chunk.end());
    });
    return emit_reports(cfg, reports);
}

inline std::string special_tag(const ClassParams& params) {
    std::string tag;
    if (params.n == 1 && params.alpha == 1.0) tag = "single_iteration_unit_power";
    else if (params.n == 1) tag = "single_iteration";
    else if (params.alpha == 1.0) tag = "unit_power";
    if (params.n == 1 && params.a == 1.0 && params.b == -1.0) tag += "_caratheodory";
    return tag;
}

// Margin table over the grid: sampled members plus the extremal, with the
// parameter specializations tagged per row.
inline int run_sweep(const RunConfig& cfg) {
    validate_config(cfg);
    int n_max = cfg.order;
    for (double r : cfg.radii) n_max = std::max(n_max, effective_order(cfg, r));

    struct Row {
        std::string member;
        VerificationReport rep;
    };
    std::vector<Row> rows;
    for_each_combo(cfg, [&](const ClassParams& params, std::uint64_t combo) {
        require_theorem_range(params);
        SampleConfig scfg{combo_seed(cfg.seed, combo), cfg.degree, cfg.samples, params, n_max};
        auto members = sample_batch(scfg);
        std::vector<std::pair<std::string, ClassMember>> labeled;
        for (size_t i = 0; i < members.size(); ++i)
            labeled.emplace_back("sample" + std::to_string(i), std::move(members[i]));
        labeled.emplace_back("extremal", build_extremal(ExtremalSpec{params, 0.0}, n_max));

        for (const auto& [label, member] : labeled) {
            for (double r : cfg.radii) {
                auto pair = derivative_means_samples(member, r, cfg.grid);
                auto neg_lhs = negate_samples(pair.lhs);
                auto neg_rhs = negate_samples(pair.rhs);
                const std::uint64_t seed = member_seed(member);
                for (const auto& phi :
                     phi_family(samples_min(pair.lhs) - 1.0, samples_max(pair.rhs) + 1.0))
                    rows.push_back({label, mean_domination_report("derivative_means", params, r,
                                                                  phi, pair.lhs, pair.rhs, seed,
                                                                  n_max)});
                for (const auto& phi :
                     phi_family(samples_min(neg_lhs) - 1.0, samples_max(neg_rhs) + 1.0))
                    rows.push_back({label, mean_domination_report("derivative_means_reciprocal",
                                                                  params, r, phi, neg_lhs,
                                                                  neg_rhs, seed, n_max)});
            }
        }
    });

    bool all_pass = true;
    std::string body;
    if (cfg.format == "json") {
        nlohmann::ordered_json arr = nlohmann::ordered_json::array();
        for (const auto& row : rows) {
            auto j = report_to_json(row.rep);
            j["member"] = row.member;
            j["special"] = special_tag(row.rep.params);
            arr.push_back(j);
            all_pass = all_pass && row.rep.pass;
        }
        body = arr.dump(2) + "\n";
    } else {
        body = "check,alpha,n,a,b,r,member,special,phi,seed,lhs,rhs,margin,pass\n";
        for (const auto& row : rows) {
            const auto& rep = row.rep;
            std::ostringstream os;
            os << rep.check_name << ',' << format_g17(rep.params.alpha) << ',' << rep.params.n
               << ',' << format_g17(rep.params.a) << ',' << format_g17(rep.params.b) << ','
               << format_g17(rep.r) << ',' << row.member << ',' << special_tag(rep.params)
               << ',' << rep.phi << ',' << rep.seed << ',' << format_g17(rep.lhs) << ','
               << format_g17(rep.rhs) << ',' << format_g17(rep.margin) << ','
               << (rep.pass ? 1 : 0) << '\n';
            body += os.str();
            all_pass = all_pass && rep.pass;
        }
    }
    write_output(cfg.out, body);
    if (!all_pass) std::cerr << "sweep contains failing rows" << (cfg.out.empty() ? "" : ": " + cfg.out) << "\n";
    return all_pass ? 0 : 1;
}

// Star function of one selected integrand at the first grid point.
inline int run_star(const RunConfig& cfg, const std::string& select) {
    validate_config(cfg);
    const ClassParams params{cfg.alphas[0], cfg.ns[0], cfg.ab[0].first, cfg.ab[0].second};
    const double r = cfg.radii[0];
    const int order = effective_order(cfg, r);

    RealCircleSamples samples;
    if (select == "fprime") {
        require_theorem_range(params);
        SampleConfig scfg{combo_seed(cfg.seed, 0), cfg.degree, 1, params, order};
        auto member = sample_batch(scfg).front();
        samples = log_modulus(evaluate_circle(derivative_series(member), r, cfg.grid));
    } else if (select == "ln") {
        validate_params(params);
        samples = log_modulus(evaluate_circle(janowski_Ln(params, order), r, cfg.grid));
    } else if (select == "majorant") {
        samples = majorant_samples(params, r, cfg.grid, order);
    } else {
        throw ConfigError("star selector must be one of: fprime, ln, majorant");
    }
    auto star = star_function(samples);
    if (cfg.format == "json") {
        nlohmann::ordered_json arr = nlohmann::ordered_json::array();
        for (size_t m = 0; m < star.values.size(); ++m)
            arr.push_back({{"theta", star.theta_grid[m]}, {"value", star.values[m]}});
        write_output(cfg.out, arr.dump(2) + "\n");
    } else {
        write_output(cfg.out, star_to_csv(star));
    }
    return 0;
}

// Coefficient table for L_n, L_{n-1}, and the majorant series.
inline int run_series(const RunConfig& cfg) {
    validate_config(cfg);
    const ClassParams params{cfg.alphas[0], cfg.ns[0], cfg.ab[0].first, cfg.ab[0].second};
    if (params.n < 1) throw ConfigError("series command needs n >= 1");
    validate_params(params);
    ClassParams prev = params;
    prev.n = params.n - 1;
    const auto l_n = janowski_Ln(params, cfg.order);
    const auto l_prev = janowski_Ln(prev, cfg.order);
    const auto majorant = mul(l_prev, pow_real(koebe_over_z(cfg.order), 1.0 - params.alpha));

    const std::vector<std::pair<std::string, const TruncatedSeries*>> tables = {
        {"Ln", &l_n}, {"Ln_minus_1", &l_prev}, {"majorant", &majorant}};
    if (cfg.format == "json") {
        nlohmann::ordered_json arr = nlohmann::ordered_json::array();
        for (const auto& [name, series] : tables)
            for (int k = 0; k <= series->order(); ++k)
                arr.push_back({{"series", name},
                               {"k", k},
                               {"re", (*series)[k].real()},
                               {"im", (*series)[k].imag()}});
        write_output(cfg.out, arr.dump(2) + "\n");
    } else {
        std::string body = "series,k,re,im\n";
        for (const auto& [name, series] : tables)
            for (int k = 0; k <= series->order(); ++k)
                body += name + "," + std::to_string(k) + "," + format_g17((*series)[k].real()) +
                        "," + format_g17((*series)[k].imag()) + "\n";
        write_output(cfg.out, body);
    }
    return 0;
}

// Coefficient dump of sampled members at the first grid point.
inline int run_sample(const RunConfig& cfg) {
    validate_config(cfg);
    const ClassParams params{cfg.alphas[0], cfg.ns[0], cfg.ab[0].first, cfg.ab[0].second};
    validate_params(params);
    SampleConfig scfg{cfg.seed, cfg.degree, cfg.samples, params, cfg.order};
    auto members = sample_batch(scfg);
    if (cfg.format == "json") {
        nlohmann::ordered_json arr = nlohmann::ordered_json::array();
        for (size_t i = 0; i < members.size(); ++i)
            for (int k = 0; k <= members[i].g_series.order(); ++k)
                arr.push_back({{"sample", i},
                               {"k", k},
                               {"re", members[i].g_series[k].real()},
                               {"im", members[i].g_series[k].imag()}});
        write_output(cfg.out, arr.dump(2) + "\n");
    } else {
        std::string body = "sample,k,re,im\n";
        for (size_t i = 0; i < members.size(); ++i)
            for (int k = 0; k <= members[i].g_series.order(); ++k)
                body += std::to_string(i) + "," + std::to_string(k) + "," +
                        format_g17(members[i].g_series[k].real()) + "," +
                        format_g17(members[i].g_series[k].imag()) + "\n";
        write_output(cfg.out, body);
    }
    return 0;
}

}  // namespace starmeans::app
