#pragma once
// Serialization: 17-significant-digit CSV (bit-exact golden-file format) and
// JSON report encoding. CSV uses '.' decimals, comma separators, LF endings.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "starmeans/baernstein.hpp"
#include "starmeans/verification.hpp"

namespace starmeans {

inline std::string format_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline nlohmann::ordered_json report_to_json(const VerificationReport& rep) {
    nlohmann::ordered_json j;
    j["check_name"] = rep.check_name;
    j["params"] = {{"alpha", rep.params.alpha},
                   {"n", rep.params.n},
                   {"a", rep.params.a},
                   {"b", rep.params.b}};
    j["r"] = rep.r;
    j["phi"] = rep.phi;
    j["lhs"] = rep.lhs;
    j["rhs"] = rep.rhs;
    j["margin"] = rep.margin;
    j["pass"] = rep.pass;
    j["seed"] = rep.seed;
    j["N"] = rep.order;
    j["M"] = rep.grid;
    j["tol"] = rep.tol;
    j["witness_theta"] = rep.witness_theta;
    j["note"] = rep.note;
    return j;
}

inline std::string reports_to_json(const std::vector<VerificationReport>& reports) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& rep : reports) arr.push_back(report_to_json(rep));
    return arr.dump(2) + "\n";
}

inline const char* kReportCsvHeader =
    "check_name,alpha,n,a,b,r,phi,lhs,rhs,margin,pass,seed,N,M,tol,witness_theta,note";

inline std::string report_to_csv_row(const VerificationReport& rep) {
    std::ostringstream os;
    os << rep.check_name << ',' << format_g17(rep.params.alpha) << ',' << rep.params.n << ','
       << format_g17(rep.params.a) << ',' << format_g17(rep.params.b) << ','
       << format_g17(rep.r) << ',' << rep.phi << ',' << format_g17(rep.lhs) << ','
       << format_g17(rep.rhs) << ',' << format_g17(rep.margin) << ',' << (rep.pass ? 1 : 0)
       << ',' << rep.seed << ',' << rep.order << ',' << rep.grid << ',' << format_g17(rep.tol)
       << ',' << format_g17(rep.witness_theta) << ',' << rep.note;
    return os.str();
}

inline std::string reports_to_csv(const std::vector<VerificationReport>& reports) {
    std::string out = kReportCsvHeader;
    out += '\n';
    for (const auto& rep : reports) {
        out += report_to_csv_row(rep);
        out += '\n';
    }
    return out;
}

inline std::string star_to_csv(const StarFunction& star) {
    std::string out = "theta,value\n";
    for (size_t m = 0; m < star.values.size(); ++m) {
        out += format_g17(star.theta_grid[m]);
        out += ',';
        out += format_g17(star.values[m]);
        out += '\n';
    }
    return out;
}

inline std::string samples_to_csv(const CircleSamples& samples) {
    std::string out = "theta,re,im\n";
    for (int j = 0; j < samples.size(); ++j) {
        out += format_g17(samples.theta_at(j));
        out += ',';
        out += format_g17(samples.values[static_cast<size_t>(j)].real());
        out += ',';
        out += format_g17(samples.values[static_cast<size_t>(j)].imag());
        out += '\n';
    }
    return out;
}

// Write to the path, or to stdout when the path is empty.
inline void write_output(const std::string& path, const std::string& content) {
    if (path.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) throw std::runtime_error("cannot open output file: " + path);
    file << content;
}

}  // namespace starmeans
