#pragma once

// Report assembly and rendering: table for humans, JSON for tooling, CSV
// for plots and regression rows. CSV and table output contain no
// timestamps, so identical invocations render byte-identical output; the
// timestamp lives in the JSON metadata only.

#include <cstdio>
#include <ctime>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "serrinlab/identity_report.hpp"

namespace serrinlab {

struct ReportBundle {
    std::string command;
    std::string version = "0.1.0";
    std::map<std::string, std::string> parameters;
    std::vector<IdentityReport> reports;

    /// Conjunction of pass over reports whose hypotheses hold.
    bool overall_pass() const {
        for (const auto& r : reports)
            if (r.hypothesis_met && !r.pass) return false;
        return true;
    }

    nlohmann::ordered_json to_json(bool with_timestamp = true) const {
        nlohmann::ordered_json j;
        j["metadata"]["command"] = command;
        j["metadata"]["version"] = version;
        if (with_timestamp) {
            char buf[64];
            std::time_t now = std::time(nullptr);
            std::tm tm{};
            gmtime_r(&now, &tm);
            std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
            j["metadata"]["timestamp"] = buf;
        }
        j["metadata"]["parameters"] = nlohmann::ordered_json::object();
        for (const auto& [k, v] : parameters) j["metadata"]["parameters"][k] = v;
        j["reports"] = nlohmann::ordered_json::array();
        for (const auto& r : reports) j["reports"].push_back(r.to_json());
        j["overall_pass"] = overall_pass();
        return j;
    }
};

namespace render {

inline std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}
inline std::string num6(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6e", v);
    return buf;
}

inline void table(const ReportBundle& bundle, std::ostream& os) {
    char buf[256];
    std::snprintf(buf, sizeof buf, "%-18s %14s %14s %12s %10s %5s %5s\n", "identity", "lhs",
                  "rhs", "resid_rel", "tol", "hyp", "pass");
    os << buf;
    os << std::string(84, '-') << "\n";
    for (const auto& r : bundle.reports) {
        std::snprintf(buf, sizeof buf, "%-18s %14s %14s %12s %10.1e %5s %5s\n", r.name.c_str(),
                      num6(r.lhs).c_str(), num6(r.rhs).c_str(), num6(r.residual_rel).c_str(),
                      r.tolerance, r.hypothesis_met ? "yes" : "no",
                      !r.hypothesis_met ? "-" : (r.pass ? "ok" : "FAIL"));
        os << buf;
    }
    os << std::string(84, '-') << "\n";
    os << "overall: " << (bundle.overall_pass() ? "pass" : "FAIL") << "\n";
}

/// Flattened CSV: one column per (identity, field) pair including every
/// term, one row per bundle. `extra` columns (e.g. the swept parameter)
/// lead the row.
inline std::vector<std::pair<std::string, std::string>> flatten(const ReportBundle& bundle) {
    std::vector<std::pair<std::string, std::string>> cols;
    for (const auto& r : bundle.reports) {
        const std::string p = r.name + ".";
        cols.emplace_back(p + "lhs", num(r.lhs));
        cols.emplace_back(p + "rhs", num(r.rhs));
        cols.emplace_back(p + "residual_abs", num(r.residual_abs));
        cols.emplace_back(p + "residual_rel", num(r.residual_rel));
        cols.emplace_back(p + "pass", r.pass ? "1" : "0");
        cols.emplace_back(p + "hypothesis_met", r.hypothesis_met ? "1" : "0");
        cols.emplace_back(p + "tolerance", num(r.tolerance));
        for (const auto& [k, v] : r.terms) cols.emplace_back(p + k, num(v));
    }
    return cols;
}

inline void csv(const std::vector<ReportBundle>& rows,
                const std::vector<std::pair<std::string, std::string>>& leading_per_row_header,
                const std::vector<std::vector<std::string>>& leading_values, std::ostream& os) {
    if (rows.empty()) return;
    const auto cols0 = flatten(rows.front());
    for (std::size_t i = 0; i < leading_per_row_header.size(); ++i)
        os << (i ? "," : "") << leading_per_row_header[i].first;
    for (std::size_t i = 0; i < cols0.size(); ++i)
        os << (leading_per_row_header.empty() && i == 0 ? "" : ",") << cols0[i].first;
    os << "\n";
    for (std::size_t rix = 0; rix < rows.size(); ++rix) {
        const auto cols = flatten(rows[rix]);
        for (std::size_t i = 0; i < leading_values[rix].size(); ++i)
            os << (i ? "," : "") << leading_values[rix][i];
        for (std::size_t i = 0; i < cols.size(); ++i)
            os << (leading_values[rix].empty() && i == 0 ? "" : ",") << cols[i].second;
        os << "\n";
    }
}

}  // namespace render
}  // namespace serrinlab
