#pragma once

#include <cmath>
#include <map>
#include <string>
#include <utility>

#include <json.hpp>

namespace serrinlab {

/// Result of one integral-identity / inequality / rigidity check.
/// residual_rel divides by max(|lhs|, |rhs|, floor) where the floor is
/// 1e-14 times the sum of the magnitudes of all recorded terms, so exact
/// equality cases (0 vs 0) report a zero residual instead of 0/0.
struct IdentityReport {
    std::string name;
    double lhs = 0;
    double rhs = 0;
    double residual_abs = 0;
    double residual_rel = 0;
    bool pass = false;
    bool hypothesis_met = true;
    double tolerance = 0;
    std::map<std::string, double> terms;

    nlohmann::ordered_json to_json() const {
        nlohmann::ordered_json j;
        j["name"] = name;
        j["lhs"] = lhs;
        j["rhs"] = rhs;
        j["residual_abs"] = residual_abs;
        j["residual_rel"] = residual_rel;
        j["pass"] = pass;
        j["hypothesis_met"] = hypothesis_met;
        j["tolerance"] = tolerance;
        j["terms"] = nlohmann::ordered_json::object();
        for (const auto& [key, value] : terms) j["terms"][key] = value;
        return j;
    }
};

namespace detail {

inline double report_floor(const std::map<std::string, double>& terms) {
    double s = 0;
    for (const auto& [k, v] : terms) s += std::abs(v);
    return 1e-14 * s;
}

}  // namespace detail

/// Equality-type report: pass iff the sides agree to `tol` relative to
/// max(|lhs|, |rhs|, scale_hint). The scale hint carries the magnitude of
/// the quantities that cancel when the identity sits in its equality case
/// (both sides ~ roundoff of O(1) integrals); without it those cases would
/// compare two tiny numbers against each other.
inline IdentityReport make_equality_report(std::string name, double lhs, double rhs, double tol,
                                           std::map<std::string, double> terms = {},
                                           bool hypothesis_met = true, double scale_hint = 0.0) {
    IdentityReport r;
    r.name = std::move(name);
    r.lhs = lhs;
    r.rhs = rhs;
    r.terms = std::move(terms);
    r.residual_abs = std::abs(lhs - rhs);
    const double denom = std::max({std::abs(lhs), std::abs(rhs), detail::report_floor(r.terms)});
    r.residual_rel = denom > 0 ? r.residual_abs / denom : 0.0;
    r.tolerance = tol;
    r.hypothesis_met = hypothesis_met;
    const double scale = std::max({std::abs(lhs), std::abs(rhs), scale_hint});
    r.pass = hypothesis_met && r.residual_abs <= tol * scale;
    return r;
}

/// Inequality-type report: pass iff lhs - rhs >= -tol*scale.
inline IdentityReport make_inequality_report(std::string name, double lhs, double rhs, double tol,
                                             std::map<std::string, double> terms = {},
                                             bool hypothesis_met = true) {
    IdentityReport r;
    r.name = std::move(name);
    r.lhs = lhs;
    r.rhs = rhs;
    r.terms = std::move(terms);
    r.residual_abs = std::abs(lhs - rhs);
    const double denom = std::max({std::abs(lhs), std::abs(rhs), detail::report_floor(r.terms)});
    r.residual_rel = denom > 0 ? r.residual_abs / denom : 0.0;
    r.tolerance = tol;
    r.hypothesis_met = hypothesis_met;
    const double scale = std::max(1.0, denom);
    r.pass = hypothesis_met && (lhs - rhs) >= -tol * scale;
    return r;
}

}  // namespace serrinlab
