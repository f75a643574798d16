#pragma once

// Triangulations of star-shaped domains in 2-D space forms, realized in the
// conformal disk chart: metric lambda(p)^2 (dx^2 + dy^2) with
// lambda = 2/(1 + k|p|^2), and lambda = 1 for k = 0 (raw Euclidean
// coordinates). Domains are described by a geodesic polar radius rho(theta);
// meshes are mapped-polar: rings s_i rho(theta_j) with node counts growing
// linearly per ring.

#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "serrinlab/warp.hpp"

namespace serrinlab {

// Chart <-> geodesic radius maps for curvature k.
inline double chart_radius(double r_geo, double k) {
    if (k == 0) return r_geo;
    if (k > 0) {
        const double s = std::sqrt(k);
        return std::tan(s * r_geo / 2) / s;
    }
    const double s = std::sqrt(-k);
    return std::tanh(s * r_geo / 2) / s;
}
inline double geodesic_radius(double r_chart, double k) {
    if (k == 0) return r_chart;
    if (k > 0) {
        const double s = std::sqrt(k);
        return 2 * std::atan(s * r_chart) / s;
    }
    const double s = std::sqrt(-k);
    return 2 * std::atanh(s * r_chart) / s;
}
/// d(chart)/d(r_geo) and the second derivative, for boundary curvature.
inline double chart_radius_d1(double r_geo, double k) {
    if (k == 0) return 1.0;
    if (k > 0) {
        const double c = std::cos(std::sqrt(k) * r_geo / 2);
        return 0.5 / (c * c);
    }
    const double c = std::cosh(std::sqrt(-k) * r_geo / 2);
    return 0.5 / (c * c);
}
inline double chart_radius_d2(double r_geo, double k) {
    if (k == 0) return 0.0;
    if (k > 0) {
        const double s = std::sqrt(k);
        const double c = std::cos(s * r_geo / 2);
        return 0.5 * s * std::sin(s * r_geo / 2) / (c * c * c);
    }
    const double s = std::sqrt(-k);
    const double c = std::cosh(s * r_geo / 2);
    return -0.5 * s * std::sinh(s * r_geo / 2) / (c * c * c);
}

inline double conformal_lambda(double k, double x, double y) {
    if (k == 0) return 1.0;
    return 2.0 / (1.0 + k * (x * x + y * y));
}

/// Star-shaped domain in a 2-D space form; rho(theta) is the geodesic
/// distance from the center to the boundary along the ray at angle theta.
struct DomainSpec {
    enum class Kind { Disk, Ellipse, PerturbedDisk };
    Kind kind = Kind::Disk;
    double radius = 1.0;  // disk / perturbed disk
    double a = 1.5, b = 1.0;  // ellipse semi-axes
    double eps = 0.0;
    int modes = 0;        // perturbed disk: rho = R(1 + eps cos(modes*theta))
    double k = 0.0;
    double h = 0.1;       // target max Euclidean edge length in the chart

    double rho_geo(double theta) const {
        switch (kind) {
            case Kind::Disk: return radius;
            case Kind::Ellipse: {
                const double d = b * b * std::cos(theta) * std::cos(theta)
                               + a * a * std::sin(theta) * std::sin(theta);
                return a * b / std::sqrt(d);
            }
            case Kind::PerturbedDisk:
                return radius * (1.0 + eps * std::cos(modes * theta));
        }
        return radius;
    }
    double rho_geo_d1(double theta) const {
        switch (kind) {
            case Kind::Disk: return 0.0;
            case Kind::Ellipse: {
                const double d = b * b * std::cos(theta) * std::cos(theta)
                               + a * a * std::sin(theta) * std::sin(theta);
                const double d1 = (a * a - b * b) * std::sin(2 * theta);
                return -0.5 * a * b * d1 / std::pow(d, 1.5);
            }
            case Kind::PerturbedDisk:
                return -radius * eps * modes * std::sin(modes * theta);
        }
        return 0.0;
    }
    double rho_geo_d2(double theta) const {
        switch (kind) {
            case Kind::Disk: return 0.0;
            case Kind::Ellipse: {
                const double d = b * b * std::cos(theta) * std::cos(theta)
                               + a * a * std::sin(theta) * std::sin(theta);
                const double d1 = (a * a - b * b) * std::sin(2 * theta);
                const double d2 = 2 * (a * a - b * b) * std::cos(2 * theta);
                return a * b * (0.75 * d1 * d1 / std::pow(d, 2.5) - 0.5 * d2 / std::pow(d, 1.5));
            }
            case Kind::PerturbedDisk:
                return -radius * eps * modes * modes * std::cos(modes * theta);
        }
        return 0.0;
    }

    /// Chart radius of the boundary at angle theta, with derivatives.
    double rho_chart(double theta) const { return chart_radius(rho_geo(theta), k); }
    double rho_chart_d1(double theta) const {
        return chart_radius_d1(rho_geo(theta), k) * rho_geo_d1(theta);
    }
    double rho_chart_d2(double theta) const {
        const double g1 = rho_geo_d1(theta);
        return chart_radius_d2(rho_geo(theta), k) * g1 * g1
             + chart_radius_d1(rho_geo(theta), k) * rho_geo_d2(theta);
    }

    /// Euclidean curvature of the chart boundary curve at angle theta.
    double boundary_chart_curvature(double theta) const {
        const double r = rho_chart(theta);
        const double r1 = rho_chart_d1(theta);
        const double r2 = rho_chart_d2(theta);
        return (r * r + 2 * r1 * r1 - r * r2) / std::pow(r * r + r1 * r1, 1.5);
    }

    void validate() const {
        double rmax = 0, rmin = std::numeric_limits<double>::infinity();
        for (int i = 0; i < 720; ++i) {
            const double r = rho_geo(2 * kPi * i / 720.0);
            rmax = std::max(rmax, r);
            rmin = std::min(rmin, r);
        }
        if (!(rmin > 0)) throw std::invalid_argument("domain: boundary radius must stay positive");
        if (k > 0 && 2 * rmax >= kPi / std::sqrt(k))
            throw std::domain_error("domain: geodesic diameter exceeds the conformal chart "
                                    "(need diameter < pi/sqrt(k))");
        if (!(h > 0)) throw std::invalid_argument("domain: mesh size h must be positive");
        if (kind == Kind::Ellipse && !(a > 0 && b > 0))
            throw std::invalid_argument("domain: ellipse semi-axes must be positive");
        if (kind == Kind::PerturbedDisk && !(std::abs(eps) < 1.0))
            throw std::invalid_argument("domain: |eps| must be < 1");
    }
};

struct Mesh {
    std::vector<std::array<double, 2>> nodes;
    std::vector<std::array<int, 3>> triangles;       // positively oriented
    std::vector<std::array<int, 2>> boundary_edges;  // CCW loop
    double k = 0.0;
    std::vector<double> lambda;  // conformal factor at nodes

    void compute_lambda() {
        lambda.resize(nodes.size());
        for (std::size_t i = 0; i < nodes.size(); ++i)
            lambda[i] = conformal_lambda(k, nodes[i][0], nodes[i][1]);
    }

    double triangle_area(int t) const {
        const auto& p0 = nodes[triangles[t][0]];
        const auto& p1 = nodes[triangles[t][1]];
        const auto& p2 = nodes[triangles[t][2]];
        return 0.5 * ((p1[0] - p0[0]) * (p2[1] - p0[1]) - (p2[0] - p0[0]) * (p1[1] - p0[1]));
    }

    double max_edge_length() const {
        double worst = 0;
        for (const auto& t : triangles)
            for (int e = 0; e < 3; ++e) {
                const auto& p = nodes[t[e]];
                const auto& q = nodes[t[(e + 1) % 3]];
                worst = std::max(worst, std::hypot(q[0] - p[0], q[1] - p[1]));
            }
        return worst;
    }

    std::vector<bool> boundary_node_mask() const {
        std::vector<bool> mask(nodes.size(), false);
        for (const auto& e : boundary_edges) {
            mask[e[0]] = true;
            mask[e[1]] = true;
        }
        return mask;
    }

    /// Nondegenerate triangles, a single CCW boundary loop, disk topology.
    void validate() const {
        if (nodes.empty() || triangles.empty() || boundary_edges.empty())
            throw std::invalid_argument("mesh: empty");
        for (std::size_t t = 0; t < triangles.size(); ++t) {
            for (int v : triangles[t])
                if (v < 0 || v >= static_cast<int>(nodes.size()))
                    throw std::invalid_argument("mesh: triangle index out of range");
            if (!(triangle_area(static_cast<int>(t)) > 1e-14))
                throw std::invalid_argument("mesh: degenerate or misoriented triangle");
        }
        std::set<std::pair<int, int>> edges;
        for (const auto& t : triangles)
            for (int e = 0; e < 3; ++e) {
                int i = t[e], j = t[(e + 1) % 3];
                edges.insert({std::min(i, j), std::max(i, j)});
            }
        const long V = static_cast<long>(nodes.size());
        const long E = static_cast<long>(edges.size());
        const long F = static_cast<long>(triangles.size());
        if (V - E + F != 1)
            throw std::invalid_argument("mesh: not a disk (V - E + F != 1)");
        // Boundary must chain into one closed loop.
        std::vector<int> next(nodes.size(), -1);
        for (const auto& e : boundary_edges) {
            if (next[e[0]] != -1) throw std::invalid_argument("mesh: boundary not a simple loop");
            next[e[0]] = e[1];
        }
        int start = boundary_edges.front()[0];
        int cur = start;
        std::size_t count = 0;
        do {
            if (next[cur] == -1) throw std::invalid_argument("mesh: boundary loop broken");
            cur = next[cur];
            if (++count > boundary_edges.size())
                throw std::invalid_argument("mesh: boundary has multiple loops");
        } while (cur != start);
        if (count != boundary_edges.size())
            throw std::invalid_argument("mesh: boundary has multiple loops");
        double area2 = 0;
        for (const auto& e : boundary_edges)
            area2 += nodes[e[0]][0] * nodes[e[1]][1] - nodes[e[1]][0] * nodes[e[0]][1];
        if (!(area2 > 0)) throw std::invalid_argument("mesh: boundary loop not counterclockwise");
    }
};

/// Mapped-polar triangulation. Deterministic for a fixed spec; regenerates
/// with more rings until the max edge length target is met.
inline Mesh generate_mesh(const DomainSpec& spec) {
    spec.validate();
    double rho_max = 0;
    for (int i = 0; i < 2048; ++i)
        rho_max = std::max(rho_max, spec.rho_chart(2 * kPi * i / 2048.0));

    int rings = std::max(2, static_cast<int>(std::ceil(1.6 * rho_max / spec.h)));
    for (int attempt = 0; attempt < 12; ++attempt) {
        const int base = std::max(
            6, static_cast<int>(std::ceil(1.6 * 2 * kPi * rho_max / (rings * spec.h))));
        Mesh mesh;
        mesh.k = spec.k;
        mesh.nodes.push_back({0.0, 0.0});
        std::vector<std::vector<int>> ring_nodes(rings + 1);
        ring_nodes[0] = {0};
        for (int i = 1; i <= rings; ++i) {
            const int count = base * i;
            const double s = static_cast<double>(i) / rings;
            ring_nodes[i].reserve(count);
            for (int j = 0; j < count; ++j) {
                const double theta = 2 * kPi * j / count;
                const double r = s * spec.rho_chart(theta);
                ring_nodes[i].push_back(static_cast<int>(mesh.nodes.size()));
                mesh.nodes.push_back({r * std::cos(theta), r * std::sin(theta)});
            }
        }
        // Center fan.
        for (int j = 0; j < base; ++j)
            mesh.triangles.push_back({0, ring_nodes[1][j], ring_nodes[1][(j + 1) % base]});
        // Annular strips: merge the two rings by angle.
        for (int i = 2; i <= rings; ++i) {
            const auto& inner = ring_nodes[i - 1];
            const auto& outer = ring_nodes[i];
            const int p = static_cast<int>(inner.size());
            const int q = static_cast<int>(outer.size());
            int ii = 0, oi = 0;
            while (ii < p || oi < q) {
                const double a_in = 2 * kPi * (ii + 1) / p;
                const double a_out = 2 * kPi * (oi + 1) / q;
                if (ii < p && (oi >= q || a_in <= a_out)) {
                    mesh.triangles.push_back({inner[ii % p], outer[oi % q], inner[(ii + 1) % p]});
                    ++ii;
                } else {
                    mesh.triangles.push_back({inner[ii % p], outer[oi % q], outer[(oi + 1) % q]});
                    ++oi;
                }
            }
        }
        const auto& rim = ring_nodes[rings];
        for (std::size_t j = 0; j < rim.size(); ++j)
            mesh.boundary_edges.push_back({rim[j], rim[(j + 1) % rim.size()]});
        mesh.compute_lambda();
        if (mesh.max_edge_length() <= spec.h || attempt == 11) {
            mesh.validate();
            return mesh;
        }
        rings = static_cast<int>(std::ceil(rings * 1.3));
    }
    throw std::logic_error("generate_mesh: unreachable");
}

// ---------------------------------------------------------------------------
// Mesh text format: `v <x> <y>`, `t <i> <j> <k>` (0-based), `b <i> <j>`
// (CCW); `#` starts a comment. Doubles are written with 17 significant
// digits so the writer/reader pair round-trips bit-exactly.

inline void write_mesh(const Mesh& mesh, std::ostream& os) {
    char buf[128];
    for (const auto& p : mesh.nodes) {
        std::snprintf(buf, sizeof buf, "v %.17g %.17g\n", p[0], p[1]);
        os << buf;
    }
    for (const auto& t : mesh.triangles) {
        std::snprintf(buf, sizeof buf, "t %d %d %d\n", t[0], t[1], t[2]);
        os << buf;
    }
    for (const auto& e : mesh.boundary_edges) {
        std::snprintf(buf, sizeof buf, "b %d %d\n", e[0], e[1]);
        os << buf;
    }
}

inline void write_mesh_file(const Mesh& mesh, const std::string& path) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("write_mesh: cannot open " + path);
    write_mesh(mesh, os);
}

inline Mesh read_mesh(std::istream& is, double k) {
    Mesh mesh;
    mesh.k = k;
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ss(line);
        std::string tag;
        if (!(ss >> tag)) continue;
        if (tag == "v") {
            double x, y;
            if (!(ss >> x >> y))
                throw std::invalid_argument("mesh: bad vertex at line " + std::to_string(lineno));
            mesh.nodes.push_back({x, y});
        } else if (tag == "t") {
            int i, j, l;
            if (!(ss >> i >> j >> l))
                throw std::invalid_argument("mesh: bad triangle at line " + std::to_string(lineno));
            mesh.triangles.push_back({i, j, l});
        } else if (tag == "b") {
            int i, j;
            if (!(ss >> i >> j))
                throw std::invalid_argument("mesh: bad boundary edge at line " + std::to_string(lineno));
            mesh.boundary_edges.push_back({i, j});
        } else {
            throw std::invalid_argument("mesh: unknown tag '" + tag + "' at line " +
                                        std::to_string(lineno));
        }
    }
    mesh.compute_lambda();
    mesh.validate();
    return mesh;
}

inline Mesh read_mesh_file(const std::string& path, double k) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("read_mesh: cannot open " + path);
    return read_mesh(is, k);
}

}  // namespace serrinlab
