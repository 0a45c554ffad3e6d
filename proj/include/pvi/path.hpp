#pragma once

// piecewise paths in the z-plane: straight segments and circular arcs, arclength-parametrised

#include <cmath>
#include <vector>

#include "pvi/types.hpp"

namespace pvi {

struct PathPiece {
    enum class Kind { Segment, Arc };
    Kind kind = Kind::Segment;
    cplx a{}, b{};          // segment ends
    cplx center{};          // arc
    double radius = 0.0;
    double phi0 = 0.0;      // start angle
    double dphi = 0.0;      // signed sweep

    static PathPiece segment(cplx a, cplx b) { return {Kind::Segment, a, b, 0.0, 0.0, 0.0, 0.0}; }
    static PathPiece arc(cplx c, double r, double phi0, double dphi) { return {Kind::Arc, 0.0, 0.0, c, r, phi0, dphi}; }

    double length() const { return kind == Kind::Segment ? std::abs(b - a) : radius * std::abs(dphi); }

    cplx z(double s) const {
        if (kind == Kind::Segment) {
            double L = length();
            return L == 0.0 ? a : a + (b - a) * (s / L);
        }
        double phi = phi0 + std::copysign(s / radius, dphi);
        return center + radius * std::polar(1.0, phi);
    }

    // dz/ds, unit modulus
    cplx dz(double s) const {
        if (kind == Kind::Segment) {
            double L = length();
            return L == 0.0 ? cplx(0.0) : (b - a) / L;
        }
        double sg = dphi >= 0 ? 1.0 : -1.0;
        double phi = phi0 + sg * s / radius;
        return sg * kI * std::polar(1.0, phi);
    }

    cplx start() const { return z(0.0); }
    cplx end() const { return kind == Kind::Segment ? b : center + radius * std::polar(1.0, phi0 + dphi); }

    PathPiece reversed() const {
        if (kind == Kind::Segment) return segment(b, a);
        return arc(center, radius, phi0 + dphi, -dphi);
    }

    // distance from w to the piece
    double distance_to(cplx w) const {
        if (kind == Kind::Segment) {
            cplx d = b - a;
            double L2 = std::norm(d);
            if (L2 == 0.0) return std::abs(w - a);
            double u = std::clamp(((w - a) * std::conj(d)).real() / L2, 0.0, 1.0);
            return std::abs(a + u * d - w);
        }
        // is the direction of w inside the swept range?
        double ang = std::arg(w - center);
        double lo = std::min(phi0, phi0 + dphi), hi = std::max(phi0, phi0 + dphi);
        double rel = ang - lo;
        rel -= 2 * kPi * std::floor(rel / (2 * kPi));
        if (rel <= hi - lo || std::abs(w - center) == 0.0) return std::abs(std::abs(w - center) - radius);
        return std::min(std::abs(w - start()), std::abs(w - end()));
    }
};

struct Path {
    std::vector<PathPiece> pieces;

    static Path polyline(const std::vector<cplx>& pts) {
        Path p;
        for (size_t i = 1; i < pts.size(); ++i) p.pieces.push_back(PathPiece::segment(pts[i - 1], pts[i]));
        return p;
    }

    double length() const {
        double L = 0;
        for (auto& pc : pieces) L += pc.length();
        return L;
    }
    cplx start() const { return pieces.empty() ? cplx(0.0) : pieces.front().start(); }
    cplx end() const { return pieces.empty() ? cplx(0.0) : pieces.back().end(); }
    bool closed(double tol = 1e-12) const { return std::abs(end() - start()) <= tol * (1.0 + std::abs(start())); }

    Path reversed() const {
        Path r;
        for (auto it = pieces.rbegin(); it != pieces.rend(); ++it) r.pieces.push_back(it->reversed());
        return r;
    }
    Path& operator+=(const Path& o) {
        pieces.insert(pieces.end(), o.pieces.begin(), o.pieces.end());
        return *this;
    }
    double distance_to(cplx w) const {
        double d = INFINITY;
        for (auto& pc : pieces) d = std::min(d, pc.distance_to(w));
        return d;
    }
};

inline Path operator+(Path a, const Path& b) { return a += b; }

}  // namespace pvi
