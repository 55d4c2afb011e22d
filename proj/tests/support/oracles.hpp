#pragma once

// Test-only reference computations. Nothing here calls the library's
// predicates: segment intersections are solved parametrically with Cramer's
// rule and tangency is decided by wedge membership rather than by angular
// sorting.

#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <vector>

#include "jarc/curve.hpp"
#include "jarc/incidence.hpp"

namespace oracle {

using jarc::PolylineCurve;
using jarc::Rational;
using jarc::RationalPoint;

inline Rational det(const Rational& a, const Rational& b, const Rational& c, const Rational& d) { return a * d - b * c; }

/// Every common point of two closed segments, or nullopt + overlap flag.
struct SegmentSolve {
    std::vector<RationalPoint> points;
    bool overlap = false;
};

inline SegmentSolve solve_segments(const RationalPoint& p0, const RationalPoint& p1, const RationalPoint& q0,
                                   const RationalPoint& q1) {
    SegmentSolve out;
    if (p0 == p1) {
        // Point probe: p0 on [q0, q1]?
        Rational ex = q1.x - q0.x, ey = q1.y - q0.y, fx = p0.x - q0.x, fy = p0.y - q0.y;
        Rational dt = ex * fx + ey * fy;
        if (det(ex, fx, ey, fy) == 0 && dt >= 0 && dt <= ex * ex + ey * ey) out.points.push_back(p0);
        return out;
    }
    // p0 + t (p1 - p0) = q0 + u (q1 - q0)
    Rational ax = p1.x - p0.x, ay = p1.y - p0.y;
    Rational bx = q0.x - q1.x, by = q0.y - q1.y;
    Rational cx = q0.x - p0.x, cy = q0.y - p0.y;
    Rational D = det(ax, bx, ay, by);
    if (D != 0) {
        Rational t = det(cx, bx, cy, by) / D;
        Rational u = det(ax, cx, ay, cy) / D;
        if (t >= 0 && t <= 1 && u >= 0 && u <= 1) out.points.push_back(RationalPoint(p0.x + t * ax, p0.y + t * ay));
        return out;
    }
    // Parallel: collinear only if q0 is on p's line.
    if (det(ax, cx, ay, cy) != 0) return out;
    Rational len2 = ax * ax + ay * ay;
    auto param = [&](const RationalPoint& q) -> Rational { return ((q.x - p0.x) * ax + (q.y - p0.y) * ay) / len2; };
    Rational u0 = param(q0), u1 = param(q1);
    if (u1 < u0) std::swap(u0, u1);
    Rational lo = u0 > 0 ? u0 : Rational(0);
    Rational hi = u1 < 1 ? u1 : Rational(1);
    if (lo > hi) return out;
    if (lo < hi) {
        out.overlap = true;
        return out;
    }
    out.points.push_back(RationalPoint(p0.x + lo * ax, p0.y + lo * ay));
    return out;
}

inline bool in_open_wedge(const RationalPoint& from, const RationalPoint& to, const RationalPoint& d) {
    // Counter-clockwise open wedge from `from` to `to`.
    auto cr = [](const RationalPoint& u, const RationalPoint& v) { return Rational(u.x * v.y - u.y * v.x); };
    Rational w = cr(from, to);
    if (w > 0) return cr(from, d) > 0 && cr(d, to) > 0;
    if (w < 0) return !(cr(to, d) >= 0 && cr(d, from) >= 0);
    // Straight angle.
    return cr(from, d) > 0;
}

enum class Kind { Crossing, Tangency, Degenerate };

/// All intersection points of two curves with their classification.
/// Degenerate marks any contact outside the allowed catalog.
inline std::map<RationalPoint, Kind> brute_force_incidences(const PolylineCurve& a, const PolylineCurve& b) {
    std::map<RationalPoint, Kind> out;
    std::set<RationalPoint> points;
    bool overlap = false;
    for (std::size_t i = 0; i < a.segment_count(); ++i)
        for (std::size_t j = 0; j < b.segment_count(); ++j) {
            auto s = solve_segments(a.segment_start(i), a.segment_end(i), b.segment_start(j), b.segment_end(j));
            overlap |= s.overlap;
            points.insert(s.points.begin(), s.points.end());
        }
    for (const auto& p : points) {
        auto ia = a.find_vertex(p);
        auto ib = b.find_vertex(p);
        if (!ia && !ib) {
            out[p] = Kind::Crossing;
            continue;
        }
        if (!ia || !ib || a.is_endpoint(*ia) || b.is_endpoint(*ib)) {
            out[p] = Kind::Degenerate;
            continue;
        }
        RationalPoint a1 = a.vertex(*a.prev_vertex(*ia)) - p, a2 = a.vertex(*a.next_vertex(*ia)) - p;
        RationalPoint b1 = b.vertex(*b.prev_vertex(*ib)) - p, b2 = b.vertex(*b.next_vertex(*ib)) - p;
        auto parallel_same = [](const RationalPoint& u, const RationalPoint& v) {
            return u.x * v.y - u.y * v.x == 0 && u.x * v.x + u.y * v.y > 0;
        };
        if (parallel_same(a1, b1) || parallel_same(a1, b2) || parallel_same(a2, b1) || parallel_same(a2, b2)) {
            out[p] = Kind::Degenerate;
            continue;
        }
        bool s1 = in_open_wedge(a1, a2, b1), s2 = in_open_wedge(a1, a2, b2);
        out[p] = (s1 == s2) ? Kind::Tangency : Kind::Crossing;
    }
    if (overlap) out[RationalPoint(1000000007, 1000000007)] = Kind::Degenerate;
    return out;
}

inline std::map<RationalPoint, Kind> to_oracle_form(const std::vector<jarc::IncidenceRecord>& recs) {
    std::map<RationalPoint, Kind> out;
    for (const auto& r : recs) out[r.point] = r.kind == jarc::IncidenceKind::Tangency ? Kind::Tangency : Kind::Crossing;
    return out;
}

inline bool has_degenerate(const std::map<RationalPoint, Kind>& m) {
    for (const auto& [p, k] : m)
        if (k == Kind::Degenerate) return true;
    return false;
}

/// Does the closed segment [p, q] meet any curve of the list?
inline bool segment_hits_curves(const RationalPoint& p, const RationalPoint& q, const std::vector<PolylineCurve>& curves) {
    const Rational& x0 = p.x < q.x ? p.x : q.x;
    const Rational& x1 = p.x < q.x ? q.x : p.x;
    const Rational& y0 = p.y < q.y ? p.y : q.y;
    const Rational& y1 = p.y < q.y ? q.y : p.y;
    for (const auto& c : curves) {
        const auto& b = c.bbox();
        if (x1 < b.xmin || b.xmax < x0 || y1 < b.ymin || b.ymax < y0) continue;
        for (std::size_t s = 0; s < c.segment_count(); ++s) {
            const auto& a0 = c.segment_start(s);
            const auto& a1 = c.segment_end(s);
            if ((a0.x < x0 && a1.x < x0) || (a0.x > x1 && a1.x > x1) || (a0.y < y0 && a1.y < y0) ||
                (a0.y > y1 && a1.y > y1))
                continue;
            auto r = solve_segments(p, q, c.segment_start(s), c.segment_end(s));
            if (r.overlap || !r.points.empty()) return true;
        }
    }
    return false;
}

/// Rasterised connectivity of the complement of the curves: grid points
/// (x0 + i*h, y0 + j*h) for i, j in [0, steps], four-neighbour edges kept
/// when the connecting segment misses every curve. Grid points on a curve
/// get component -1. The border of the grid is assumed to lie in the
/// unbounded face.
struct FloodFill {
    std::vector<RationalPoint> points;
    std::vector<int> component;
    int components = 0;
    int outer = -1;
};

inline FloodFill flood_fill(const std::vector<PolylineCurve>& curves, const Rational& x0, const Rational& y0,
                            const Rational& h, int steps) {
    FloodFill out;
    const int side = steps + 1;
    out.points.reserve(static_cast<std::size_t>(side * side));
    for (int j = 0; j < side; ++j)
        for (int i = 0; i < side; ++i) out.points.emplace_back(Rational(x0 + h * i), Rational(y0 + h * j));
    std::vector<bool> blocked(out.points.size());
    for (std::size_t k = 0; k < out.points.size(); ++k)
        blocked[k] = segment_hits_curves(out.points[k], out.points[k], curves);
    std::vector<int> parent(out.points.size());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    auto idx = [side](int i, int j) { return j * side + i; };
    for (int j = 0; j < side; ++j)
        for (int i = 0; i < side; ++i) {
            int k = idx(i, j);
            if (blocked[k]) continue;
            if (i + 1 < side && !blocked[idx(i + 1, j)] &&
                !segment_hits_curves(out.points[k], out.points[idx(i + 1, j)], curves))
                parent[find(k)] = find(idx(i + 1, j));
            if (j + 1 < side && !blocked[idx(i, j + 1)] &&
                !segment_hits_curves(out.points[k], out.points[idx(i, j + 1)], curves))
                parent[find(k)] = find(idx(i, j + 1));
        }
    std::map<int, int> label;
    out.component.assign(out.points.size(), -1);
    for (std::size_t k = 0; k < out.points.size(); ++k) {
        if (blocked[k]) continue;
        int r = find(static_cast<int>(k));
        auto it = label.find(r);
        if (it == label.end()) it = label.emplace(r, static_cast<int>(label.size())).first;
        out.component[k] = it->second;
    }
    out.components = static_cast<int>(label.size());
    out.outer = out.component[0];
    return out;
}

/// Compares a point-location function against a flood fill: every grid
/// component must map to one face (consistent) and distinct components to
/// distinct faces (injective; can fail legitimately when a face pinches
/// below the grid step).
struct FloodAgreement {
    std::size_t probes = 0;
    std::size_t components = 0;
    std::size_t faces_hit = 0;
    bool consistent = true;
    bool injective = true;
    bool outer_is_unbounded = true;
};

template <class Locate>
FloodAgreement compare_with_flood(const FloodFill& ff, Locate locate, int unbounded_face) {
    FloodAgreement out;
    out.components = static_cast<std::size_t>(ff.components);
    std::map<int, int> face_of_component;
    for (std::size_t k = 0; k < ff.points.size(); ++k) {
        if (ff.component[k] < 0) continue;
        ++out.probes;
        int f = locate(ff.points[k]);
        auto [it, fresh] = face_of_component.emplace(ff.component[k], f);
        if (!fresh && it->second != f) out.consistent = false;
    }
    std::set<int> faces;
    for (const auto& [c, f] : face_of_component) faces.insert(f);
    out.faces_hit = faces.size();
    out.injective = faces.size() == face_of_component.size();
    if (ff.outer >= 0) out.outer_is_unbounded = face_of_component[ff.outer] == unbounded_face;
    return out;
}

}  // namespace oracle
