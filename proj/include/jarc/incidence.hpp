#pragma once

// Pairwise intersection points of polyline curves and their classification.
//
// Allowed incidences between two curves in general position:
//   * a transversal crossing of two segment interiors, and
//   * a common vertex that is interior to both curves, with four distinct
//     incident directions. The cyclic order of those directions decides
//     crossing (ABAB) against tangency (AABB).
// Every other contact is a degeneracy.

#include <algorithm>
#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "jarc/curve.hpp"
#include "jarc/errors.hpp"
#include "jarc/rational.hpp"
#include "jarc/segment.hpp"

namespace jarc {

enum class IncidenceKind {
    Crossing,
    Tangency,
    // Only produced by ScanMode::AllowJunctions: an endpoint of an open arc
    // lying on the other curve (sub-arcs cut at a boundary curve).
    Junction
};
enum class IncidenceLocus { SegmentInterior, SharedVertex };

inline const char* to_string(IncidenceKind k) {
    switch (k) {
        case IncidenceKind::Crossing: return "Crossing";
        case IncidenceKind::Tangency: return "Tangency";
        case IncidenceKind::Junction: return "Junction";
    }
    return "?";
}
inline const char* to_string(IncidenceLocus l) {
    return l == IncidenceLocus::SegmentInterior ? "SegmentInterior" : "SharedVertex";
}

/// Location on a polyline: segment index plus parameter in [0, 1). Vertex v
/// is (v, 0); the last vertex of an open arc is (vertex_count - 1, 0).
struct CurvePosition {
    std::size_t segment = 0;
    Rational t;

    friend bool operator==(const CurvePosition& a, const CurvePosition& b) {
        return a.segment == b.segment && a.t == b.t;
    }
    friend bool operator<(const CurvePosition& a, const CurvePosition& b) {
        if (a.segment != b.segment) return a.segment < b.segment;
        return a.t < b.t;
    }
    bool at_vertex() const { return sgn(t) == 0; }
};

struct IncidenceRecord {
    CurveId curve_a = 0;
    CurveId curve_b = 0;
    RationalPoint point;
    IncidenceKind kind = IncidenceKind::Crossing;
    IncidenceLocus locus = IncidenceLocus::SegmentInterior;
    CurvePosition pos_a;
    CurvePosition pos_b;
};

struct Degeneracy {
    DegeneracyKind kind;
    RationalPoint point;
    std::string message;
};

enum class ScanMode { Strict, AllowJunctions };

struct PairScan {
    std::vector<IncidenceRecord> records;
    std::vector<Degeneracy> problems;
};

enum class ContactClass { Crossing, Tangency };

inline const char* to_string(ContactClass c) { return c == ContactClass::Crossing ? "Crossing" : "Tangency"; }

/// Crossing vs tangency at a vertex interior to both curves, decided by the
/// cyclic order of the four outgoing directions.
inline ContactClass classify_shared_vertex(const PolylineCurve& a, const PolylineCurve& b, const RationalPoint& v) {
    auto ia = a.find_vertex(v);
    auto ib = b.find_vertex(v);
    if (!ia || !ib) throw PreconditionError(to_string(v) + " is not a vertex of both curves");
    if (a.is_endpoint(*ia) || b.is_endpoint(*ib))
        throw EndpointError("contact at an arc endpoint " + to_string(v));

    struct Dir {
        RationalPoint d;
        int owner;
    };
    std::array<Dir, 4> dirs{{{a.vertex(*a.prev_vertex(*ia)) - v, 0},
                             {a.vertex(*a.next_vertex(*ia)) - v, 0},
                             {b.vertex(*b.prev_vertex(*ib)) - v, 1},
                             {b.vertex(*b.next_vertex(*ib)) - v, 1}}};
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            if (same_direction(dirs[i].d, dirs[j].d))
                throw DegeneracyError(DegeneracyKind::CoincidentDirections,
                                      "coincident incident directions at " + to_string(v));
    std::sort(dirs.begin(), dirs.end(), [](const Dir& x, const Dir& y) { return angle_less(x.d, y.d); });
    const bool alternating = dirs[0].owner != dirs[1].owner && dirs[1].owner != dirs[2].owner &&
                             dirs[2].owner != dirs[3].owner;
    return alternating ? ContactClass::Crossing : ContactClass::Tangency;
}

namespace detail {

inline std::vector<SegmentRef> segment_refs(const PolylineCurve& c, std::size_t owner) {
    std::vector<SegmentRef> out;
    out.reserve(c.segment_count());
    for (std::size_t s = 0; s < c.segment_count(); ++s)
        out.push_back({owner, s, &c.segment_start(s), &c.segment_end(s)});
    return out;
}

inline CurvePosition vertex_position(std::size_t v) { return {v, Rational(0)}; }

inline CurvePosition position_on_segment(const PolylineCurve& c, std::size_t s, const RationalPoint& p) {
    if (p == c.segment_start(s)) return vertex_position(s);
    if (p == c.segment_end(s)) return vertex_position(c.closed() ? (s + 1) % c.vertex_count() : s + 1);
    return {s, segment_parameter(c.segment_start(s), c.segment_end(s), p)};
}

inline std::string pair_label(const PolylineCurve& a, const PolylineCurve& b) {
    return "curves " + std::to_string(a.id()) + " and " + std::to_string(b.id());
}

}  // namespace detail

/// All intersection points of a and b, classified, plus every forbidden
/// contact found. Records are sorted by point.
inline PairScan scan_pair(const PolylineCurve& a, const PolylineCurve& b, ScanMode mode = ScanMode::Strict) {
    PairScan out;
    if (!a.bbox().overlaps(b.bbox())) return out;

    // Common vertices.
    std::map<RationalPoint, std::size_t> b_vertices;
    for (std::size_t i = 0; i < b.vertex_count(); ++i) b_vertices.emplace(b.vertex(i), i);
    std::map<RationalPoint, std::pair<std::size_t, std::size_t>> shared;
    for (std::size_t i = 0; i < a.vertex_count(); ++i) {
        if (!b.bbox().contains(a.vertex(i))) continue;
        if (auto it = b_vertices.find(a.vertex(i)); it != b_vertices.end()) shared.emplace(a.vertex(i), std::make_pair(i, it->second));
    }

    std::map<RationalPoint, IncidenceRecord> found;
    std::map<RationalPoint, Degeneracy> problems;
    auto problem = [&](DegeneracyKind kind, const RationalPoint& p, const std::string& what) {
        problems.emplace(p, Degeneracy{kind, p, detail::pair_label(a, b) + ": " + what + " at " + to_string(p)});
    };

    auto segs = detail::segment_refs(a, 0);
    auto bsegs = detail::segment_refs(b, 1);
    segs.insert(segs.end(), bsegs.begin(), bsegs.end());
    for_each_candidate_pair(std::move(segs), false, [&](const SegmentRef& s, const SegmentRef& r) {
        const SegmentRef& sa = s.owner == 0 ? s : r;
        const SegmentRef& sb = s.owner == 0 ? r : s;
        SegmentMeeting meet = meet_segments(*sa.p0, *sa.p1, *sb.p0, *sb.p1);
        switch (meet.relation) {
            case SegmentRelation::Disjoint: return;
            case SegmentRelation::Overlap: {
                problem(DegeneracyKind::Overlap, *sa.p0, "overlapping segments " + std::to_string(sa.index) + "/" +
                                                             std::to_string(sb.index));
                return;
            }
            case SegmentRelation::Proper: {
                IncidenceRecord rec;
                rec.curve_a = a.id();
                rec.curve_b = b.id();
                rec.kind = IncidenceKind::Crossing;
                rec.locus = IncidenceLocus::SegmentInterior;
                rec.pos_a = {sa.index, segment_parameter(*sa.p0, *sa.p1, meet.point)};
                rec.pos_b = {sb.index, segment_parameter(*sb.p0, *sb.p1, meet.point)};
                rec.point = meet.point;
                found.emplace(rec.point, std::move(rec));
                return;
            }
            case SegmentRelation::Touch: break;
        }
        const RationalPoint& p = meet.point;
        if (shared.count(p)) return;
        const bool a_vertex = (p == *sa.p0 || p == *sa.p1);
        // p is a vertex of exactly one curve and lies inside a segment of the other.
        const PolylineCurve& vc = a_vertex ? a : b;
        const SegmentRef& vs = a_vertex ? sa : sb;
        const SegmentRef& os = a_vertex ? sb : sa;
        const PolylineCurve& oc = a_vertex ? b : a;
        const std::size_t v = (p == *vs.p0) ? vs.index : (vc.closed() ? (vs.index + 1) % vc.vertex_count() : vs.index + 1);
        if (!vc.is_endpoint(v)) {
            problem(DegeneracyKind::VertexOnInterior, p, "vertex of curve " + std::to_string(vc.id()) +
                                                             " on a segment interior of curve " + std::to_string(oc.id()));
            return;
        }
        if (mode == ScanMode::Strict) {
            problem(DegeneracyKind::EndpointContact, p, "curve " + std::to_string(oc.id()) +
                                                            " passes through an endpoint of arc " + std::to_string(vc.id()));
            return;
        }
        IncidenceRecord rec;
        rec.curve_a = a.id();
        rec.curve_b = b.id();
        rec.point = p;
        rec.kind = IncidenceKind::Junction;
        rec.locus = IncidenceLocus::SegmentInterior;
        CurvePosition vpos = detail::vertex_position(v);
        CurvePosition opos = {os.index, segment_parameter(*os.p0, *os.p1, p)};
        rec.pos_a = a_vertex ? vpos : opos;
        rec.pos_b = a_vertex ? opos : vpos;
        found.emplace(p, std::move(rec));
    });

    for (const auto& [p, idx] : shared) {
        const auto [ia, ib] = idx;
        IncidenceRecord rec;
        rec.curve_a = a.id();
        rec.curve_b = b.id();
        rec.point = p;
        rec.locus = IncidenceLocus::SharedVertex;
        rec.pos_a = detail::vertex_position(ia);
        rec.pos_b = detail::vertex_position(ib);
        if (a.is_endpoint(ia) || b.is_endpoint(ib)) {
            if (mode == ScanMode::Strict) {
                problem(DegeneracyKind::EndpointContact, p, "contact at an arc endpoint");
                continue;
            }
            rec.kind = IncidenceKind::Junction;
            found.emplace(p, std::move(rec));
            continue;
        }
        try {
            rec.kind = classify_shared_vertex(a, b, p) == ContactClass::Crossing ? IncidenceKind::Crossing
                                                                                  : IncidenceKind::Tangency;
            found.emplace(p, std::move(rec));
        } catch (const DegeneracyError& e) {
            problem(e.kind, p, e.what());
        }
    }

    out.records.reserve(found.size());
    for (auto& [p, rec] : found) out.records.push_back(std::move(rec));
    for (auto& [p, d] : problems) out.problems.push_back(std::move(d));
    return out;
}

/// Classified intersection points of a and b sorted by point; throws
/// DegeneracyError (or EndpointError) on the first forbidden contact.
inline std::vector<IncidenceRecord> curve_pair_incidences(const PolylineCurve& a, const PolylineCurve& b) {
    if (a.id() == b.id()) throw PreconditionError("curve_pair_incidences needs two distinct curves");
    PairScan scan = scan_pair(a, b, ScanMode::Strict);
    if (!scan.problems.empty()) {
        const Degeneracy& d = scan.problems.front();
        if (d.kind == DegeneracyKind::EndpointContact) throw EndpointError(d.message);
        throw DegeneracyError(d.kind, d.message);
    }
    return std::move(scan.records);
}

inline bool is_touching_pair(const PolylineCurve& a, const PolylineCurve& b) {
    auto recs = curve_pair_incidences(a, b);
    return recs.size() == 1 && recs.front().kind == IncidenceKind::Tangency;
}

inline bool PolylineCurve::is_simple() const {
    bool ok = true;
    const std::size_t k = vertex_count();
    const std::size_t nseg = segment_count();
    auto segs = detail::segment_refs(*this, 0);
    for_each_candidate_pair(std::move(segs), true, [&](const SegmentRef& s, const SegmentRef& r) {
        if (!ok) return;
        std::size_t i = std::min(s.index, r.index), j = std::max(s.index, r.index);
        SegmentMeeting meet = meet_segments(*s.p0, *s.p1, *r.p0, *r.p1);
        if (meet.relation == SegmentRelation::Disjoint) return;
        const bool adjacent = (j == i + 1) || (closed_ && i == 0 && j == nseg - 1);
        if (!adjacent || meet.relation != SegmentRelation::Touch) {
            ok = false;
            return;
        }
        // Adjacent segments may only share their common vertex.
        const RationalPoint& common = (j == i + 1) ? vertices_[j % k] : vertices_[0];
        if (!(meet.point == common)) ok = false;
    });
    // A closed triangle has every segment pair adjacent; a 3-vertex closed
    // polyline is simple iff it is non-degenerate, which the constructor
    // already guarantees through the reversal check.
    return ok;
}

/// Intersections of one pair of family members (by index).
struct PairIncidences {
    std::size_t i = 0;
    std::size_t j = 0;
    std::vector<IncidenceRecord> records;
};

/// Unordered index pairs whose bounding boxes intersect, sorted.
inline std::vector<std::pair<std::size_t, std::size_t>> candidate_curve_pairs(const std::vector<PolylineCurve>& curves) {
    std::vector<std::size_t> order(curves.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
        if (int c = cmp(curves[x].bbox().xmin, curves[y].bbox().xmin); c != 0) return c < 0;
        return x < y;
    });
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t p = 0; p < order.size(); ++p) {
        const auto& bp = curves[order[p]].bbox();
        for (std::size_t q = p + 1; q < order.size(); ++q) {
            const auto& bq = curves[order[q]].bbox();
            if (bp.xmax < bq.xmin) break;
            if (bp.overlaps(bq)) out.emplace_back(std::min(order[p], order[q]), std::max(order[p], order[q]));
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// Incidences of every intersecting pair of the family (i < j), sorted by
/// (i, j). Throws on the first degeneracy.
inline std::vector<PairIncidences> family_incidences(const CurveFamily& family, ScanMode mode = ScanMode::Strict) {
    std::vector<PairIncidences> out;
    for (auto [i, j] : candidate_curve_pairs(family.curves())) {
        PairScan scan = scan_pair(family[i], family[j], mode);
        if (!scan.problems.empty()) {
            const Degeneracy& d = scan.problems.front();
            if (d.kind == DegeneracyKind::EndpointContact) throw EndpointError(d.message);
            throw DegeneracyError(d.kind, d.message);
        }
        if (!scan.records.empty()) out.push_back({i, j, std::move(scan.records)});
    }
    return out;
}

}  // namespace jarc
