#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "jarc/rational.hpp"

namespace jarc {

enum class SegmentRelation {
    Disjoint,
    Proper,   // interiors cross transversally at a single point
    Touch,    // exactly one common point, which is an endpoint of at least one segment
    Overlap   // collinear with a common sub-segment of positive length
};

struct SegmentMeeting {
    SegmentRelation relation = SegmentRelation::Disjoint;
    RationalPoint point;  // valid for Proper and Touch
};

namespace detail {

// p is known to be collinear with [s0, s1]; is it inside the closed segment?
inline bool on_collinear_segment(const RationalPoint& s0, const RationalPoint& s1, const RationalPoint& p) {
    auto between = [](const Rational& a, const Rational& b, const Rational& v) {
        return (a <= v && v <= b) || (b <= v && v <= a);
    };
    return between(s0.x, s1.x, p.x) && between(s0.y, s1.y, p.y);
}

}  // namespace detail

/// Exact relation of closed segments [a0,a1] and [b0,b1]; both have positive
/// length.
inline SegmentMeeting meet_segments(const RationalPoint& a0, const RationalPoint& a1, const RationalPoint& b0,
                                    const RationalPoint& b1) {
    SegmentMeeting out;
    const int d1 = orient_sign(a0, a1, b0);
    const int d2 = orient_sign(a0, a1, b1);
    if (d1 != 0 && d1 == d2) return out;
    const int d3 = orient_sign(b0, b1, a0);
    const int d4 = orient_sign(b0, b1, a1);
    if (d3 != 0 && d3 == d4) return out;

    if (d1 == 0 && d2 == 0) {
        // Collinear: compare the projections on the dominant axis.
        const bool use_x = a0.x != a1.x;
        auto key = [use_x](const RationalPoint& p) -> const Rational& { return use_x ? p.x : p.y; };
        const RationalPoint* alo = &a0;
        const RationalPoint* ahi = &a1;
        if (key(*ahi) < key(*alo)) std::swap(alo, ahi);
        const RationalPoint* blo = &b0;
        const RationalPoint* bhi = &b1;
        if (key(*bhi) < key(*blo)) std::swap(blo, bhi);
        const Rational& lo = key(*alo) < key(*blo) ? key(*blo) : key(*alo);
        const Rational& hi = key(*ahi) < key(*bhi) ? key(*ahi) : key(*bhi);
        const int c = cmp(lo, hi);
        if (c > 0) return out;
        if (c < 0) {
            out.relation = SegmentRelation::Overlap;
            return out;
        }
        out.relation = SegmentRelation::Touch;
        out.point = (key(*ahi) == lo) ? *ahi : *alo;
        return out;
    }

    if (d1 * d2 < 0 && d3 * d4 < 0) {
        out.relation = SegmentRelation::Proper;
        const RationalPoint r = a1 - a0;
        const RationalPoint s = b1 - b0;
        const Rational t = cross(b0 - a0, s) / cross(r, s);
        out.point = lerp(a0, a1, t);
        return out;
    }

    // Exactly one common point; it is an endpoint of one of the segments.
    out.relation = SegmentRelation::Touch;
    if (d1 == 0 && detail::on_collinear_segment(a0, a1, b0)) {
        out.point = b0;
    } else if (d2 == 0 && detail::on_collinear_segment(a0, a1, b1)) {
        out.point = b1;
    } else if (d3 == 0 && detail::on_collinear_segment(b0, b1, a0)) {
        out.point = a0;
    } else if (d4 == 0 && detail::on_collinear_segment(b0, b1, a1)) {
        out.point = a1;
    } else {
        out.relation = SegmentRelation::Disjoint;
    }
    return out;
}

/// Parameter t with p = s0 + t (s1 - s0), for p on the segment's line.
inline Rational segment_parameter(const RationalPoint& s0, const RationalPoint& s1, const RationalPoint& p) {
    if (s0.x != s1.x) return (p.x - s0.x) / (s1.x - s0.x);
    return (p.y - s0.y) / (s1.y - s0.y);
}

struct SegmentRef {
    std::size_t owner;  // 0 or 1: which list the segment came from
    std::size_t index;
    const RationalPoint* p0;
    const RationalPoint* p1;

    const Rational& xmin() const { return p0->x < p1->x ? p0->x : p1->x; }
    const Rational& xmax() const { return p0->x < p1->x ? p1->x : p0->x; }
    const Rational& ymin() const { return p0->y < p1->y ? p0->y : p1->y; }
    const Rational& ymax() const { return p0->y < p1->y ? p1->y : p0->y; }
};

/// Sweep-and-prune over x-extents. Calls visit(s, t) for every pair of
/// segments from different owners (or, with same_list, every unordered pair
/// of the single list) whose bounding boxes intersect.
template <class Visit>
void for_each_candidate_pair(std::vector<SegmentRef> segs, bool same_list, Visit&& visit) {
    std::sort(segs.begin(), segs.end(), [](const SegmentRef& a, const SegmentRef& b) {
        if (int c = cmp(a.xmin(), b.xmin()); c != 0) return c < 0;
        if (a.owner != b.owner) return a.owner < b.owner;
        return a.index < b.index;
    });
    std::vector<const SegmentRef*> active;
    for (const auto& s : segs) {
        std::size_t keep = 0;
        for (std::size_t k = 0; k < active.size(); ++k) {
            const SegmentRef* o = active[k];
            if (o->xmax() < s.xmin()) continue;
            active[keep++] = o;
            if (!same_list && o->owner == s.owner) continue;
            if (o->ymax() < s.ymin() || s.ymax() < o->ymin()) continue;
            visit(*o, s);
        }
        active.resize(keep);
        active.push_back(&s);
    }
}

}  // namespace jarc
