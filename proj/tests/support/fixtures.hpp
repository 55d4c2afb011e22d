#pragma once

#include <ostream>
#include <random>
#include <vector>

#include "jarc/curve.hpp"

namespace fixtures {

using jarc::CurveFamily;
using jarc::PolylineCurve;
using jarc::Rational;
using jarc::RationalPoint;

inline RationalPoint P(long x, long y) { return RationalPoint(x, y); }
inline RationalPoint Q(long xn, long xd, long yn, long yd) {
    return RationalPoint(jarc::make_rational(xn, xd), jarc::make_rational(yn, yd));
}

inline PolylineCurve square(int id, long x0, long y0, long side) {
    return PolylineCurve(id, {P(x0, y0), P(x0 + side, y0), P(x0 + side, y0 + side), P(x0, y0 + side)}, true);
}

inline PolylineCurve diamond(int id, long cx, long cy, long r) {
    return PolylineCurve(id, {P(cx + r, cy), P(cx, cy + r), P(cx - r, cy), P(cx, cy - r)}, true);
}

inline PolylineCurve open_arc(int id, std::vector<RationalPoint> pts) { return PolylineCurve(id, std::move(pts), false); }

/// Two diamonds sharing only the vertex (0,0), each on its own side.
inline CurveFamily tangent_diamonds(int m = 1) { return CurveFamily({diamond(1, 1, 0, 1), diamond(2, -1, 0, 1)}, m); }

/// Square (0,0)-(2,2) and its translate by (1,1): two crossings.
inline CurveFamily crossing_squares(int m = 2) { return CurveFamily({square(1, 0, 0, 2), square(2, 1, 1, 2)}, m); }

/// c1-c2-c3, consecutive diamonds tangent at (1,0) and (3,0).
inline CurveFamily tangent_chain3(int m = 2) {
    return CurveFamily({diamond(1, 0, 0, 1), diamond(2, 2, 0, 1), diamond(3, 4, 0, 1)}, m);
}

/// Star-shaped polygon around an integer centre; radii drawn per direction.
/// Open variants drop the last vertex.
inline PolylineCurve random_star(int id, std::mt19937_64& rng, bool closed, int spread = 6) {
    static const std::vector<RationalPoint> dirs = {P(4, 0), P(3, 3), P(0, 4), P(-3, 3), P(-4, 0), P(-3, -3), P(0, -4), P(3, -3)};
    std::uniform_int_distribution<int> c(-spread, spread), r(1, 4);
    RationalPoint center(c(rng), c(rng));
    std::vector<RationalPoint> pts;
    for (const auto& d : dirs) pts.push_back(center + jarc::scale(d, jarc::make_rational(r(rng), 2)));
    if (!closed) pts.pop_back();
    return PolylineCurve(id, pts, closed);
}

}  // namespace fixtures

namespace jarc {
inline void PrintTo(const RationalPoint& p, std::ostream* os) { *os << to_string(p); }
}  // namespace jarc
