#pragma once

// Exact rational scalars and points. Every geometric predicate in the
// library reduces to the sign of a polynomial in these coordinates.

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

#include "jarc/errors.hpp"

namespace jarc {

using Rational = mpq_class;
using Integer = mpz_class;

inline Rational make_rational(long num, long den = 1) {
    if (den == 0) throw PreconditionError("zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

inline Rational make_rational(const Integer& num, const Integer& den) {
    if (den == 0) throw PreconditionError("zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

inline int sign(const Rational& q) { return sgn(q); }

/// Parses `<num>` or `<num>/<den>` with base-10 integers, optional leading
/// '-' on the numerator. Returns false on any other shape or a zero
/// denominator.
inline bool parse_rational(std::string_view text, Rational& out) {
    auto digits = [](std::string_view s) {
        if (s.empty()) return false;
        for (char c : s)
            if (c < '0' || c > '9') return false;
        return true;
    };
    std::string_view num = text, den;
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        num = text.substr(0, slash);
        den = text.substr(slash + 1);
        if (!digits(den)) return false;
    }
    std::string_view mag = num;
    if (!mag.empty() && mag.front() == '-') mag.remove_prefix(1);
    if (!digits(mag)) return false;
    Integer n(std::string(num), 10);
    Integer d = den.empty() ? Integer(1) : Integer(std::string(den), 10);
    if (d == 0) return false;
    out = Rational(n, d);
    out.canonicalize();
    return true;
}

/// Reduced form, denominator omitted when it is 1.
inline std::string format_rational(const Rational& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

struct RationalPoint {
    Rational x;
    Rational y;

    RationalPoint() = default;
    RationalPoint(Rational px, Rational py) : x(std::move(px)), y(std::move(py)) {
        x.canonicalize();
        y.canonicalize();
    }
    RationalPoint(long px, long py) : x(px), y(py) {}

    friend bool operator==(const RationalPoint& a, const RationalPoint& b) {
        return a.x == b.x && a.y == b.y;
    }
    friend std::strong_ordering operator<=>(const RationalPoint& a, const RationalPoint& b) {
        if (int c = cmp(a.x, b.x); c != 0) return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
        int c = cmp(a.y, b.y);
        if (c == 0) return std::strong_ordering::equal;
        return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
    }
};

inline std::string to_string(const RationalPoint& p) {
    return "(" + format_rational(p.x) + ", " + format_rational(p.y) + ")";
}

inline RationalPoint operator-(const RationalPoint& a, const RationalPoint& b) {
    return {Rational(a.x - b.x), Rational(a.y - b.y)};
}
inline RationalPoint operator+(const RationalPoint& a, const RationalPoint& b) {
    return {Rational(a.x + b.x), Rational(a.y + b.y)};
}
inline RationalPoint scale(const RationalPoint& a, const Rational& s) {
    return {Rational(a.x * s), Rational(a.y * s)};
}
inline RationalPoint midpoint(const RationalPoint& a, const RationalPoint& b) {
    return {Rational((a.x + b.x) / 2), Rational((a.y + b.y) / 2)};
}
inline RationalPoint lerp(const RationalPoint& a, const RationalPoint& b, const Rational& t) {
    return {Rational(a.x + (b.x - a.x) * t), Rational(a.y + (b.y - a.y) * t)};
}

inline Rational cross(const RationalPoint& u, const RationalPoint& v) { return u.x * v.y - u.y * v.x; }
inline Rational dot(const RationalPoint& u, const RationalPoint& v) { return u.x * v.x + u.y * v.y; }

enum class Orientation { Right = -1, Collinear = 0, Left = 1 };

inline const char* to_string(Orientation o) {
    switch (o) {
        case Orientation::Right: return "Right";
        case Orientation::Collinear: return "Collinear";
        case Orientation::Left: return "Left";
    }
    return "?";
}

/// Sign of (q - p) x (r - p).
inline Orientation exact_orientation(const RationalPoint& p, const RationalPoint& q, const RationalPoint& r) {
    Rational lhs = (q.x - p.x) * (r.y - p.y);
    Rational rhs = (q.y - p.y) * (r.x - p.x);
    int c = cmp(lhs, rhs);
    return c > 0 ? Orientation::Left : (c < 0 ? Orientation::Right : Orientation::Collinear);
}

inline int orient_sign(const RationalPoint& p, const RationalPoint& q, const RationalPoint& r) {
    return static_cast<int>(exact_orientation(p, q, r));
}

/// Quadrant of a nonzero direction vector; the positive x-axis opens
/// quadrant 0 and quadrants advance counter-clockwise.
inline int pseudo_quadrant(const RationalPoint& v) {
    int sx = sgn(v.x), sy = sgn(v.y);
    if (sx > 0 && sy >= 0) return 0;
    if (sx <= 0 && sy > 0) return 1;
    if (sx < 0 && sy <= 0) return 2;
    return 3;
}

/// Strict counter-clockwise angular order of nonzero directions starting at
/// the positive x-axis. Parallel directions with the same orientation
/// compare equal.
inline bool angle_less(const RationalPoint& u, const RationalPoint& v) {
    int qu = pseudo_quadrant(u), qv = pseudo_quadrant(v);
    if (qu != qv) return qu < qv;
    return sgn(cross(u, v)) > 0;
}

inline bool same_direction(const RationalPoint& u, const RationalPoint& v) {
    return sgn(cross(u, v)) == 0 && sgn(dot(u, v)) > 0;
}

}  // namespace jarc
