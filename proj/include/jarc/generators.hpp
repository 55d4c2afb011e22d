#pragma once

// Curve-family generators. Geometry is exact: circles are inscribed
// polygons whose vertices sit on rational points of the circle, so two
// externally tangent circles whose common point is a vertex of both meet
// only there, with the tangent (AABB) local order.

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "jarc/curve.hpp"
#include "jarc/errors.hpp"
#include "jarc/incidence.hpp"
#include "jarc/rational.hpp"
#include "jarc/validate.hpp"

namespace jarc {

enum class GeneratorKind { UnitCirclesGrid, TangentChain, RandomCircles, PseudoParabolas, PerturbedPencil };

inline const char* to_string(GeneratorKind k) {
    switch (k) {
        case GeneratorKind::UnitCirclesGrid: return "unit-circles-grid";
        case GeneratorKind::TangentChain: return "tangent-chain";
        case GeneratorKind::RandomCircles: return "random-circles";
        case GeneratorKind::PseudoParabolas: return "pseudo-parabolas";
        case GeneratorKind::PerturbedPencil: return "perturbed-pencil";
    }
    return "?";
}

/// Accepts "unit-circles-grid" as well as "UnitCirclesGrid".
inline GeneratorKind parse_generator_kind(const std::string& s) {
    auto squash = [](std::string_view v) {
        std::string out;
        for (char c : v)
            if (c != '-' && c != '_') out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        return out;
    };
    for (auto k : {GeneratorKind::UnitCirclesGrid, GeneratorKind::TangentChain, GeneratorKind::RandomCircles,
                   GeneratorKind::PseudoParabolas, GeneratorKind::PerturbedPencil})
        if (squash(s) == squash(to_string(k))) return k;
    throw PreconditionError("unknown generator kind '" + s + "'");
}

struct GeneratorSpec {
    GeneratorKind kind = GeneratorKind::UnitCirclesGrid;
    int n = 16;
    int m = 2;
    int resolution = 16;  // segments per curve
    std::uint64_t seed = 42;
};

/// mt19937_64 with draws that do not depend on the standard library's
/// distribution implementations, so families are identical across
/// toolchains.
class PortableRng {
public:
    explicit PortableRng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next() { return eng_(); }

    /// Uniform in [0, n).
    std::uint64_t below(std::uint64_t n) {
        if (n == 0) throw PreconditionError("empty range");
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t x;
        do x = eng_();
        while (x >= limit);
        return x % n;
    }
    long range(long lo, long hi) { return lo + static_cast<long>(below(static_cast<std::uint64_t>(hi - lo + 1))); }
    bool coin() { return eng_() & 1u; }
    /// Uniform on the grid {lo + k/den} within [lo, hi].
    Rational rational(const Rational& lo, const Rational& hi, long den) {
        Rational steps = (hi - lo) * den;
        mpz_class top = steps.get_num() / steps.get_den();
        long k = static_cast<long>(below(top.get_ui() + 1));
        return Rational(lo + make_rational(k, den));
    }

private:
    std::mt19937_64 eng_;
};

/// Rational point on the unit circle for parameter t: angle 2 atan(t).
inline RationalPoint unit_vector(const Rational& t) {
    Rational d = 1 + t * t;
    return {Rational((1 - t * t) / d), Rational(2 * t / d)};
}

/// `count` rational unit vectors, counter-clockwise from (1, 0), containing
/// the four axis directions. count is rounded up to a multiple of 4.
inline std::vector<RationalPoint> circle_directions(int count) {
    const int q = std::max(2, (count + 3) / 4);
    std::vector<RationalPoint> quarter;
    for (int k = 0; k < q; ++k) quarter.push_back(unit_vector(make_rational(k, q)));
    std::vector<RationalPoint> out;
    for (int r = 0; r < 4; ++r)
        for (auto v : quarter) {
            for (int s = 0; s < r; ++s) v = RationalPoint(Rational(-v.y), v.x);
            out.push_back(v);
        }
    return out;
}

inline RationalPoint rotate(const RationalPoint& v, const RationalPoint& unit) {
    return {Rational(v.x * unit.x - v.y * unit.y), Rational(v.x * unit.y + v.y * unit.x)};
}

inline PolylineCurve circle_polygon(CurveId id, const RationalPoint& center, const Rational& radius,
                                    const std::vector<RationalPoint>& directions) {
    std::vector<RationalPoint> pts;
    pts.reserve(directions.size());
    for (const auto& d : directions) pts.push_back(center + scale(d, radius));
    return PolylineCurve(id, std::move(pts), true);
}

namespace detail {

inline void require_valid(const CurveFamily& fam, const char* what) {
    auto rep = validate_general_position(fam);
    if (!rep.ok)
        throw GenerationError(std::string(what) + ": " + rep.violations.front().message);
}

inline CurveFamily unit_circles(const std::vector<RationalPoint>& centers, const GeneratorSpec& spec) {
    auto dirs = circle_directions(spec.resolution);
    std::vector<PolylineCurve> cs;
    cs.reserve(centers.size());
    for (std::size_t i = 0; i < centers.size(); ++i)
        cs.push_back(circle_polygon(static_cast<CurveId>(i + 1), centers[i], Rational(1), dirs));
    return CurveFamily(std::move(cs), spec.m);
}

inline CurveFamily unit_circles_grid(const GeneratorSpec& spec) {
    long w = 1;
    while (w * w < spec.n) ++w;
    std::vector<RationalPoint> centers;
    for (long i = 0; i < spec.n; ++i) centers.emplace_back(2 * (i % w), 2 * (i / w));
    return unit_circles(centers, spec);
}

inline CurveFamily tangent_chain(const GeneratorSpec& spec) {
    std::vector<RationalPoint> centers;
    for (long i = 0; i < spec.n; ++i) centers.emplace_back(2 * i, 0);
    return unit_circles(centers, spec);
}

// Random occupancy of the 2Z x 2Z lattice by unit circles (tangent when
// adjacent), plus free "crosser" circles that meet lattice circles and each
// other transversally. A crosser is kept only if every pair it forms stays
// within m points and it creates no shared intersection point.
inline CurveFamily random_circles(const GeneratorSpec& spec) {
    PortableRng rng(spec.seed);
    const int n_cross = spec.m >= 2 ? spec.n / 5 : 0;
    const int n_lattice = spec.n - n_cross;
    long side = 1;
    while (side * side * 9 < static_cast<long>(n_lattice) * 10) ++side;
    std::vector<long> cells(static_cast<std::size_t>(side * side));
    for (long c = 0; c < side * side; ++c) cells[c] = c;
    for (long k = 0; k < n_lattice; ++k) std::swap(cells[k], cells[k + static_cast<long>(rng.below(cells.size() - k))]);
    std::sort(cells.begin(), cells.begin() + n_lattice);

    auto dirs = circle_directions(spec.resolution);
    std::vector<PolylineCurve> cs;
    for (long k = 0; k < n_lattice; ++k)
        cs.push_back(circle_polygon(static_cast<CurveId>(k + 1), RationalPoint(2 * (cells[k] % side), 2 * (cells[k] / side)),
                                    Rational(1), dirs));

    std::set<RationalPoint> points;
    for (std::size_t a = 0; a < cs.size(); ++a)
        for (std::size_t b = a + 1; b < cs.size(); ++b)
            if (cs[a].bbox().overlaps(cs[b].bbox()))
                for (const auto& r : scan_pair(cs[a], cs[b]).records) points.insert(r.point);

    const Rational span(2 * (side - 1));
    int placed = 0, attempts = 0;
    while (placed < n_cross) {
        if (++attempts > 200 * (n_cross + 1)) throw GenerationError("random-circles: could not place crossing circles");
        RationalPoint center(rng.rational(Rational(0), span, 97), rng.rational(Rational(0), span, 89));
        Rational radius = rng.rational(make_rational(1, 2), make_rational(3, 2), 16);
        RationalPoint turn = unit_vector(rng.rational(Rational(0), Rational(1), 101));
        std::vector<RationalPoint> rd;
        for (const auto& d : dirs) rd.push_back(rotate(d, turn));
        PolylineCurve cand = circle_polygon(static_cast<CurveId>(cs.size() + 1), center, radius, rd);
        std::vector<RationalPoint> fresh;
        bool ok = true;
        for (const auto& other : cs) {
            if (!other.bbox().overlaps(cand.bbox())) continue;
            PairScan scan = scan_pair(cand, other);
            if (!scan.problems.empty() || scan.records.size() > static_cast<std::size_t>(spec.m)) {
                ok = false;
                break;
            }
            for (const auto& r : scan.records) fresh.push_back(r.point);
        }
        if (!ok) continue;
        std::set<RationalPoint> uniq(fresh.begin(), fresh.end());
        if (uniq.size() != fresh.size()) continue;
        for (const auto& p : fresh)
            if (points.count(p)) ok = false;
        if (!ok) continue;
        points.insert(fresh.begin(), fresh.end());
        cs.push_back(std::move(cand));
        ++placed;
    }
    return CurveFamily(std::move(cs), spec.m);
}

// Graphs of f(x) = (x - a)^2 + b + sum c_k |x - x_k| sampled on shared
// integer breakpoints. Differences of two such polylines are piecewise
// linear on the shared grid, so zeros can be counted exactly. New curves
// are either fresh translates or kinked copies of an existing curve, which
// touch it at the kink; candidates that meet any curve twice are dropped.
inline CurveFamily pseudo_parabolas(const GeneratorSpec& spec) {
    PortableRng rng(spec.seed);
    const long half = std::max(4, spec.resolution / 2);
    std::vector<std::vector<Rational>> ys;
    auto sample = [&](const Rational& a, const Rational& b) {
        std::vector<Rational> y;
        for (long x = -half; x <= half; ++x) y.push_back(Rational((x - a) * (x - a) + b));
        return y;
    };
    // Intersection points of two sampled curves from the sign pattern of
    // their difference; false for anything general position forbids.
    auto meets = [&](const std::vector<Rational>& f, const std::vector<Rational>& g, std::vector<RationalPoint>& at) {
        const std::size_t k = f.size();
        std::vector<Rational> d(k);
        std::vector<int> s(k);
        for (std::size_t i = 0; i < k; ++i) {
            d[i] = f[i] - g[i];
            s[i] = sgn(d[i]);
        }
        if (s.front() == 0 || s.back() == 0) return false;
        for (std::size_t i = 0; i < k; ++i) {
            const Rational xi(static_cast<long>(i) - half);
            if (s[i] == 0) {
                if (s[i - 1] == 0 || s[i + 1] == 0) return false;
                at.emplace_back(xi, f[i]);
            } else if (i + 1 < k && s[i] * s[i + 1] < 0) {
                Rational u = d[i] / (d[i] - d[i + 1]);
                at.emplace_back(Rational(xi + u), Rational(f[i] + (f[i + 1] - f[i]) * u));
            }
        }
        return true;
    };
    std::set<RationalPoint> taken;
    int attempts = 0;
    while (static_cast<int>(ys.size()) < spec.n) {
        if (++attempts > 400 * spec.n) throw GenerationError("pseudo-parabolas: could not place curves");
        std::vector<Rational> cand;
        if (ys.empty() || rng.below(3) == 0) {
            cand = sample(rng.rational(Rational(-half), Rational(half), 16), rng.rational(Rational(-8), Rational(8), 32));
        } else {
            cand = ys[rng.below(ys.size())];
            long x0 = rng.range(-half + 1, half - 1);
            Rational c = rng.rational(make_rational(1, 64), Rational(1), 64);
            for (long x = -half; x <= half; ++x) cand[x + half] += c * (x > x0 ? x - x0 : x0 - x);
        }
        bool ok = true;
        std::vector<RationalPoint> fresh;
        for (const auto& g : ys) {
            std::vector<RationalPoint> at;
            if (!meets(cand, g, at) || at.size() > 1) {
                ok = false;
                break;
            }
            fresh.insert(fresh.end(), at.begin(), at.end());
        }
        if (!ok) continue;
        std::set<RationalPoint> uniq(fresh.begin(), fresh.end());
        if (uniq.size() != fresh.size()) continue;
        for (const auto& p : fresh)
            if (taken.count(p)) ok = false;
        if (!ok) continue;
        taken.insert(fresh.begin(), fresh.end());
        ys.push_back(std::move(cand));
    }
    std::vector<PolylineCurve> cs;
    for (std::size_t i = 0; i < ys.size(); ++i) {
        std::vector<RationalPoint> pts;
        for (long x = -half; x <= half; ++x) pts.emplace_back(Rational(x), ys[i][x + half]);
        cs.emplace_back(static_cast<CurveId>(i + 1), std::move(pts), false);
    }
    return CurveFamily(std::move(cs), spec.m);
}

// Near-concurrent segments with distinct slopes: every pair crosses once
// near the origin. Centres are jittered by 1/2^k, k growing on retry.
inline CurveFamily perturbed_pencil(const GeneratorSpec& spec) {
    PortableRng rng(spec.seed);
    const int pieces = std::max(8, spec.resolution);
    for (int k = 10; k < 40; k += 2) {
        std::vector<PolylineCurve> cs;
        const Rational scale_k = make_rational(1, 4L * spec.n) / Rational(mpz_class(1) << k) * 1024;
        for (int i = 0; i < spec.n; ++i) {
            Rational t = make_rational(2 * i + 1, spec.n) - 1;
            RationalPoint dir(Rational(1 - t * t), Rational(2 * t));
            RationalPoint q(Rational(scale_k * rng.range(-1000, 1000) / 1000), Rational(scale_k * rng.range(-1000, 1000) / 1000));
            std::vector<RationalPoint> pts;
            for (int s = 0; s <= pieces; ++s) pts.push_back(q + scale(dir, Rational(make_rational(6 * s, pieces) - 3)));
            cs.emplace_back(static_cast<CurveId>(i + 1), std::move(pts), false);
        }
        CurveFamily fam(std::move(cs), spec.m);
        if (validate_general_position(fam).ok) return fam;
    }
    throw GenerationError("perturbed-pencil: general position not reached");
}

}  // namespace detail

inline CurveFamily generate(const GeneratorSpec& spec) {
    if (spec.n < 1) throw PreconditionError("generator needs n >= 1");
    if (spec.m < 1) throw PreconditionError("generator needs m >= 1");
    if (spec.resolution < 8) throw PreconditionError("generator resolution must be >= 8");
    CurveFamily fam;
    switch (spec.kind) {
        case GeneratorKind::UnitCirclesGrid: fam = detail::unit_circles_grid(spec); break;
        case GeneratorKind::TangentChain: fam = detail::tangent_chain(spec); break;
        case GeneratorKind::RandomCircles: fam = detail::random_circles(spec); break;
        case GeneratorKind::PseudoParabolas: fam = detail::pseudo_parabolas(spec); break;
        case GeneratorKind::PerturbedPencil: return detail::perturbed_pencil(spec);
    }
    detail::require_valid(fam, to_string(spec.kind));
    return fam;
}

}  // namespace jarc
