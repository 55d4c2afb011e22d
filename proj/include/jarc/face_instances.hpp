#pragma once

// Explicit faces with m + 5 distinguished boundary arcs and arcs inside the
// face touching each of them once. Used to exercise the signature and
// charging checks on instances whose answer is known.

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "jarc/curve.hpp"
#include "jarc/errors.hpp"
#include "jarc/generators.hpp"
#include "jarc/incidence.hpp"
#include "jarc/rational.hpp"
#include "jarc/salazar.hpp"
#include "jarc/validate.hpp"

namespace jarc {

struct FaceInstance {
    std::string name;
    CurveFamily cutters;
    std::vector<CurveId> lambda1;
    RationalPoint inside;
    std::vector<PolylineCurve> lambdaF;
    int m = 1;
    bool m_intersecting = true;  // cutters plus lambdaF have at most m points per pair

    FaceContext context() const { return make_face_context(cutters, lambda1, inside); }

    CurveFamily combined() const {
        std::vector<PolylineCurve> all = cutters.curves();
        all.insert(all.end(), lambdaF.begin(), lambdaF.end());
        return CurveFamily(std::move(all), m);
    }
};

namespace detail {

/// General position of cutters and arcs together, ignoring the bound m;
/// records whether the bound holds.
inline void certify_instance(FaceInstance& inst) {
    std::vector<PolylineCurve> all = inst.cutters.curves();
    all.insert(all.end(), inst.lambdaF.begin(), inst.lambdaF.end());
    const CurveFamily loose(all, 1'000'000);
    auto report = validate_general_position(loose);
    if (!report.ok) throw ConstructionError(inst.name + ": " + report.violations.front().message);
    inst.m_intersecting = validate_general_position(CurveFamily(std::move(all), inst.m)).ok;
}

}  // namespace detail

/// Convex face bounded by L = m + 5 segments tangent to a circle; each
/// segment crosses only its two neighbours. Each entry of `alphas` is one
/// arc inside the face, given by the fraction along every side where it
/// touches. Open arcs run from near the first contact around to the last;
/// closed arcs are the inscribed polygons.
inline FaceInstance polygon_instance(int m, std::uint64_t seed, const std::vector<std::vector<Rational>>& alphas,
                                     bool closed_arcs = false) {
    if (m < 1) throw PreconditionError("m must be positive");
    const int L = m + 5;
    PortableRng rng(seed);
    const int count = 8 * L;
    const auto dirs = circle_directions(count);
    const int step = static_cast<int>(dirs.size()) / L;
    std::vector<RationalPoint> u;
    for (int k = 0; k < L; ++k) u.push_back(dirs[static_cast<std::size_t>(k * step + static_cast<int>(rng.below(2)))]);
    const Rational R(10);
    std::vector<RationalPoint> corner(static_cast<std::size_t>(L));  // between side k and side k + 1
    for (int k = 0; k < L; ++k) {
        const auto& a = u[static_cast<std::size_t>(k)];
        const auto& b = u[static_cast<std::size_t>((k + 1) % L)];
        corner[static_cast<std::size_t>(k)] = scale(a + b, Rational(R / (1 + dot(a, b))));
    }
    auto side_start = [&](int k) { return corner[static_cast<std::size_t>((k + L - 1) % L)]; };
    auto side_end = [&](int k) { return corner[static_cast<std::size_t>(k)]; };

    FaceInstance inst;
    inst.name = "polygon-m" + std::to_string(m) + "-s" + std::to_string(seed);
    inst.m = m;
    inst.inside = RationalPoint(Rational(0), Rational(0));

    std::vector<std::vector<RationalPoint>> touch(alphas.size());
    for (std::size_t j = 0; j < alphas.size(); ++j) {
        if (alphas[j].size() != static_cast<std::size_t>(L)) throw PreconditionError("one fraction per side");
        for (int k = 0; k < L; ++k) {
            const Rational& a = alphas[j][static_cast<std::size_t>(k)];
            if (a <= 0 || a >= 1) throw PreconditionError("contact fractions lie strictly inside (0, 1)");
            touch[j].push_back(lerp(side_start(k), side_end(k), a));
        }
    }

    std::vector<PolylineCurve> cutters;
    for (int k = 0; k < L; ++k) {
        const RationalPoint a = side_start(k), b = side_end(k);
        std::vector<std::pair<Rational, RationalPoint>> stops;
        for (std::size_t j = 0; j < alphas.size(); ++j) stops.emplace_back(alphas[j][static_cast<std::size_t>(k)], touch[j][static_cast<std::size_t>(k)]);
        std::sort(stops.begin(), stops.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
        std::vector<RationalPoint> pts{a + scale(a - b, make_rational(1, 4))};
        for (const auto& [f, p] : stops) pts.push_back(p);
        pts.push_back(b + scale(b - a, make_rational(1, 4)));
        cutters.emplace_back(static_cast<CurveId>(k + 1), std::move(pts), false);
        inst.lambda1.push_back(static_cast<CurveId>(k + 1));
    }
    inst.cutters = CurveFamily(std::move(cutters), m);

    for (std::size_t j = 0; j < alphas.size(); ++j) {
        const CurveId id = static_cast<CurveId>(100 + j);
        if (closed_arcs) {
            inst.lambdaF.emplace_back(id, touch[j], true);
            continue;
        }
        std::vector<RationalPoint> pts{lerp(touch[j].front(), inst.inside, make_rational(1, 3))};
        pts.insert(pts.end(), touch[j].begin(), touch[j].end());
        pts.push_back(lerp(touch[j].back(), inst.inside, make_rational(1, 3)));
        inst.lambdaF.emplace_back(id, std::move(pts), false);
    }
    detail::certify_instance(inst);
    return inst;
}

/// Random contact fractions on the grid k/40 within [3/10, 7/10].
inline std::vector<Rational> random_fractions(int L, PortableRng& rng) {
    std::vector<Rational> out;
    for (int k = 0; k < L; ++k) out.push_back(rng.rational(make_rational(3, 10), make_rational(7, 10), 40));
    return out;
}

/// One arc in a convex face: valid for every m.
inline FaceInstance polygon_single(int m, std::uint64_t seed) {
    PortableRng rng(seed ^ 0x5bd1e995u);
    return polygon_instance(m, seed, {random_fractions(m + 5, rng)});
}

/// Two arcs with the same signature in a convex face. `mixed` flips the
/// order of the two contacts on random sides, producing hat edges.
inline FaceInstance polygon_violating_pair(int m, std::uint64_t seed, bool mixed, bool closed_arcs = false) {
    PortableRng rng(seed ^ 0x2545f491u);
    const int L = m + 5;
    std::vector<Rational> a = random_fractions(L, rng), b;
    for (int k = 0; k < L; ++k) {
        const bool flip = mixed && rng.coin();
        b.push_back(Rational(a[static_cast<std::size_t>(k)] + (flip ? make_rational(-1, 10) : make_rational(1, 10))));
    }
    auto inst = polygon_instance(m, seed, {a, b}, closed_arcs);
    inst.name += mixed ? "-mixed" : "-alt";
    if (closed_arcs) inst.name += "-closed";
    return inst;
}

/// Face between two rows of nested hooks (m >= 2). Arc i of Lambda_1 forms
/// the top edge over [i, i + 1], runs around the right end outside its
/// successors and returns as the bottom edge over the same interval, so
/// every arc of Lambda_1 bounds the face twice. Consecutive arcs cross at
/// both rows; a vertical wall closes the left end. `top` and `bottom` list
/// arcs zig-zagging along the respective row, given by their contact
/// offsets within each unit interval.
inline FaceInstance ladder_instance(int m, const std::vector<std::vector<Rational>>& top,
                                    const std::vector<std::vector<Rational>>& bottom, const std::string& name) {
    if (m < 2) throw PreconditionError("ladder faces need m >= 2");
    const int L = m + 5;
    auto q = [](long a, long b) { return make_rational(a, b); };
    auto P = [](const Rational& x, const Rational& y) { return RationalPoint(x, y); };
    FaceInstance inst;
    inst.name = name;
    inst.m = m;
    inst.inside = P(q(3, 2), Rational(0));

    std::vector<PolylineCurve> cutters;
    for (int k = 1; k <= L; ++k) {
        const Rational x(k);
        const Rational H = 2 + q(L - k + 1, 2);
        const Rational XR = L + 3 + q(L - k + 1, 2);
        std::vector<Rational> up, down;
        for (const auto& arc : top) up.push_back(arc[static_cast<std::size_t>(k - 1)]);
        for (const auto& arc : bottom) down.push_back(arc[static_cast<std::size_t>(k - 1)]);
        std::sort(up.begin(), up.end());
        std::sort(down.begin(), down.end());
        std::vector<RationalPoint> pts{P(x - q(1, 4), q(5, 4)), P(x + q(1, 8), Rational(1))};
        for (const auto& o : up) pts.push_back(P(x + o, Rational(1)));
        pts.push_back(P(x + q(7, 8), Rational(1)));
        pts.push_back(P(x + q(5, 4), q(3, 2)));
        pts.push_back(P(x + q(5, 4), H));
        pts.push_back(P(XR, H));
        pts.push_back(P(XR, Rational(-H)));
        pts.push_back(P(x + q(5, 4), Rational(-H)));
        pts.push_back(P(x + q(5, 4), q(-3, 2)));
        pts.push_back(P(x + q(7, 8), Rational(-1)));
        for (auto it = down.rbegin(); it != down.rend(); ++it) pts.push_back(P(x + *it, Rational(-1)));
        pts.push_back(P(x + q(1, 8), Rational(-1)));
        pts.push_back(P(x - q(1, 4), q(-5, 4)));
        cutters.emplace_back(static_cast<CurveId>(k), std::move(pts), false);
        inst.lambda1.push_back(static_cast<CurveId>(k));
    }
    cutters.emplace_back(static_cast<CurveId>(L + 1), std::vector<RationalPoint>{P(Rational(1), Rational(-2)), P(Rational(1), Rational(2))},
                         false);
    inst.cutters = CurveFamily(std::move(cutters), m);

    auto zigzag = [&](CurveId id, const std::vector<Rational>& offs, int sign, const Rational& dip) {
        if (offs.size() != static_cast<std::size_t>(L)) throw PreconditionError("one contact offset per arc of Lambda_1");
        const Rational s(sign);
        std::vector<RationalPoint> pts{P(q(5, 4), Rational(s * dip))};
        for (int k = 1; k <= L; ++k) {
            const Rational& o = offs[static_cast<std::size_t>(k - 1)];
            if (o <= q(1, 8) || o >= q(7, 8)) throw PreconditionError("contact offsets lie in (1/8, 7/8)");
            pts.push_back(P(k + o, s));
            pts.push_back(P(Rational(k + 1), Rational(s * dip)));
        }
        return PolylineCurve(id, std::move(pts), false);
    };
    CurveId next = 100;
    const Rational dips[] = {q(1, 2), q(5, 8), q(3, 8), q(11, 16)};
    for (std::size_t j = 0; j < top.size(); ++j) inst.lambdaF.push_back(zigzag(next++, top[j], 1, dips[j % 4]));
    for (std::size_t j = 0; j < bottom.size(); ++j) inst.lambdaF.push_back(zigzag(next++, bottom[j], -1, dips[j % 4]));
    detail::certify_instance(inst);
    return inst;
}

inline std::vector<Rational> ladder_offsets(int L, PortableRng& rng) {
    std::vector<Rational> out;
    for (int k = 0; k < L; ++k) out.push_back(rng.rational(make_rational(3, 8), make_rational(1, 2), 32));
    return out;
}

/// One arc along each row: distinct signatures with no crossing between them.
inline FaceInstance ladder_pair(int m, std::uint64_t seed) {
    PortableRng rng(seed);
    const int L = m + 5;
    return ladder_instance(m, {ladder_offsets(L, rng)}, {ladder_offsets(L, rng)},
                           "ladder-m" + std::to_string(m) + "-s" + std::to_string(seed));
}

/// Two arcs along the top row, the second shifted right: one shared
/// signature and a crossing in every gap.
inline FaceInstance ladder_violating_pair(int m, std::uint64_t seed) {
    PortableRng rng(seed);
    const int L = m + 5;
    auto a = ladder_offsets(L, rng);
    std::vector<Rational> b;
    for (const auto& x : a) b.push_back(Rational(x + make_rational(1, 4)));
    return ladder_instance(m, {a, b}, {}, "ladder-violating-m" + std::to_string(m) + "-s" + std::to_string(seed));
}

/// The standard suites: valid instances for m = 1, 2, 3 and violating
/// same-signature pairs.
inline std::vector<FaceInstance> valid_face_instances(std::uint64_t seed = 42, int per_m = 8) {
    std::vector<FaceInstance> out;
    for (int m = 1; m <= 3; ++m)
        for (int k = 0; k < per_m; ++k) {
            const std::uint64_t s = seed + static_cast<std::uint64_t>(100 * m + k);
            out.push_back(m == 1 || k % 2 == 0 ? (m == 1 ? polygon_single(m, s) : ladder_pair(m, s)) : polygon_single(m, s));
        }
    return out;
}

inline std::vector<FaceInstance> violating_face_pairs(std::uint64_t seed = 42) {
    std::vector<FaceInstance> out;
    for (int m = 1; m <= 3; ++m) {
        out.push_back(polygon_violating_pair(m, seed + static_cast<std::uint64_t>(m), false));
        out.push_back(polygon_violating_pair(m, seed + static_cast<std::uint64_t>(10 + m), true));
        out.push_back(polygon_violating_pair(m, seed + static_cast<std::uint64_t>(20 + m), false, true));
    }
    for (int m = 2; m <= 3; ++m) out.push_back(ladder_violating_pair(m, seed + static_cast<std::uint64_t>(30 + m)));
    return out;
}

}  // namespace jarc
