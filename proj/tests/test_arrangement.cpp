#include <gtest/gtest.h>

#include <random>

#include "jarc/arrangement.hpp"
#include "jarc/validate.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace jarc;
using fixtures::P;
using fixtures::Q;

namespace {

oracle::FloodAgreement flood_check(const CurveFamily& fam, const Arrangement& arr, int steps = 48) {
    BoundingBox box = fam[0].bbox();
    for (const auto& c : fam.curves()) {
        box.xmin = std::min(box.xmin, c.bbox().xmin);
        box.ymin = std::min(box.ymin, c.bbox().ymin);
        box.xmax = std::max(box.xmax, c.bbox().xmax);
        box.ymax = std::max(box.ymax, c.bbox().ymax);
    }
    Rational span = std::max(box.xmax - box.xmin, box.ymax - box.ymin) + 2;
    Rational h = span / steps;
    auto ff = oracle::flood_fill(fam.curves(), Rational(box.xmin - 1 + make_rational(1, 97)),
                                 Rational(box.ymin - 1 + make_rational(1, 89)), h, steps);
    return oracle::compare_with_flood(ff, [&](const RationalPoint& p) { return locate_cell(arr, p); },
                                      Arrangement::unbounded_face);
}

CurveFamily random_valid_family(std::mt19937_64& rng, int curves, bool allow_open) {
    for (;;) {
        std::vector<PolylineCurve> cs;
        std::bernoulli_distribution open(allow_open ? 0.3 : 0.0);
        for (int k = 0; k < curves; ++k) cs.push_back(fixtures::random_star(k + 1, rng, !open(rng), 4));
        CurveFamily fam(cs, 16);
        if (validate_general_position(fam).ok) return fam;
    }
}

void expect_walks_closed(const Arrangement& arr) {
    std::size_t total = 0;
    for (std::size_t c = 0; c < arr.cycles().size(); ++c) total += arr.cycle_half_edges(static_cast<int>(c)).size();
    EXPECT_EQ(total, arr.half_edges().size());
    for (std::size_t h = 0; h < arr.half_edges().size(); ++h) {
        const auto& e = arr.half_edges()[h];
        EXPECT_NE(e.twin, static_cast<int>(h));
        EXPECT_EQ(arr.half_edges()[e.twin].twin, static_cast<int>(h));
        EXPECT_EQ(arr.half_edges()[e.next].prev, static_cast<int>(h));
        EXPECT_EQ(e.path.back(), arr.half_edges()[e.next].path.front());
    }
}

}  // namespace

TEST(BuildArrangement, SingleSquare) {
    CurveFamily fam({fixtures::square(1, 0, 0, 2)}, 1);
    auto arr = build_arrangement(fam);
    EXPECT_EQ(arr.vertex_count(), 1u);
    EXPECT_EQ(arr.edge_count(), 1u);
    EXPECT_EQ(arr.face_count(), 2u);
    EXPECT_TRUE(arr.euler_holds());
    EXPECT_EQ(arr.vertices()[0].point, P(0, 0));
    expect_walks_closed(arr);
}

TEST(BuildArrangement, CrossingSquares) {
    auto fam = fixtures::crossing_squares();
    auto arr = build_arrangement(fam);
    EXPECT_EQ(arr.vertex_count(), 2u);
    EXPECT_EQ(arr.edge_count(), 4u);
    EXPECT_EQ(arr.face_count(), 4u);
    EXPECT_TRUE(arr.euler_holds());
    auto agree = flood_check(fam, arr);
    EXPECT_EQ(agree.components, 4u);
    EXPECT_TRUE(agree.consistent);
    EXPECT_TRUE(agree.injective);
    EXPECT_TRUE(agree.outer_is_unbounded);
    expect_walks_closed(arr);
}

TEST(BuildArrangement, TangentDiamonds) {
    auto fam = fixtures::tangent_diamonds();
    auto arr = build_arrangement(fam);
    EXPECT_EQ(arr.vertex_count(), 1u);
    EXPECT_EQ(arr.face_count(), 3u);
    EXPECT_TRUE(arr.euler_holds());
    auto agree = flood_check(fam, arr);
    EXPECT_EQ(agree.components, 3u);
    EXPECT_TRUE(agree.consistent && agree.injective);
}

TEST(BuildArrangement, NestedComponentsGetDepth) {
    CurveFamily fam({fixtures::square(1, 0, 0, 10), fixtures::square(2, 2, 2, 6), fixtures::square(3, 4, 4, 2),
                     fixtures::open_arc(4, {P(20, 0), P(21, 1)})},
                    1);
    auto arr = build_arrangement(fam);
    EXPECT_EQ(arr.component_count(), 4u);
    EXPECT_EQ(arr.face_count(), 4u);
    EXPECT_TRUE(arr.euler_holds());
    int inner = locate_cell(arr, Q(5, 1, 5, 1));
    EXPECT_EQ(arr.faces()[inner].depth, 3);
    EXPECT_EQ(arr.faces()[locate_cell(arr, P(1, 1))].depth, 1);
    EXPECT_EQ(arr.faces()[Arrangement::unbounded_face].hole_cycles.size(), 2u);
    auto agree = flood_check(fam, arr, 60);
    EXPECT_TRUE(agree.consistent && agree.injective);
}

TEST(LocateCell, Examples) {
    auto fam = fixtures::crossing_squares();
    auto arr = build_arrangement(fam);
    EXPECT_EQ(locate_cell(arr, P(100, -100)), Arrangement::unbounded_face);
    int lens = locate_cell(arr, Q(3, 2, 3, 2));
    EXPECT_NE(lens, Arrangement::unbounded_face);
    auto walk = boundary_edge_cycle(arr, lens);
    ASSERT_EQ(walk.size(), 2u);
    EXPECT_NE(walk[0].curve, walk[1].curve);
    EXPECT_NE(locate_cell(arr, Q(1, 2, 1, 2)), lens);
    EXPECT_THROW(locate_cell(arr, P(1, 0)), OnCurveError);
    EXPECT_THROW(locate_cell(arr, P(2, 1)), OnCurveError);

    auto one = build_arrangement(CurveFamily({fixtures::square(1, 0, 0, 2)}, 1));
    EXPECT_NE(locate_cell(one, P(1, 1)), Arrangement::unbounded_face);
}

TEST(BoundaryEdgeCycle, Examples) {
    // Two chords across a square: the middle strip has four edges.
    CurveFamily strip({fixtures::square(1, 0, 0, 4), fixtures::open_arc(2, {P(-1, 1), P(5, 1)}),
                       fixtures::open_arc(3, {P(-1, 3), P(5, 3)})},
                      2);
    auto arr = build_arrangement(strip);
    EXPECT_TRUE(arr.euler_holds());
    EXPECT_EQ(boundary_edge_cycle(arr, locate_cell(arr, P(2, 2))).size(), 4u);

    auto one = build_arrangement(CurveFamily({fixtures::square(1, 0, 0, 2)}, 1));
    EXPECT_EQ(boundary_edge_cycle(one, locate_cell(one, P(1, 1))).size(), 1u);

    CurveFamily dangling({fixtures::square(1, 0, 0, 4), fixtures::open_arc(2, {P(-1, 2), P(2, 2)})}, 1);
    auto darr = build_arrangement(dangling);
    EXPECT_TRUE(darr.euler_holds());
    auto walk = boundary_edge_cycle(darr, locate_cell(darr, P(1, 1)));
    ASSERT_EQ(walk.size(), 3u);
    int arc_sides = 0;
    std::set<int> labels;
    for (const auto& e : walk) {
        arc_sides += e.curve == 2;
        labels.insert(e.label);
    }
    EXPECT_EQ(arc_sides, 2);
    EXPECT_EQ(labels.size(), 3u);
}

TEST(BoundaryEdgeCycle, InteriorOnTheRight) {
    auto arr = build_arrangement(CurveFamily({fixtures::square(1, 0, 0, 2)}, 1));
    auto walk = boundary_edge_cycle(arr, locate_cell(arr, P(1, 1)));
    const auto& path = arr.half_edges()[walk[0].label].path;
    // Walking the reversed path keeps (1,1) on the right.
    EXPECT_EQ(exact_orientation(path[1], path[0], P(1, 1)), Orientation::Right);
}

TEST(CellsOfPair, Examples) {
    CurveFamily apart({fixtures::square(1, 0, 0, 1), fixtures::square(2, 3, 0, 1)}, 1);
    auto c0 = cells_of_pair(apart, 1, 2);
    EXPECT_EQ(c0.count, 3u);
    auto c1 = cells_of_pair(fixtures::crossing_squares(2), 1, 2);
    EXPECT_EQ(c1.count, 4u);
    EXPECT_TRUE(c1.within_bound);
    auto c2 = cells_of_pair(fixtures::tangent_diamonds(1), 1, 2);
    EXPECT_EQ(c2.count, 3u);
    EXPECT_TRUE(c2.within_bound);
    EXPECT_TRUE(c2.closed_pair);
}

namespace {

// Diamond of radius 2 at the origin (id 1), a far square (id 2).
std::vector<PolylineCurve> split_base() { return {fixtures::diamond(1, 0, 0, 2), fixtures::square(2, 10, 10, 2)}; }

}  // namespace

TEST(SplitArcsByPair, TouchFromOutside) {
    auto cs = split_base();
    cs.push_back(fixtures::open_arc(3, {P(3, -1), P(2, 0), P(3, 1)}));
    CurveFamily fam(cs, 2);
    ASSERT_TRUE(validate_general_position(fam).ok);
    auto cells = cells_of_pair(fam, 1, 2);
    auto pieces = split_curve(fam.by_id(3), {&fam.by_id(1), &fam.by_id(2)}, cells.arrangement);
    ASSERT_EQ(pieces.size(), 2u);
    auto outside = split_arcs_by_pair(fam, 1, 2, {3}, {}, Arrangement::unbounded_face, cells.arrangement);
    ASSERT_EQ(outside.size(), 2u);
    EXPECT_EQ(outside[0].end, EndKind::OnBoundary);
    EXPECT_EQ(outside[1].start, EndKind::OnBoundary);
    int inside = locate_cell(cells.arrangement, P(0, 0));
    EXPECT_TRUE(split_arcs_by_pair(fam, 1, 2, {3}, {}, inside, cells.arrangement).empty());
}

TEST(SplitArcsByPair, AtMostMPlusTwoPieces) {
    // Touches the diamond at (2,0), then crosses the square twice.
    auto cs = split_base();
    cs.push_back(fixtures::open_arc(3, {P(3, -1), P(2, 0), P(3, 1), P(11, 13), P(11, 15)}));
    CurveFamily fam(cs, 2);
    ASSERT_TRUE(validate_general_position(fam).ok);
    auto cells = cells_of_pair(fam, 1, 2);
    auto pieces = split_curve(fam.by_id(3), {&fam.by_id(1), &fam.by_id(2)}, cells.arrangement);
    EXPECT_EQ(pieces.size(), 4u);
    EXPECT_LE(pieces.size(), static_cast<std::size_t>(fam.m()) + 2);
}

TEST(SplitArcsByPair, TouchFromInside) {
    auto cs = split_base();
    cs.push_back(fixtures::open_arc(3, {Q(1, 2, -1, 1), Q(1, 1, -1, 2), P(2, 0), Q(1, 1, 1, 2), Q(1, 2, 1, 1)}));
    CurveFamily fam(cs, 2);
    ASSERT_TRUE(validate_general_position(fam).ok);
    auto cells = cells_of_pair(fam, 1, 2);
    int inside = locate_cell(cells.arrangement, P(0, 0));
    auto got = split_arcs_by_pair(fam, 1, 2, {3}, {}, inside, cells.arrangement);
    ASSERT_EQ(got.size(), 2u);
    for (const auto& s : got) EXPECT_EQ(s.free_ends(), 1);
}

TEST(SplitArcsByPair, RejectsNonTouchingArc) {
    auto cs = split_base();
    cs.push_back(fixtures::open_arc(3, {P(5, 5), P(6, 6)}));
    CurveFamily fam(cs, 2);
    EXPECT_THROW(split_arcs_by_pair(fam, 1, 2, {3}, {}, 0), PreconditionError);
}

TEST(Dump, HasSections) {
    auto text = dump(build_arrangement(fixtures::crossing_squares()));
    EXPECT_EQ(text.find("VERTICES 2\n"), 0u);
    EXPECT_NE(text.find("HALFEDGES 8\n"), std::string::npos);
    EXPECT_NE(text.find("FACES 4\n"), std::string::npos);
}

TEST(BuildArrangement, PropertyEulerFloodAndSplit) {
    std::mt19937_64 rng(3);
    int injective = 0;
    for (int trial = 0; trial < 40; ++trial) {
        auto fam = random_valid_family(rng, 2 + trial % 4, true);
        auto arr = build_arrangement(fam);
        ASSERT_TRUE(arr.euler_holds()) << dump(arr);
        expect_walks_closed(arr);
        auto agree = flood_check(fam, arr, 28);
        EXPECT_TRUE(agree.consistent);
        EXPECT_TRUE(agree.outer_is_unbounded);
        EXPECT_LE(agree.faces_hit, arr.face_count());
        injective += agree.injective;

        // Concatenated pieces reproduce each curve.
        for (std::size_t c = 0; c < fam.size(); ++c) {
            std::vector<const PolylineCurve*> cutters;
            std::vector<std::size_t> others;
            for (std::size_t o = 0; o < fam.size(); ++o)
                if (o != c) {
                    cutters.push_back(&fam[o]);
                    others.push_back(o);
                }
            auto pieces = split_curve(fam[c], cutters, build_arrangement(fam.subset(others)));
            std::vector<RationalPoint> joined;
            for (const auto& s : pieces) {
                if (!joined.empty()) {
                    ASSERT_EQ(joined.back(), s.points.front());
                    joined.pop_back();
                }
                joined.insert(joined.end(), s.points.begin(), s.points.end());
            }
            // Drop straight-through cut points that are not polyline vertices.
            if (fam[c].closed()) {
                ASSERT_EQ(joined.front(), joined.back());
                joined.pop_back();
            }
            std::vector<RationalPoint> verts;
            for (const auto& p : joined)
                if (fam[c].find_vertex(p)) verts.push_back(p);
            if (fam[c].closed()) {
                auto it = std::find(verts.begin(), verts.end(), fam[c].vertex(0));
                std::rotate(verts.begin(), it, verts.end());
            }
            EXPECT_EQ(verts, fam[c].vertices());
        }
    }
    // Random stars pinch faces below the grid step; injectivity is only
    // required on the fixtures above.
    EXPECT_GT(injective, 0);
}
