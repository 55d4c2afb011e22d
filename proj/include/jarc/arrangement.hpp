#pragma once

// Planar arrangement of a curve family as a half-edge structure.
//
// Vertices are the incidence points and arc endpoints. A closed curve with
// no incidences gets one anchor vertex (its lexicographically smallest
// polyline vertex) so that it still contributes a single loop edge.
// Half-edges are directed curve portions; the face of a half-edge lies to
// its left, and next() turns clockwise at the head vertex. Degree-1
// vertices produce spurs (next == twin).

#include <algorithm>
#include <cstddef>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "jarc/curve.hpp"
#include "jarc/errors.hpp"
#include "jarc/graphs.hpp"
#include "jarc/incidence.hpp"
#include "jarc/rational.hpp"

namespace jarc {

struct ArrVertex {
    RationalPoint point;
    std::vector<int> out;  // outgoing half-edges, counter-clockwise from +x
};

struct HalfEdge {
    int origin = -1;
    int twin = -1;
    int next = -1;
    int prev = -1;
    CurveId curve = 0;
    int face = -1;
    int cycle = -1;
    std::vector<RationalPoint> path;  // origin first, head last
};

struct BoundaryCycle {
    int start = -1;
    Rational area2;  // twice the signed area
    int face = -1;
    int component = -1;
    BoundingBox box;
};

struct Face {
    int outer_cycle = -1;           // -1 for the unbounded face
    std::vector<int> hole_cycles;   // outer boundaries of nested components
    int depth = 0;
};

namespace detail {

inline int winding_number(const std::vector<RationalPoint>& ring, const RationalPoint& p) {
    int wn = 0;
    const std::size_t k = ring.size();
    for (std::size_t i = 0; i < k; ++i) {
        const RationalPoint& a = ring[i];
        const RationalPoint& b = ring[(i + 1) % k];
        if (a.y <= p.y) {
            if (b.y > p.y && orient_sign(a, b, p) > 0) ++wn;
        } else if (b.y <= p.y && orient_sign(a, b, p) < 0) {
            --wn;
        }
    }
    return wn;
}

inline bool on_segment(const RationalPoint& a, const RationalPoint& b, const RationalPoint& p) {
    if (exact_orientation(a, b, p) != Orientation::Collinear) return false;
    return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) && std::min(a.y, b.y) <= p.y &&
           p.y <= std::max(a.y, b.y);
}

inline RationalPoint position_point(const PolylineCurve& c, const CurvePosition& pos) {
    if (pos.at_vertex()) return c.vertex(pos.segment % c.vertex_count());
    return lerp(c.segment_start(pos.segment), c.segment_end(pos.segment), pos.t);
}

/// Polyline of c from position `from` to position `to`, walking forward.
/// For closed curves `to` may precede `from` (wrap-around); equal positions
/// yield the full loop.
inline std::vector<RationalPoint> curve_portion(const PolylineCurve& c, const CurvePosition& from, const CurvePosition& to) {
    const std::size_t k = c.vertex_count();
    std::size_t s1 = to.segment;
    if (c.closed() && !(from < to)) s1 += c.segment_count();
    std::vector<RationalPoint> pts{position_point(c, from)};
    for (std::size_t j = from.segment + 1; j <= s1; ++j) {
        if (j == s1 && to.at_vertex()) break;
        pts.push_back(c.vertex(j % k));
    }
    pts.push_back(position_point(c, to));
    return pts;
}

inline Rational ring_area2(const std::vector<RationalPoint>& ring) {
    Rational a = 0;
    for (std::size_t i = 0; i < ring.size(); ++i) a += cross(ring[i], ring[(i + 1) % ring.size()]);
    return a;
}

inline BoundingBox ring_box(const std::vector<RationalPoint>& ring) {
    BoundingBox b{ring[0].x, ring[0].y, ring[0].x, ring[0].y};
    for (const auto& p : ring) {
        if (p.x < b.xmin) b.xmin = p.x;
        if (p.x > b.xmax) b.xmax = p.x;
        if (p.y < b.ymin) b.ymin = p.y;
        if (p.y > b.ymax) b.ymax = p.y;
    }
    return b;
}

}  // namespace detail

class Arrangement {
public:
    static constexpr int unbounded_face = 0;

    const std::vector<ArrVertex>& vertices() const { return vertices_; }
    const std::vector<HalfEdge>& half_edges() const { return half_edges_; }
    const std::vector<Face>& faces() const { return faces_; }
    const std::vector<BoundaryCycle>& cycles() const { return cycles_; }

    std::size_t vertex_count() const { return vertices_.size(); }
    std::size_t edge_count() const { return half_edges_.size() / 2; }
    std::size_t face_count() const { return faces_.size(); }
    std::size_t component_count() const { return components_; }

    bool euler_holds() const {
        return static_cast<long>(vertex_count()) - static_cast<long>(edge_count()) + static_cast<long>(face_count()) ==
               1 + static_cast<long>(component_count());
    }

    /// Closed polygon traced by a boundary cycle (spurs included).
    std::vector<RationalPoint> cycle_ring(int cycle) const {
        std::vector<RationalPoint> ring;
        int h = cycles_.at(cycle).start;
        do {
            const auto& path = half_edges_[h].path;
            ring.insert(ring.end(), path.begin(), path.end() - 1);
            h = half_edges_[h].next;
        } while (h != cycles_[cycle].start);
        return ring;
    }

    /// Half-edges of a cycle in next() order.
    std::vector<int> cycle_half_edges(int cycle) const {
        std::vector<int> out;
        int h = cycles_.at(cycle).start;
        do {
            out.push_back(h);
            h = half_edges_[h].next;
        } while (h != cycles_[cycle].start);
        return out;
    }

    bool on_curve(const RationalPoint& p) const {
        for (std::size_t h = 0; h < half_edges_.size(); h += 2) {
            const auto& path = half_edges_[h].path;
            for (std::size_t s = 0; s + 1 < path.size(); ++s)
                if (detail::on_segment(path[s], path[s + 1], p)) return true;
        }
        return false;
    }

private:
    friend Arrangement build_arrangement(const CurveFamily&, ScanMode);
    std::vector<ArrVertex> vertices_;
    std::vector<HalfEdge> half_edges_;
    std::vector<Face> faces_;
    std::vector<BoundaryCycle> cycles_;
    std::size_t components_ = 0;
};

inline Arrangement build_arrangement(const CurveFamily& family, ScanMode mode = ScanMode::Strict) {
    Arrangement arr;
    auto incidences = family_incidences(family, mode);

    // Break positions per curve.
    std::vector<std::map<CurvePosition, RationalPoint>> breaks(family.size());
    for (const auto& pi : incidences)
        for (const auto& r : pi.records) {
            breaks[pi.i].emplace(r.pos_a, r.point);
            breaks[pi.j].emplace(r.pos_b, r.point);
        }
    for (std::size_t c = 0; c < family.size(); ++c) {
        const auto& curve = family[c];
        if (!curve.closed()) {
            breaks[c].emplace(CurvePosition{0, Rational(0)}, curve.vertex(0));
            breaks[c].emplace(CurvePosition{curve.vertex_count() - 1, Rational(0)}, curve.vertex(curve.vertex_count() - 1));
        } else if (breaks[c].empty()) {
            std::size_t best = 0;
            for (std::size_t v = 1; v < curve.vertex_count(); ++v)
                if (curve.vertex(v) < curve.vertex(best)) best = v;
            breaks[c].emplace(CurvePosition{best, Rational(0)}, curve.vertex(best));
        }
    }

    std::map<RationalPoint, int> vertex_id;
    auto vertex_of = [&](const RationalPoint& p) {
        auto [it, fresh] = vertex_id.emplace(p, static_cast<int>(arr.vertices_.size()));
        if (fresh) arr.vertices_.push_back({p, {}});
        return it->second;
    };
    auto add_edge = [&](CurveId owner, std::vector<RationalPoint> path) {
        const int u = vertex_of(path.front());
        const int v = vertex_of(path.back());
        const int h = static_cast<int>(arr.half_edges_.size());
        HalfEdge fwd, bwd;
        fwd.origin = u;
        bwd.origin = v;
        fwd.twin = h + 1;
        bwd.twin = h;
        fwd.curve = bwd.curve = owner;
        bwd.path.assign(path.rbegin(), path.rend());
        fwd.path = std::move(path);
        arr.half_edges_.push_back(std::move(fwd));
        arr.half_edges_.push_back(std::move(bwd));
        arr.vertices_[u].out.push_back(h);
        arr.vertices_[v].out.push_back(h + 1);
    };

    for (std::size_t c = 0; c < family.size(); ++c) {
        const auto& curve = family[c];
        std::vector<CurvePosition> pos;
        for (const auto& [p, pt] : breaks[c]) pos.push_back(p);
        for (const auto& [p, pt] : breaks[c]) vertex_of(pt);
        if (curve.closed()) {
            for (std::size_t k = 0; k < pos.size(); ++k)
                add_edge(curve.id(), detail::curve_portion(curve, pos[k], pos[(k + 1) % pos.size()]));
        } else {
            for (std::size_t k = 0; k + 1 < pos.size(); ++k)
                add_edge(curve.id(), detail::curve_portion(curve, pos[k], pos[k + 1]));
        }
    }

    auto& H = arr.half_edges_;
    for (auto& v : arr.vertices_) {
        std::sort(v.out.begin(), v.out.end(), [&](int a, int b) {
            return angle_less(H[a].path[1] - H[a].path[0], H[b].path[1] - H[b].path[0]);
        });
    }
    // next(h): clockwise neighbour of twin(h) around the head vertex.
    for (std::size_t v = 0; v < arr.vertices_.size(); ++v) {
        const auto& out = arr.vertices_[v].out;
        const std::size_t deg = out.size();
        for (std::size_t k = 0; k < deg; ++k) {
            const int incoming = H[out[k]].twin;
            const int nxt = out[(k + deg - 1) % deg];
            H[incoming].next = nxt;
            H[nxt].prev = incoming;
        }
    }

    // Connected components over vertices.
    std::vector<int> parent(arr.vertices_.size());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (std::size_t h = 0; h < H.size(); h += 2) parent[find(H[h].origin)] = find(H[h + 1].origin);
    std::map<int, int> comp_label;
    for (std::size_t v = 0; v < parent.size(); ++v) comp_label.emplace(find(static_cast<int>(v)), static_cast<int>(comp_label.size()));
    arr.components_ = comp_label.size();

    // Boundary cycles.
    for (std::size_t h0 = 0; h0 < H.size(); ++h0) {
        if (H[h0].cycle != -1) continue;
        const int id = static_cast<int>(arr.cycles_.size());
        BoundaryCycle cyc;
        cyc.start = static_cast<int>(h0);
        cyc.component = comp_label.at(find(H[h0].origin));
        int h = static_cast<int>(h0);
        do {
            H[h].cycle = id;
            h = H[h].next;
        } while (h != static_cast<int>(h0));
        arr.cycles_.push_back(std::move(cyc));
        auto ring = arr.cycle_ring(id);
        arr.cycles_[id].area2 = detail::ring_area2(ring);
        arr.cycles_[id].box = detail::ring_box(ring);
    }

    // Faces: unbounded first, then one per positively oriented cycle in
    // cycle order.
    arr.faces_.push_back(Face{});
    std::vector<int> positive;
    for (std::size_t c = 0; c < arr.cycles_.size(); ++c) {
        if (sgn(arr.cycles_[c].area2) > 0) {
            arr.cycles_[c].face = static_cast<int>(arr.faces_.size());
            arr.faces_.push_back(Face{static_cast<int>(c), {}, 0});
            positive.push_back(static_cast<int>(c));
        }
    }
    // Each component's outer cycle hangs in the innermost positive cycle of
    // another component that surrounds it.
    std::vector<int> hole_parent_face(arr.components_, Arrangement::unbounded_face);
    std::vector<int> outer_of_component(arr.components_, -1);
    for (std::size_t c = 0; c < arr.cycles_.size(); ++c) {
        auto& cyc = arr.cycles_[c];
        if (sgn(cyc.area2) > 0) continue;
        outer_of_component[cyc.component] = static_cast<int>(c);
        const RationalPoint& probe = H[cyc.start].path.front();
        int best = -1;
        for (int pc : positive) {
            const auto& pcy = arr.cycles_[pc];
            if (pcy.component == cyc.component || !pcy.box.contains(probe)) continue;
            if (best != -1 && !(pcy.area2 < arr.cycles_[best].area2)) continue;
            if (detail::winding_number(arr.cycle_ring(pc), probe) != 0) best = pc;
        }
        cyc.face = best == -1 ? Arrangement::unbounded_face : arr.cycles_[best].face;
        hole_parent_face[cyc.component] = cyc.face;
        arr.faces_[cyc.face].hole_cycles.push_back(static_cast<int>(c));
    }
    for (auto& h : H) h.face = arr.cycles_[h.cycle].face;

    // Depth: nesting level of each face below the unbounded face.
    std::vector<int> depth(arr.faces_.size(), -1);
    depth[Arrangement::unbounded_face] = 0;
    auto face_depth = [&](auto&& self, int f) -> int {
        if (depth[f] >= 0) return depth[f];
        const int comp = arr.cycles_[arr.faces_[f].outer_cycle].component;
        return depth[f] = self(self, hole_parent_face[comp]) + 1;
    };
    for (std::size_t f = 0; f < arr.faces_.size(); ++f) arr.faces_[f].depth = face_depth(face_depth, static_cast<int>(f));
    return arr;
}

/// Face containing p; OnCurveError if p lies on the curve union.
inline int locate_cell(const Arrangement& arr, const RationalPoint& p) {
    if (arr.on_curve(p)) throw OnCurveError(to_string(p) + " lies on a curve");
    int best = -1;
    for (std::size_t f = 1; f < arr.face_count(); ++f) {
        const int c = arr.faces()[f].outer_cycle;
        const auto& cyc = arr.cycles()[c];
        if (!cyc.box.contains(p)) continue;
        if (best != -1 && !(cyc.area2 < arr.cycles()[arr.faces()[best].outer_cycle].area2)) continue;
        if (detail::winding_number(arr.cycle_ring(c), p) != 0) best = static_cast<int>(f);
    }
    return best == -1 ? Arrangement::unbounded_face : best;
}

/// One directed boundary edge of a face walk. The label is the half-edge
/// id, so the two sides of an edge bordering the same face differ.
struct BoundaryEdge {
    int label = -1;
    CurveId curve = 0;
};

/// Boundary of a face walked with the interior on the right. Bounded faces
/// give their outer walk; the unbounded face gives its component walks one
/// after another.
inline std::vector<BoundaryEdge> boundary_edge_cycle(const Arrangement& arr, int face) {
    if (face < 0 || static_cast<std::size_t>(face) >= arr.face_count()) throw PreconditionError("no such face");
    std::vector<int> cycles;
    if (arr.faces()[face].outer_cycle >= 0)
        cycles.push_back(arr.faces()[face].outer_cycle);
    else
        cycles = arr.faces()[face].hole_cycles;
    std::vector<BoundaryEdge> out;
    for (int c : cycles) {
        auto hs = arr.cycle_half_edges(c);
        std::reverse(hs.begin(), hs.end());
        for (int h : hs) out.push_back({h, arr.half_edges()[h].curve});
    }
    return out;
}

/// Cells of the complement of curves i and j.
struct PairCells {
    Arrangement arrangement;
    std::vector<int> faces;
    std::size_t count = 0;
    bool closed_pair = false;
    bool within_bound = true;  // count <= m + 2
};

inline PairCells cells_of_pair(const CurveFamily& family, CurveId i, CurveId j) {
    if (i == j) throw PreconditionError("cells_of_pair needs two distinct curves");
    PairCells out;
    CurveFamily pair = family.subset({family.index_of(i), family.index_of(j)});
    out.arrangement = build_arrangement(pair);
    out.count = out.arrangement.face_count();
    out.faces.resize(out.count);
    std::iota(out.faces.begin(), out.faces.end(), 0);
    out.closed_pair = pair[0].closed() && pair[1].closed();
    out.within_bound = out.count <= static_cast<std::size_t>(family.m()) + 2;
    return out;
}

enum class EndKind { OnBoundary, FreeEnd };

inline const char* to_string(EndKind k) { return k == EndKind::OnBoundary ? "OnBoundary" : "FreeEnd"; }

struct SubArc {
    CurveId parent = 0;
    std::vector<RationalPoint> points;
    EndKind start = EndKind::FreeEnd;
    EndKind end = EndKind::FreeEnd;
    int face = -1;

    bool is_loop() const { return points.front() == points.back(); }
    int free_ends() const { return (start == EndKind::FreeEnd) + (end == EndKind::FreeEnd); }

    PolylineCurve to_curve(CurveId id) const {
        if (is_loop()) return PolylineCurve(id, std::vector<RationalPoint>(points.begin(), points.end() - 1), true);
        return PolylineCurve(id, points, false);
    }
};

/// Cuts one curve at its incidences with the given cutters and locates each
/// piece in `arr` (an arrangement of the cutters). Pieces follow the
/// curve's orientation; for an open arc the first piece starts at vertex 0.
inline std::vector<SubArc> split_curve(const PolylineCurve& curve, const std::vector<const PolylineCurve*>& cutters,
                                       const Arrangement& arr) {
    std::map<CurvePosition, RationalPoint> cuts;
    for (const auto* g : cutters)
        for (const auto& r : curve_pair_incidences(curve, *g)) cuts.emplace(r.pos_a, r.point);
    std::vector<std::pair<CurvePosition, EndKind>> pos;
    const CurvePosition first{0, Rational(0)}, last{curve.vertex_count() - 1, Rational(0)};
    if (!curve.closed()) pos.emplace_back(first, EndKind::FreeEnd);
    for (const auto& [p, pt] : cuts) pos.emplace_back(p, EndKind::OnBoundary);
    if (!curve.closed()) pos.emplace_back(last, EndKind::FreeEnd);

    std::vector<SubArc> out;
    auto emit = [&](const std::pair<CurvePosition, EndKind>& a, const std::pair<CurvePosition, EndKind>& b) {
        SubArc s;
        s.parent = curve.id();
        s.points = detail::curve_portion(curve, a.first, b.first);
        s.start = a.second;
        s.end = b.second;
        s.face = locate_cell(arr, midpoint(s.points[0], s.points[1]));
        out.push_back(std::move(s));
    };
    if (curve.closed()) {
        if (pos.empty()) {
            SubArc s;
            s.parent = curve.id();
            s.points = curve.vertices();
            s.points.push_back(curve.vertex(0));
            s.face = locate_cell(arr, midpoint(s.points[0], s.points[1]));
            out.push_back(std::move(s));
            return out;
        }
        for (std::size_t k = 0; k < pos.size(); ++k) emit(pos[k], pos[(k + 1) % pos.size()]);
    } else {
        for (std::size_t k = 0; k + 1 < pos.size(); ++k) emit(pos[k], pos[k + 1]);
    }
    return out;
}

/// Pieces of the arcs of A and B, cut by curves i and j, that lie in `cell`
/// of the pair arrangement. Order: A then B, each by id, pieces in curve
/// order.
inline std::vector<SubArc> split_arcs_by_pair(const CurveFamily& family, CurveId i, CurveId j,
                                              const std::set<CurveId>& A, const std::set<CurveId>& B, int cell,
                                              const Arrangement& pair_arrangement) {
    const auto& gi = family.by_id(i);
    const auto& gj = family.by_id(j);
    for (CurveId a : A)
        if (!is_touching_pair(family.by_id(a), gi))
            throw PreconditionError("curve " + std::to_string(a) + " of A does not touch curve " + std::to_string(i));
    for (CurveId b : B)
        if (!is_touching_pair(family.by_id(b), gj))
            throw PreconditionError("curve " + std::to_string(b) + " of B does not touch curve " + std::to_string(j));
    if (cell < 0 || static_cast<std::size_t>(cell) >= pair_arrangement.face_count())
        throw PreconditionError("cell is not a face of the pair arrangement");
    std::vector<SubArc> out;
    auto take = [&](const std::set<CurveId>& ids) {
        for (CurveId id : ids) {
            if (id == i || id == j) continue;
            for (auto& s : split_curve(family.by_id(id), {&gi, &gj}, pair_arrangement))
                if (s.face == cell) out.push_back(std::move(s));
        }
    };
    take(A);
    take(B);
    return out;
}

inline std::vector<SubArc> split_arcs_by_pair(const CurveFamily& family, CurveId i, CurveId j,
                                              const std::set<CurveId>& A, const std::set<CurveId>& B, int cell) {
    return split_arcs_by_pair(family, i, j, A, B, cell, cells_of_pair(family, i, j).arrangement);
}

/// VERTICES / HALFEDGES / FACES text dump.
inline std::string dump(const Arrangement& arr) {
    std::ostringstream os;
    os << "VERTICES " << arr.vertex_count() << "\n";
    for (std::size_t v = 0; v < arr.vertex_count(); ++v) {
        os << v << " " << format_rational(arr.vertices()[v].point.x) << " " << format_rational(arr.vertices()[v].point.y);
        for (int h : arr.vertices()[v].out) os << " " << h;
        os << "\n";
    }
    os << "HALFEDGES " << arr.half_edges().size() << "\n";
    for (std::size_t h = 0; h < arr.half_edges().size(); ++h) {
        const auto& e = arr.half_edges()[h];
        os << h << " origin=" << e.origin << " twin=" << e.twin << " next=" << e.next << " curve=" << e.curve
           << " face=" << e.face << " path";
        for (const auto& p : e.path) os << " " << format_rational(p.x) << "," << format_rational(p.y);
        os << "\n";
    }
    os << "FACES " << arr.face_count() << "\n";
    for (std::size_t f = 0; f < arr.face_count(); ++f) {
        const auto& face = arr.faces()[f];
        os << f << " depth=" << face.depth << " outer=";
        if (face.outer_cycle >= 0)
            os << arr.cycles()[face.outer_cycle].start;
        else
            os << "-";
        os << " holes=";
        for (std::size_t k = 0; k < face.hole_cycles.size(); ++k)
            os << (k ? "," : "") << arr.cycles()[face.hole_cycles[k]].start;
        os << "\n";
    }
    return os.str();
}

}  // namespace jarc
