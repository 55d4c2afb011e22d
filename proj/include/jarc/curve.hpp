#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "jarc/errors.hpp"
#include "jarc/rational.hpp"

namespace jarc {

using CurveId = int;

struct BoundingBox {
    Rational xmin, ymin, xmax, ymax;

    bool overlaps(const BoundingBox& o) const {
        return !(xmax < o.xmin || o.xmax < xmin || ymax < o.ymin || o.ymax < ymin);
    }
    bool contains(const RationalPoint& p) const {
        return xmin <= p.x && p.x <= xmax && ymin <= p.y && p.y <= ymax;
    }
};

/// A Jordan arc (open) or Jordan curve (closed) as a polyline with exact
/// vertices. For closed curves the closing segment from the last vertex back
/// to the first is implicit.
///
/// Construction enforces the structural invariants: vertex counts, no
/// zero-length segments, no reversal spikes (a vertex where the polyline
/// doubles back on itself). Straight-through vertices are kept because
/// tangency points must be polyline vertices of both curves. Simplicity is
/// a global property and is checked by `is_simple()`.
class PolylineCurve {
public:
    PolylineCurve(CurveId id, std::vector<RationalPoint> vertices, bool closed)
        : id_(id), vertices_(std::move(vertices)), closed_(closed) {
        const std::size_t k = vertices_.size();
        if (closed_ && k < 3) throw PreconditionError("closed curve " + std::to_string(id_) + " needs >= 3 vertices");
        if (!closed_ && k < 2) throw PreconditionError("open arc " + std::to_string(id_) + " needs >= 2 vertices");
        for (std::size_t s = 0; s < segment_count(); ++s) {
            if (segment_start(s) == segment_end(s))
                throw PreconditionError("curve " + std::to_string(id_) + " has a zero-length segment at vertex " +
                                        std::to_string(s));
        }
        for (std::size_t v = 0; v < k; ++v) {
            if (!closed_ && (v == 0 || v + 1 == k)) continue;
            const auto& prev = vertices_[(v + k - 1) % k];
            const auto& cur = vertices_[v];
            const auto& next = vertices_[(v + 1) % k];
            if (exact_orientation(prev, cur, next) == Orientation::Collinear && sgn(dot(prev - cur, next - cur)) > 0)
                throw PreconditionError("curve " + std::to_string(id_) + " doubles back at vertex " + std::to_string(v));
        }
        box_ = {vertices_[0].x, vertices_[0].y, vertices_[0].x, vertices_[0].y};
        for (const auto& p : vertices_) {
            if (p.x < box_.xmin) box_.xmin = p.x;
            if (p.x > box_.xmax) box_.xmax = p.x;
            if (p.y < box_.ymin) box_.ymin = p.y;
            if (p.y > box_.ymax) box_.ymax = p.y;
        }
    }

    CurveId id() const { return id_; }
    bool closed() const { return closed_; }
    const std::vector<RationalPoint>& vertices() const { return vertices_; }
    std::size_t vertex_count() const { return vertices_.size(); }
    std::size_t segment_count() const { return closed_ ? vertices_.size() : vertices_.size() - 1; }
    const RationalPoint& vertex(std::size_t i) const { return vertices_[i]; }
    const RationalPoint& segment_start(std::size_t s) const { return vertices_[s]; }
    const RationalPoint& segment_end(std::size_t s) const { return vertices_[(s + 1) % vertices_.size()]; }
    const BoundingBox& bbox() const { return box_; }

    bool is_endpoint(std::size_t v) const { return !closed_ && (v == 0 || v + 1 == vertices_.size()); }

    /// Vertex indices adjacent to vertex v along the curve.
    std::optional<std::size_t> prev_vertex(std::size_t v) const {
        if (v > 0) return v - 1;
        if (closed_) return vertices_.size() - 1;
        return std::nullopt;
    }
    std::optional<std::size_t> next_vertex(std::size_t v) const {
        if (v + 1 < vertices_.size()) return v + 1;
        if (closed_) return 0;
        return std::nullopt;
    }

    std::optional<std::size_t> find_vertex(const RationalPoint& p) const {
        for (std::size_t i = 0; i < vertices_.size(); ++i)
            if (vertices_[i] == p) return i;
        return std::nullopt;
    }

    bool is_simple() const;

    friend bool operator==(const PolylineCurve& a, const PolylineCurve& b) {
        return a.id_ == b.id_ && a.closed_ == b.closed_ && a.vertices_ == b.vertices_;
    }

private:
    CurveId id_;
    std::vector<RationalPoint> vertices_;
    bool closed_;
    BoundingBox box_;
};

/// Collection of curves with distinct ids and a declared intersection
/// bound m. General position is not enforced here; see
/// validate_general_position().
class CurveFamily {
public:
    CurveFamily() = default;
    CurveFamily(std::vector<PolylineCurve> curves, int m) : curves_(std::move(curves)), m_(m) {
        if (m_ < 1) throw PreconditionError("declared intersection bound m must be positive");
        for (std::size_t i = 0; i < curves_.size(); ++i) {
            if (!index_.emplace(curves_[i].id(), i).second)
                throw PreconditionError("duplicate curve id " + std::to_string(curves_[i].id()));
        }
    }

    int m() const { return m_; }
    std::size_t size() const { return curves_.size(); }
    bool empty() const { return curves_.empty(); }
    const std::vector<PolylineCurve>& curves() const { return curves_; }
    const PolylineCurve& operator[](std::size_t i) const { return curves_[i]; }

    std::size_t index_of(CurveId id) const {
        auto it = index_.find(id);
        if (it == index_.end()) throw PreconditionError("unknown curve id " + std::to_string(id));
        return it->second;
    }
    bool contains(CurveId id) const { return index_.count(id) != 0; }
    const PolylineCurve& by_id(CurveId id) const { return curves_[index_of(id)]; }

    /// Sub-family of the given indices, order preserved.
    CurveFamily subset(const std::vector<std::size_t>& indices) const {
        std::vector<PolylineCurve> out;
        out.reserve(indices.size());
        for (auto i : indices) out.push_back(curves_[i]);
        return CurveFamily(std::move(out), m_);
    }

    friend bool operator==(const CurveFamily& a, const CurveFamily& b) {
        return a.m_ == b.m_ && a.curves_ == b.curves_;
    }

private:
    std::vector<PolylineCurve> curves_;
    int m_ = 1;
    std::map<CurveId, std::size_t> index_;
};

}  // namespace jarc
