#pragma once

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/boyer_myrvold_planar_test.hpp>
#include <boost/multiprecision/cpp_dec_float.hpp>

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "jarc/curve.hpp"
#include "jarc/errors.hpp"
#include "jarc/incidence.hpp"

namespace jarc {

/// Undirected simple graph on vertices 0..n-1. Each vertex carries an
/// integer label (the curve id when built from a family).
class SimpleGraph {
public:
    SimpleGraph() = default;
    explicit SimpleGraph(std::size_t n, std::vector<int> labels = {}) : adj_(n), labels_(std::move(labels)) {
        if (labels_.empty()) {
            labels_.resize(n);
            std::iota(labels_.begin(), labels_.end(), 0);
        }
        if (labels_.size() != n) throw PreconditionError("label count does not match vertex count");
    }

    std::size_t vertex_count() const { return adj_.size(); }
    std::size_t edge_count() const { return edges_; }
    const std::vector<int>& labels() const { return labels_; }
    const std::vector<std::size_t>& neighbors(std::size_t u) const { return adj_.at(u); }
    std::size_t degree(std::size_t u) const { return adj_.at(u).size(); }

    /// Returns false if the edge was already present.
    bool add_edge(std::size_t u, std::size_t v) {
        if (u >= adj_.size() || v >= adj_.size()) throw PreconditionError("edge endpoint out of range");
        if (u == v) throw PreconditionError("loops are not allowed");
        auto& nu = adj_[u];
        auto it = std::lower_bound(nu.begin(), nu.end(), v);
        if (it != nu.end() && *it == v) return false;
        nu.insert(it, v);
        auto& nv = adj_[v];
        nv.insert(std::lower_bound(nv.begin(), nv.end(), u), u);
        ++edges_;
        return true;
    }

    bool has_edge(std::size_t u, std::size_t v) const {
        const auto& nu = adj_.at(u);
        return std::binary_search(nu.begin(), nu.end(), v);
    }

    /// Edges (u < v) in ascending order.
    std::vector<std::pair<std::size_t, std::size_t>> edges() const {
        std::vector<std::pair<std::size_t, std::size_t>> out;
        out.reserve(edges_);
        for (std::size_t u = 0; u < adj_.size(); ++u)
            for (auto v : adj_[u])
                if (u < v) out.emplace_back(u, v);
        return out;
    }

    bool is_subgraph_of(const SimpleGraph& other) const {
        if (other.vertex_count() != vertex_count()) return false;
        for (auto [u, v] : edges())
            if (!other.has_edge(u, v)) return false;
        return true;
    }

private:
    std::vector<std::vector<std::size_t>> adj_;
    std::vector<int> labels_;
    std::size_t edges_ = 0;
};

inline std::vector<int> curve_labels(const CurveFamily& family) {
    std::vector<int> labels;
    labels.reserve(family.size());
    for (const auto& c : family.curves()) labels.push_back(c.id());
    return labels;
}

inline bool is_touching(const PairIncidences& p) {
    return p.records.size() == 1 && p.records.front().kind == IncidenceKind::Tangency;
}

inline SimpleGraph build_intersection_graph(const CurveFamily& family, const std::vector<PairIncidences>& incidences) {
    SimpleGraph g(family.size(), curve_labels(family));
    for (const auto& p : incidences)
        if (!p.records.empty()) g.add_edge(p.i, p.j);
    return g;
}

inline SimpleGraph build_intersection_graph(const CurveFamily& family) {
    return build_intersection_graph(family, family_incidences(family));
}

inline SimpleGraph build_contact_graph(const CurveFamily& family, const std::vector<PairIncidences>& incidences) {
    SimpleGraph g(family.size(), curve_labels(family));
    for (const auto& p : incidences)
        if (is_touching(p)) g.add_edge(p.i, p.j);
    return g;
}

inline SimpleGraph build_contact_graph(const CurveFamily& family) {
    return build_contact_graph(family, family_incidences(family));
}

struct FamilyStats {
    std::size_t n = 0;
    std::size_t T = 0;  // touching pairs
    std::size_t X = 0;  // intersection points
    std::size_t d = 0;  // floor(X / n)
};

inline FamilyStats family_stats(const CurveFamily& family, const std::vector<PairIncidences>& incidences) {
    FamilyStats s;
    s.n = family.size();
    for (const auto& p : incidences) {
        s.X += p.records.size();
        if (is_touching(p)) ++s.T;
    }
    s.d = s.n == 0 ? 0 : s.X / s.n;
    return s;
}

inline FamilyStats family_stats(const CurveFamily& family) { return family_stats(family, family_incidences(family)); }

struct Biclique {
    std::vector<std::size_t> left;   // s vertices
    std::vector<std::size_t> right;  // t vertices
};

inline std::uint64_t binomial_saturating(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    long double acc = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        acc = acc * static_cast<long double>(n - k + i) / static_cast<long double>(i);
        if (acc > 1.8e19L) return UINT64_MAX;
    }
    return static_cast<std::uint64_t>(acc + 0.5L);
}

/// Lexicographically first K_{s,t}: the smallest s-subset (as a sorted index
/// list) with at least t common neighbours, paired with its t smallest
/// common neighbours. Only vertices of degree >= t can be on the s-side; the
/// search refuses to start when C(#such vertices, s) exceeds the budget.
inline std::optional<Biclique> find_biclique(const SimpleGraph& g, std::size_t s, std::size_t t,
                                             std::uint64_t budget = 200'000'000) {
    if (s == 0 || t == 0) throw PreconditionError("biclique sides must be positive");
    std::vector<std::size_t> cand;
    for (std::size_t v = 0; v < g.vertex_count(); ++v)
        if (g.degree(v) >= t) cand.push_back(v);
    if (cand.size() < s) return std::nullopt;
    if (binomial_saturating(cand.size(), s) > budget)
        throw ResourceError("biclique search over C(" + std::to_string(cand.size()) + "," + std::to_string(s) +
                            ") subsets exceeds budget " + std::to_string(budget));

    std::vector<std::size_t> chosen;
    std::optional<Biclique> found;
    auto intersect = [](const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
        std::vector<std::size_t> out;
        std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
        return out;
    };
    // Depth-first in lexicographic order; `common` is the common
    // neighbourhood of `chosen`.
    auto dfs = [&](auto&& self, std::size_t from, const std::vector<std::size_t>& common) -> bool {
        if (chosen.size() == s) {
            found = Biclique{chosen, std::vector<std::size_t>(common.begin(), common.begin() + static_cast<long>(t))};
            return true;
        }
        for (std::size_t k = from; k + (s - chosen.size()) <= cand.size(); ++k) {
            const std::size_t v = cand[k];
            std::vector<std::size_t> next = chosen.empty() ? g.neighbors(v) : intersect(common, g.neighbors(v));
            if (next.size() < t) continue;
            chosen.push_back(v);
            if (self(self, k + 1, next)) return true;
            chosen.pop_back();
        }
        return false;
    };
    dfs(dfs, 0, {});
    return found;
}

using HighPrecision = boost::multiprecision::cpp_dec_float_50;

/// c * n^(2 - 1/s); the yardstick against which contact-graph edge counts
/// are compared. The constant's dependence on t is left to the caller.
inline HighPrecision kst_bound(std::uint64_t n, std::uint64_t s, std::uint64_t t, const Rational& c) {
    if (n < 1 || s < 1 || t < 1) throw PreconditionError("kst_bound needs n, s, t >= 1");
    if (sgn(c) <= 0) throw PreconditionError("kst_bound needs c > 0");
    HighPrecision base(n);
    HighPrecision exponent = HighPrecision(2) - HighPrecision(1) / HighPrecision(s);
    HighPrecision cc = HighPrecision(c.get_num().get_str()) / HighPrecision(c.get_den().get_str());
    return cc * boost::multiprecision::pow(base, exponent);
}

inline bool check_planarity(const SimpleGraph& g) {
    const std::size_t v = g.vertex_count();
    const std::size_t e = g.edge_count();
    if (v >= 3 && e > 3 * v - 6) return false;
    if (v < 5) return true;
    using BoostGraph = boost::adjacency_list<boost::vecS, boost::vecS, boost::undirectedS>;
    BoostGraph bg(v);
    for (auto [a, b] : g.edges()) boost::add_edge(a, b, bg);
    return boost::boyer_myrvold_planarity_test(bg);
}

/// `n=<count>` followed by one `u v` line per edge, labels ascending.
inline std::string format_edge_list(const SimpleGraph& g) {
    std::vector<std::pair<int, int>> edges;
    for (auto [u, v] : g.edges()) {
        int a = g.labels()[u], b = g.labels()[v];
        edges.emplace_back(std::min(a, b), std::max(a, b));
    }
    std::sort(edges.begin(), edges.end());
    std::string out = "n=" + std::to_string(g.vertex_count()) + "\n";
    for (auto [a, b] : edges) out += std::to_string(a) + " " + std::to_string(b) + "\n";
    return out;
}

}  // namespace jarc
