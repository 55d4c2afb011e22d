#pragma once

// Degree reduction, the planar graph of an arrangement, vertex and curve
// separators, and recursive decomposition of a family into independent
// pieces.

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/boyer_myrvold_planar_test.hpp>
#include <boost/graph/make_biconnected_planar.hpp>
#include <boost/graph/make_connected.hpp>
#include <boost/graph/make_maximal_planar.hpp>

#include <algorithm>
#include <cstddef>
#include <deque>
#include <map>
#include <numeric>
#include <set>
#include <vector>

#include "jarc/curve.hpp"
#include "jarc/errors.hpp"
#include "jarc/graphs.hpp"
#include "jarc/incidence.hpp"
#include "jarc/rational.hpp"

namespace jarc {

namespace detail {

/// Position along a curve as one number: segment index plus offset.
inline Rational arc_parameter(const CurvePosition& p) { return Rational(p.segment) + p.t; }

inline RationalPoint point_at_parameter(const PolylineCurve& c, const Rational& s) {
    const long V = static_cast<long>(c.vertex_count());
    mpz_class fl = s.get_num() / s.get_den();
    if (s < 0 && Rational(fl) != s) fl -= 1;  // floor for negatives
    Rational t = s - Rational(fl);
    long seg = fl.get_si();
    if (c.closed()) seg = ((seg % V) + V) % V;
    if (sgn(t) == 0) return c.vertex(static_cast<std::size_t>(seg));
    return lerp(c.segment_start(static_cast<std::size_t>(seg)), c.segment_end(static_cast<std::size_t>(seg)), t);
}

/// Portion of c between parameters lo < hi (hi may exceed the vertex
/// count on closed curves; values wrap).
inline std::vector<RationalPoint> parameter_portion(const PolylineCurve& c, const Rational& lo, const Rational& hi) {
    const long V = static_cast<long>(c.vertex_count());
    std::vector<RationalPoint> pts{point_at_parameter(c, lo)};
    mpz_class k = lo.get_num() / lo.get_den();
    if (lo < 0 && Rational(k) != lo) k -= 1;
    for (k += 1; Rational(k) < hi; k += 1) {
        long v = k.get_si();
        if (c.closed()) v = ((v % V) + V) % V;
        pts.push_back(c.vertex(static_cast<std::size_t>(v)));
    }
    pts.push_back(point_at_parameter(c, hi));
    return pts;
}

}  // namespace detail

struct DegreeReduction {
    CurveFamily family;
    std::vector<CurveId> parent;  // original id of each curve of `family`
    std::size_t d = 0;
    bool identity = false;        // d == 0, input returned unchanged
};

/// Cuts every curve into sub-curves carrying d = floor(X/n) incidences
/// each (the last piece of an open arc may carry fewer). Consecutive
/// pieces are separated by a short gap strictly between two incidences, so
/// no new contact is created.
inline DegreeReduction reduce_degree(const CurveFamily& family, const std::vector<PairIncidences>& incidences) {
    DegreeReduction out;
    std::size_t X = 0;
    for (const auto& p : incidences) X += p.records.size();
    out.d = family.empty() ? 0 : X / family.size();
    if (out.d == 0) {
        out.family = family;
        out.identity = true;
        for (const auto& c : family.curves()) out.parent.push_back(c.id());
        return out;
    }
    std::vector<std::set<Rational>> along(family.size());
    for (const auto& p : incidences)
        for (const auto& r : p.records) {
            along[p.i].insert(detail::arc_parameter(r.pos_a));
            along[p.j].insert(detail::arc_parameter(r.pos_b));
        }
    const Rational third = make_rational(1, 3);
    std::vector<PolylineCurve> pieces;
    CurveId next_id = 1;
    auto emit = [&](CurveId parent, std::vector<RationalPoint> pts, bool closed) {
        pieces.emplace_back(next_id++, std::move(pts), closed);
        out.parent.push_back(parent);
    };
    for (std::size_t c = 0; c < family.size(); ++c) {
        const auto& curve = family[c];
        std::vector<Rational> s(along[c].begin(), along[c].end());
        const std::size_t k = s.size();
        if (k <= out.d) {
            emit(curve.id(), curve.vertices(), curve.closed());
            continue;
        }
        const Rational V(static_cast<long>(curve.vertex_count()));
        // Gap after incidence g (0-based) ends one piece and starts the next.
        auto gap = [&](std::size_t g) {
            Rational a = s[g];
            Rational b = g + 1 < k ? s[g + 1] : Rational(s[0] + V);
            Rational w = b - a;
            return std::pair<Rational, Rational>(Rational(a + w * third), Rational(a + 2 * w * third));
        };
        std::vector<std::size_t> cut_after;
        for (std::size_t g = out.d - 1; g + 1 < k; g += out.d) cut_after.push_back(g);
        if (!curve.closed()) {
            Rational start(0);
            for (std::size_t g : cut_after) {
                auto [end, resume] = gap(g);
                emit(curve.id(), detail::parameter_portion(curve, start, end), false);
                start = resume;
            }
            emit(curve.id(), detail::parameter_portion(curve, start, Rational(V - 1)), false);
        } else {
            cut_after.push_back(k - 1);  // wrap gap closes the cycle
            Rational start = gap(k - 1).second - V;
            for (std::size_t g : cut_after) {
                auto [end, resume] = gap(g);
                emit(curve.id(), detail::parameter_portion(curve, start, end), false);
                start = resume;
            }
        }
    }
    out.family = CurveFamily(std::move(pieces), family.m());
    return out;
}

inline DegreeReduction reduce_degree(const CurveFamily& family) { return reduce_degree(family, family_incidences(family)); }

struct WeightedPlanarGraph {
    SimpleGraph graph;
    std::vector<Rational> weight;
    std::vector<std::vector<std::size_t>> curves;  // family indices through each vertex
    bool planar = false;

    Rational total_weight() const {
        Rational w(0);
        for (const auto& x : weight) w += x;
        return w;
    }
};

/// Vertices: one anchor per curve (vertex i for curve i) followed by the
/// incidence points. Each curve contributes the path (closed: cycle)
/// through its anchor and its incidence points in curve order; its weight
/// is split evenly over those vertices.
inline WeightedPlanarGraph arrangement_to_planar_graph(const CurveFamily& family, const std::vector<Rational>& weights,
                                                       const std::vector<PairIncidences>& incidences) {
    if (weights.size() != family.size()) throw PreconditionError("one weight per curve required");
    const std::size_t n = family.size();
    std::map<RationalPoint, std::size_t> point_id;
    std::vector<std::map<Rational, std::size_t>> along(n);
    std::size_t next = n;
    for (const auto& p : incidences)
        for (const auto& r : p.records) {
            auto [it, fresh] = point_id.emplace(r.point, next);
            if (fresh) ++next;
            along[p.i].emplace(detail::arc_parameter(r.pos_a), it->second);
            along[p.j].emplace(detail::arc_parameter(r.pos_b), it->second);
        }
    WeightedPlanarGraph out;
    out.graph = SimpleGraph(next);
    out.weight.assign(next, Rational(0));
    out.curves.resize(next);
    for (std::size_t c = 0; c < n; ++c) {
        std::vector<std::size_t> seq{c};
        for (const auto& [s, v] : along[c]) seq.push_back(v);
        for (std::size_t k = 0; k + 1 < seq.size(); ++k) out.graph.add_edge(seq[k], seq[k + 1]);
        if (family[c].closed() && seq.size() > 2) out.graph.add_edge(seq.back(), seq.front());
        Rational share = weights[c] / Rational(static_cast<long>(seq.size()));
        for (auto v : seq) {
            out.weight[v] += share;
            out.curves[v].push_back(c);
        }
    }
    out.planar = check_planarity(out.graph);
    return out;
}

inline WeightedPlanarGraph arrangement_to_planar_graph(const CurveFamily& family, const std::vector<Rational>& weights) {
    return arrangement_to_planar_graph(family, weights, family_incidences(family));
}

struct PlanarSeparation {
    std::vector<std::size_t> separator;
    std::vector<std::vector<std::size_t>> components;
    Rational total_weight;
    Rational max_component_weight;
    bool balanced = true;  // every component <= 2/3 of the total
};

namespace detail {

using TriGraph = boost::adjacency_list<boost::vecS, boost::vecS, boost::undirectedS,
                                       boost::property<boost::vertex_index_t, int>,
                                       boost::property<boost::edge_index_t, int>>;

inline void reindex_edges(TriGraph& g) {
    int k = 0;
    boost::graph_traits<TriGraph>::edge_iterator ei, ee;
    for (boost::tie(ei, ee) = boost::edges(g); ei != ee; ++ei) boost::put(boost::edge_index, g, *ei, k++);
}

/// Adjacency of a maximal planar supergraph (n >= 3).
inline std::vector<std::vector<std::size_t>> triangulate(std::size_t n,
                                                         const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
    TriGraph g(n);
    for (auto [u, v] : edges) boost::add_edge(u, v, g);
    using Embedding = std::vector<std::vector<boost::graph_traits<TriGraph>::edge_descriptor>>;
    reindex_edges(g);
    boost::make_connected(g);
    reindex_edges(g);
    Embedding emb(n);
    if (!boost::boyer_myrvold_planarity_test(boost::boyer_myrvold_params::graph = g,
                                             boost::boyer_myrvold_params::embedding = &emb[0]))
        throw PreconditionError("graph is not planar");
    boost::make_biconnected_planar(g, &emb[0]);
    reindex_edges(g);
    emb.assign(n, {});
    boost::boyer_myrvold_planarity_test(boost::boyer_myrvold_params::graph = g,
                                        boost::boyer_myrvold_params::embedding = &emb[0]);
    boost::make_maximal_planar(g, &emb[0]);
    std::vector<std::set<std::size_t>> adj(n);
    boost::graph_traits<TriGraph>::edge_iterator ei, ee;
    for (boost::tie(ei, ee) = boost::edges(g); ei != ee; ++ei) {
        auto u = boost::source(*ei, g), v = boost::target(*ei, g);
        if (u == v) continue;
        adj[u].insert(v);
        adj[v].insert(u);
    }
    std::vector<std::vector<std::size_t>> out(n);
    for (std::size_t v = 0; v < n; ++v) out[v].assign(adj[v].begin(), adj[v].end());
    return out;
}

inline std::vector<std::vector<std::size_t>> components_of(const std::vector<std::vector<std::size_t>>& adj,
                                                           const std::vector<char>& alive) {
    std::vector<std::vector<std::size_t>> out;
    std::vector<char> seen(adj.size(), 0);
    for (std::size_t s = 0; s < adj.size(); ++s) {
        if (!alive[s] || seen[s]) continue;
        std::vector<std::size_t> comp{s};
        seen[s] = 1;
        for (std::size_t k = 0; k < comp.size(); ++k)
            for (auto v : adj[comp[k]])
                if (alive[v] && !seen[v]) {
                    seen[v] = 1;
                    comp.push_back(v);
                }
        std::sort(comp.begin(), comp.end());
        out.push_back(std::move(comp));
    }
    return out;
}

struct BfsTree {
    std::vector<std::size_t> parent, depth;
    std::vector<std::vector<std::size_t>> levels;
};

inline BfsTree bfs_tree(const std::vector<std::vector<std::size_t>>& adj, std::size_t root) {
    BfsTree t;
    const std::size_t n = adj.size();
    t.parent.assign(n, n);
    t.depth.assign(n, n);
    t.depth[root] = 0;
    t.parent[root] = root;
    std::deque<std::size_t> q{root};
    while (!q.empty()) {
        auto u = q.front();
        q.pop_front();
        if (t.levels.size() <= t.depth[u]) t.levels.emplace_back();
        t.levels[t.depth[u]].push_back(u);
        for (auto v : adj[u])
            if (t.depth[v] == n) {
                t.depth[v] = t.depth[u] + 1;
                t.parent[v] = u;
                q.push_back(v);
            }
    }
    return t;
}

inline std::vector<std::size_t> fundamental_cycle(const BfsTree& t, std::size_t u, std::size_t v) {
    std::vector<std::size_t> a, b;
    while (t.depth[u] > t.depth[v]) a.push_back(u), u = t.parent[u];
    while (t.depth[v] > t.depth[u]) b.push_back(v), v = t.parent[v];
    while (u != v) {
        a.push_back(u);
        b.push_back(v);
        u = t.parent[u];
        v = t.parent[v];
    }
    a.push_back(u);
    a.insert(a.end(), b.rbegin(), b.rend());
    return a;
}

/// Best vertex set to remove from one connected vertex set, chosen among
/// BFS levels and fundamental cycles of a triangulation: balanced (every
/// remaining part <= limit) and smallest, else the one leaving the lightest
/// heaviest part.
inline std::vector<std::size_t> separate_component(const SimpleGraph& g, const std::vector<std::size_t>& members,
                                                   const std::vector<double>& w, double limit) {
    const std::size_t h = members.size();
    if (h <= 2) {
        std::size_t best = members[0];
        for (auto v : members)
            if (w[v] > w[best]) best = v;
        return {best};
    }
    std::map<std::size_t, std::size_t> local;
    for (std::size_t k = 0; k < h; ++k) local[members[k]] = k;
    std::vector<std::vector<std::size_t>> adj(h);
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    for (std::size_t k = 0; k < h; ++k)
        for (auto v : g.neighbors(members[k])) {
            auto it = local.find(v);
            if (it == local.end()) continue;
            adj[k].push_back(it->second);
            if (k < it->second) edges.emplace_back(k, it->second);
        }
    auto tri = triangulate(h, edges);

    struct Score {
        bool balanced;
        std::size_t size;
        double heaviest;
    };
    auto better = [](const Score& a, const Score& b) {
        if (a.balanced != b.balanced) return a.balanced;
        if (a.balanced) return a.size != b.size ? a.size < b.size : a.heaviest < b.heaviest;
        return a.heaviest != b.heaviest ? a.heaviest < b.heaviest : a.size < b.size;
    };
    std::vector<char> alive(h, 1);
    auto score = [&](const std::vector<std::size_t>& cand) {
        for (auto v : cand) alive[v] = 0;
        double heaviest = 0;
        for (const auto& comp : components_of(adj, alive)) {
            double s = 0;
            for (auto v : comp) s += w[members[v]];
            heaviest = std::max(heaviest, s);
        }
        for (auto v : cand) alive[v] = 1;
        return Score{heaviest <= limit, cand.size(), heaviest};
    };

    std::vector<std::size_t> best;
    Score best_score{false, h + 1, 1e300};
    auto consider = [&](std::vector<std::size_t> cand) {
        std::sort(cand.begin(), cand.end());
        cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
        Score s = score(cand);
        if (better(s, best_score)) {
            best_score = s;
            best = std::move(cand);
        }
    };

    auto g0 = bfs_tree(adj, 0);
    const std::size_t far = g0.levels.back().front();
    for (const auto& level : g0.levels) consider(level);
    for (const auto& level : bfs_tree(adj, far).levels) consider(level);
    for (auto root : {std::size_t(0), far}) {
        auto t = bfs_tree(tri, root);
        for (const auto& level : t.levels) consider(level);
        std::vector<std::pair<std::size_t, std::size_t>> non_tree;
        for (std::size_t u = 0; u < h; ++u)
            for (auto v : tri[u])
                if (u < v && t.parent[u] != v && t.parent[v] != u) non_tree.emplace_back(u, v);
        const std::size_t cap = 512;
        const std::size_t step = std::max<std::size_t>(1, non_tree.size() / cap);
        for (std::size_t k = 0; k < non_tree.size(); k += step)
            consider(fundamental_cycle(t, non_tree[k].first, non_tree[k].second));
    }
    for (auto& v : best) v = members[v];
    return best;
}

}  // namespace detail

/// Vertex separator leaving parts of at most 2/3 of the total weight.
/// Candidates are removed from the heaviest part until the bound holds.
inline PlanarSeparation planar_separator(const WeightedPlanarGraph& wg) {
    const SimpleGraph& g = wg.graph;
    const std::size_t n = g.vertex_count();
    PlanarSeparation out;
    out.total_weight = wg.total_weight();
    std::vector<double> w(n);
    for (std::size_t v = 0; v < n; ++v) w[v] = wg.weight[v].get_d();
    const double limit = out.total_weight.get_d() * 2.0 / 3.0;
    std::vector<std::vector<std::size_t>> adj(n);
    for (std::size_t v = 0; v < n; ++v) adj[v] = g.neighbors(v);
    std::vector<char> alive(n, 1);
    if (n <= 1) {
        if (n == 1) out.components = {{0}};
        out.max_component_weight = out.total_weight;
        out.balanced = n == 0;
        return out;
    }
    auto weight_of = [&](const std::vector<std::size_t>& comp) {
        Rational s(0);
        for (auto v : comp) s += wg.weight[v];
        return s;
    };
    while (true) {
        auto comps = detail::components_of(adj, alive);
        std::size_t heavy = comps.size();
        Rational heaviest(0);
        for (std::size_t k = 0; k < comps.size(); ++k) {
            Rational s = weight_of(comps[k]);
            if (heavy == comps.size() || s > heaviest) {
                heaviest = s;
                heavy = k;
            }
        }
        if (heavy == comps.size() || 3 * heaviest <= 2 * out.total_weight) {
            out.components = std::move(comps);
            out.max_component_weight = heaviest;
            break;
        }
        for (auto v : detail::separate_component(g, comps[heavy], w, limit)) {
            alive[v] = 0;
            out.separator.push_back(v);
        }
    }
    std::sort(out.separator.begin(), out.separator.end());
    out.balanced = 3 * out.max_component_weight <= 2 * out.total_weight;
    return out;
}

struct StringSeparation {
    std::vector<CurveId> separator;
    std::vector<std::vector<CurveId>> components;  // ordered by smallest id
    std::size_t x = 0;
    std::size_t vertex_separator_size = 0;
    std::size_t largest_component = 0;
};

namespace detail {

/// Connected components of the string graph restricted to `keep`
/// (family indices), as sorted id lists ordered by their smallest id.
inline std::vector<std::vector<CurveId>> string_components(const CurveFamily& family,
                                                           const std::vector<PairIncidences>& incidences,
                                                           const std::vector<char>& keep) {
    const std::size_t n = family.size();
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (const auto& p : incidences)
        if (keep[p.i] && keep[p.j]) parent[find(p.i)] = find(p.j);
    std::map<std::size_t, std::vector<CurveId>> groups;
    for (std::size_t c = 0; c < n; ++c)
        if (keep[c]) groups[find(c)].push_back(family[c].id());
    std::vector<std::vector<CurveId>> out;
    for (auto& [r, ids] : groups) {
        std::sort(ids.begin(), ids.end());
        out.push_back(std::move(ids));
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.front() < b.front(); });
    return out;
}

}  // namespace detail

/// Curve separator: the planar separator of the arrangement graph with
/// uniform curve weights, lifted to every curve through a separator vertex.
inline StringSeparation string_separator(const CurveFamily& family, const std::vector<PairIncidences>& incidences) {
    StringSeparation out;
    const std::size_t n = family.size();
    for (const auto& p : incidences) out.x += p.records.size();
    std::vector<char> keep(n, 1);
    if (out.x > 0) {
        std::vector<Rational> weights(n, make_rational(1, static_cast<long>(n)));
        auto wg = arrangement_to_planar_graph(family, weights, incidences);
        auto sep = planar_separator(wg);
        out.vertex_separator_size = sep.separator.size();
        for (auto v : sep.separator)
            for (auto c : wg.curves[v]) keep[c] = 0;
        for (std::size_t c = 0; c < n; ++c)
            if (!keep[c]) out.separator.push_back(family[c].id());
        std::sort(out.separator.begin(), out.separator.end());
    }
    out.components = detail::string_components(family, incidences, keep);
    for (const auto& comp : out.components) out.largest_component = std::max(out.largest_component, comp.size());
    return out;
}

inline StringSeparation string_separator(const CurveFamily& family) {
    return string_separator(family, family_incidences(family));
}

struct DecompositionReport {
    // Input family.
    std::size_t n = 0, T = 0, X = 0, d = 0;
    Rational C_const;
    Rational M;
    // Degree-reduced family the recursion runs on.
    DegreeReduction reduction;
    std::size_t reduced_T = 0;
    std::vector<CurveId> separator;               // ids in the reduced family
    std::vector<std::vector<CurveId>> pieces;     // ordered by smallest id
    std::vector<std::size_t> level_sizes;         // separator curves added per recursion depth
    std::map<int, std::size_t> bucket_sizes;      // separator curves per dyadic size bucket
    std::size_t touchings_surviving = 0;
    double separator_ratio = 0;                   // |S| d / T
    bool degenerate = false;
    bool pieces_below_M = true;
    bool pieces_independent = true;
    bool buckets_disjoint = true;
    bool accounting_matches = true;
    bool survival_ok = false;                     // surviving >= T/2
};

struct DecomposeOptions {
    bool report_only = false;  // M <= 1 gives a flagged report instead of DegenerateError
};

/// M = C n^2 d^3 / T^2 from the input family.
inline Rational decomposition_threshold(std::size_t n, std::size_t d, std::size_t T, const Rational& C) {
    if (T == 0) throw PreconditionError("threshold needs T >= 1");
    Rational nn(static_cast<long>(n)), dd(static_cast<long>(d)), tt(static_cast<long>(T));
    return Rational(C * nn * nn * dd * dd * dd / (tt * tt));
}

/// Reduces degree, then separates every string-graph component of size
/// >= M (and > 2) until all remaining components are pieces.
inline DecompositionReport recursive_decompose(const CurveFamily& family, const Rational& C_const,
                                               DecomposeOptions opt = {}) {
    DecompositionReport rep;
    auto incidences = family_incidences(family);
    auto st = family_stats(family, incidences);
    rep.n = st.n;
    rep.T = st.T;
    rep.X = st.X;
    rep.d = st.d;
    rep.C_const = C_const;
    if (st.n < 1 || st.T < st.n) throw PreconditionError("decomposition needs T >= n >= 1");
    rep.M = decomposition_threshold(st.n, st.d, st.T, C_const);

    std::set<RationalPoint> touching_points;
    for (const auto& p : incidences)
        if (is_touching(p)) touching_points.insert(p.records.front().point);

    rep.reduction = reduce_degree(family, incidences);
    const CurveFamily& red = rep.reduction.family;
    auto red_inc = family_incidences(red);
    rep.reduced_T = family_stats(red, red_inc).T;
    const std::size_t rn = red.size();
    std::vector<char> in_S(rn, 0);

    auto finish = [&] {
        std::vector<char> keep(rn);
        for (std::size_t c = 0; c < rn; ++c) keep[c] = !in_S[c];
        std::map<CurveId, std::size_t> piece_of;
        for (std::size_t k = 0; k < rep.pieces.size(); ++k)
            for (auto id : rep.pieces[k]) piece_of[id] = k;
        for (const auto& p : red_inc) {
            if (in_S[p.i] || in_S[p.j]) continue;
            if (piece_of.at(red[p.i].id()) != piece_of.at(red[p.j].id())) rep.pieces_independent = false;
            if (is_touching(p) && touching_points.count(p.records.front().point)) ++rep.touchings_surviving;
        }
        for (std::size_t c = 0; c < rn; ++c)
            if (in_S[c]) rep.separator.push_back(red[c].id());
        for (const auto& piece : rep.pieces)
            if (!(Rational(static_cast<long>(piece.size())) < rep.M)) rep.pieces_below_M = false;
        rep.separator_ratio = static_cast<double>(rep.separator.size()) * static_cast<double>(rep.d) /
                              static_cast<double>(rep.T);
        rep.survival_ok = 2 * rep.touchings_surviving >= rep.T;
        std::size_t by_level = 0, by_bucket = 0;
        for (auto s : rep.level_sizes) by_level += s;
        for (auto [b, s] : rep.bucket_sizes) by_bucket += s;
        rep.accounting_matches = by_level == rep.separator.size() && by_bucket == rep.separator.size();
    };

    if (rep.M <= 1) {
        if (!opt.report_only) throw DegenerateError("threshold M = " + format_rational(rep.M) + " leaves no pieces");
        rep.degenerate = true;
        rep.pieces = detail::string_components(red, red_inc, std::vector<char>(rn, 1));
        finish();
        return rep;
    }

    // Work list of (component ids, depth). Components are processed in
    // order of smallest id, which keeps the output deterministic.
    std::map<int, std::vector<std::set<CurveId>>> bucket_members;
    std::deque<std::pair<std::vector<CurveId>, std::size_t>> work;
    for (auto& comp : detail::string_components(red, red_inc, std::vector<char>(rn, 1))) work.emplace_back(comp, 0);
    while (!work.empty()) {
        auto [ids, depth] = std::move(work.front());
        work.pop_front();
        const Rational k(static_cast<long>(ids.size()));
        if (k < rep.M || ids.size() <= 2) {
            rep.pieces.push_back(ids);
            continue;
        }
        std::vector<std::size_t> idx;
        for (auto id : ids) idx.push_back(red.index_of(id));
        CurveFamily sub = red.subset(idx);
        auto sep = string_separator(sub);
        int bucket = 0;
        for (Rational bound = rep.M * make_rational(3, 2); bound <= k; bound *= make_rational(3, 2)) ++bucket;
        bucket_members[bucket].emplace_back(ids.begin(), ids.end());
        if (rep.level_sizes.size() <= depth) rep.level_sizes.resize(depth + 1, 0);
        rep.level_sizes[depth] += sep.separator.size();
        rep.bucket_sizes[bucket] += sep.separator.size();
        for (auto id : sep.separator) in_S[red.index_of(id)] = 1;
        for (auto& comp : sep.components) work.emplace_back(comp, depth + 1);
    }
    for (const auto& [b, sets] : bucket_members) {
        std::set<CurveId> seen;
        for (const auto& s : sets)
            for (auto id : s)
                if (!seen.insert(id).second) rep.buckets_disjoint = false;
    }
    std::sort(rep.pieces.begin(), rep.pieces.end(), [](const auto& a, const auto& b) { return a.front() < b.front(); });
    finish();
    return rep;
}

}  // namespace jarc
