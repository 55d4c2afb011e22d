#pragma once

// Ground-pair sampling, rich/poor arcs, circular signatures of arcs inside a
// face and the alt/hat charging check for two arcs sharing a signature.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "jarc/arrangement.hpp"
#include "jarc/curve.hpp"
#include "jarc/errors.hpp"
#include "jarc/generators.hpp"
#include "jarc/graphs.hpp"
#include "jarc/incidence.hpp"
#include "jarc/rational.hpp"

namespace jarc {

// ---------------------------------------------------------------- rich/poor

struct RichPoorReport {
    Rational threshold;  // T / (1000 n)
    std::vector<CurveId> poor_arcs;
    std::size_t T = 0;
    std::size_t T_poor = 0;
    std::size_t T_rich = 0;
    bool bound_holds = true;  // 1000 T_poor <= T
};

inline RichPoorReport rich_poor_partition(const CurveFamily& family, const std::vector<PairIncidences>& incidences) {
    const std::size_t n = family.size();
    if (n == 0) throw PreconditionError("rich/poor partition of an empty family");
    std::vector<std::size_t> load(n, 0);
    std::vector<std::pair<std::size_t, std::size_t>> touching;
    for (const auto& p : incidences)
        if (is_touching(p)) {
            ++load[p.i];
            ++load[p.j];
            touching.emplace_back(p.i, p.j);
        }
    RichPoorReport out;
    out.T = touching.size();
    if (out.T == 0) throw PreconditionError("rich/poor partition needs T >= 1");
    out.threshold = make_rational(static_cast<long>(out.T), 1000 * static_cast<long>(n));
    std::vector<bool> poor(n, false);
    for (std::size_t i = 0; i < n; ++i)
        if (Rational(static_cast<long>(load[i])) < out.threshold) {
            poor[i] = true;
            out.poor_arcs.push_back(family[i].id());
        }
    for (auto [i, j] : touching)
        if (poor[i] || poor[j]) ++out.T_poor;
    out.T_rich = out.T - out.T_poor;
    out.bound_holds = 1000 * out.T_poor <= out.T;
    return out;
}

inline RichPoorReport rich_poor_partition(const CurveFamily& family) {
    return rich_poor_partition(family, family_incidences(family));
}

// -------------------------------------------------------------- ground pair

struct GroundPairSample {
    std::uint64_t seed = 0;
    CurveId gamma1 = 0;
    CurveId gamma2 = 0;
    std::vector<CurveId> A;
    std::vector<CurveId> B;
    std::vector<CurveId> X_shared;
    int delta = 0;
    std::size_t cells = 0;
    std::size_t t_prime = 0;
    std::size_t t_star = 0;
    std::size_t t_star_in_delta = 0;
    std::size_t rich_in_t_prime = 0;  // touchings of T' between two rich arcs
};

/// Shares the touching structure and the per-pair arrangements between
/// samples of one family.
class GroundPairSampler {
public:
    explicit GroundPairSampler(const CurveFamily& family) : GroundPairSampler(family, family_incidences(family)) {}

    GroundPairSampler(const CurveFamily& family, const std::vector<PairIncidences>& incidences)
        : family_(family), touch_(family.size()) {
        if (family.size() < 2) throw PreconditionError("ground-pair sampling needs n >= 2");
        std::vector<std::size_t> load(family.size(), 0);
        for (const auto& p : incidences)
            if (is_touching(p)) {
                touch_[p.i].insert(p.j);
                touch_[p.j].insert(p.i);
                touchings_.push_back({p.i, p.j, p.records.front().point});
                ++load[p.i];
                ++load[p.j];
            }
        const Rational threshold =
            touchings_.empty() ? Rational(0)
                               : make_rational(static_cast<long>(touchings_.size()), 1000 * static_cast<long>(family.size()));
        for (auto& t : touchings_)
            t.rich = Rational(static_cast<long>(load[t.a])) >= threshold && Rational(static_cast<long>(load[t.b])) >= threshold;
    }

    std::size_t n() const { return family_.size(); }
    std::size_t pair_count() const { return n() * (n() - 1) / 2; }
    std::size_t touching_count() const { return touchings_.size(); }
    std::size_t rich_touching_count() const {
        return static_cast<std::size_t>(std::count_if(touchings_.begin(), touchings_.end(), [](const Touch& t) { return t.rich; }));
    }

    std::pair<std::size_t, std::size_t> pair_at(std::uint64_t k) const {
        std::size_t i = 0;
        while (k >= n() - 1 - i) {
            k -= n() - 1 - i;
            ++i;
        }
        return {i, i + 1 + static_cast<std::size_t>(k)};
    }

    /// Shared arcs of the pair (indices, ascending by id).
    std::vector<std::size_t> shared(std::size_t i, std::size_t j) const {
        std::vector<std::size_t> out;
        for (std::size_t x : touch_[i])
            if (x != j && touch_[j].count(x)) out.push_back(x);
        std::sort(out.begin(), out.end(), [&](std::size_t a, std::size_t b) { return family_[a].id() < family_[b].id(); });
        return out;
    }

    /// Outcome for a fixed pair and coin vector (coins[k] true sends the
    /// k-th shared arc to A).
    GroundPairSample outcome(std::size_t i, std::size_t j, const std::vector<bool>& coins) {
        const auto X = shared(i, j);
        if (coins.size() != X.size()) throw PreconditionError("one coin per shared arc");
        std::vector<char> side(n(), 0);  // 1: A', 2: B', 3: both
        for (std::size_t x : touch_[i])
            if (x != j) side[x] |= 1;
        for (std::size_t x : touch_[j])
            if (x != i) side[x] |= 2;
        std::vector<char> part(n(), 0);  // 1: A, 2: B
        for (std::size_t x = 0; x < n(); ++x)
            if (side[x] == 1 || side[x] == 2) part[x] = side[x];
        for (std::size_t k = 0; k < X.size(); ++k) part[X[k]] = coins[k] ? 1 : 2;

        const PairData& pd = pair_data(i, j);
        GroundPairSample s;
        s.gamma1 = family_[i].id();
        s.gamma2 = family_[j].id();
        for (std::size_t x = 0; x < n(); ++x) {
            if (part[x] == 1) s.A.push_back(family_[x].id());
            if (part[x] == 2) s.B.push_back(family_[x].id());
        }
        std::sort(s.A.begin(), s.A.end());
        std::sort(s.B.begin(), s.B.end());
        for (std::size_t x : X) s.X_shared.push_back(family_[x].id());
        s.cells = pd.cells;
        std::vector<std::size_t> per_cell(pd.cells, 0);
        for (std::size_t k = 0; k < touchings_.size(); ++k) {
            const Touch& t = touchings_[k];
            const bool prime = ((side[t.a] & 1) && (side[t.b] & 2)) || ((side[t.a] & 2) && (side[t.b] & 1));
            if (!prime) continue;
            ++s.t_prime;
            if (t.rich) ++s.rich_in_t_prime;
            if ((part[t.a] == 1 && part[t.b] == 2) || (part[t.a] == 2 && part[t.b] == 1)) {
                ++s.t_star;
                ++per_cell[static_cast<std::size_t>(pd.cell_of_touching[k])];
            }
        }
        s.delta = 0;
        for (std::size_t c = 1; c < per_cell.size(); ++c)
            if (per_cell[c] > per_cell[static_cast<std::size_t>(s.delta)]) s.delta = static_cast<int>(c);
        s.t_star_in_delta = per_cell[static_cast<std::size_t>(s.delta)];
        return s;
    }

    GroundPairSample sample(std::uint64_t seed) {
        PortableRng rng(seed);
        auto [i, j] = pair_at(rng.below(pair_count()));
        std::vector<bool> coins;
        for (std::size_t k = 0, c = shared(i, j).size(); k < c; ++k) coins.push_back(rng.coin());
        GroundPairSample s = outcome(i, j, coins);
        s.seed = seed;
        return s;
    }

    const Arrangement& pair_arrangement(std::size_t i, std::size_t j) { return pair_data(i, j).arr; }

private:
    struct Touch {
        std::size_t a;
        std::size_t b;
        RationalPoint point;
        bool rich = true;
    };
    struct PairData {
        Arrangement arr;
        std::size_t cells = 0;
        std::vector<int> cell_of_touching;  // -1 when the touching involves i or j
    };

    const PairData& pair_data(std::size_t i, std::size_t j) {
        auto key = std::make_pair(i, j);
        auto it = cache_.find(key);
        if (it != cache_.end()) return it->second;
        PairData pd;
        pd.arr = build_arrangement(family_.subset({i, j}));
        pd.cells = pd.arr.face_count();
        for (const Touch& t : touchings_) {
            if (t.a == i || t.a == j || t.b == i || t.b == j)
                pd.cell_of_touching.push_back(-1);
            else
                pd.cell_of_touching.push_back(locate_cell(pd.arr, t.point));
        }
        return cache_.emplace(key, std::move(pd)).first->second;
    }

    const CurveFamily& family_;
    std::vector<std::set<std::size_t>> touch_;
    std::vector<Touch> touchings_;
    std::map<std::pair<std::size_t, std::size_t>, PairData> cache_;
};

inline GroundPairSample sample_ground_pair(const CurveFamily& family, std::uint64_t seed) {
    GroundPairSampler sampler(family);
    return sampler.sample(seed);
}

/// Exact expectations over every pair and every coin assignment.
struct ExhaustiveExpectation {
    std::size_t pairs = 0;
    std::size_t outcomes = 0;
    int m = 1;
    Rational mean_t_prime;
    Rational mean_t_star;
    Rational mean_t_star_in_delta;
    bool half_bound_holds = true;   // 2 E[t*] >= E[t']
    bool cell_bound_holds = true;   // (m + 2) E[t* in delta] >= E[t*]
    bool pigeonhole_holds = true;   // every outcome: cells * t*_delta >= t*
};

inline ExhaustiveExpectation exhaustive_expectation(const CurveFamily& family, std::size_t max_n = 8) {
    if (family.size() > max_n)
        throw PreconditionError("exhaustive expectation limited to n <= " + std::to_string(max_n));
    GroundPairSampler sampler(family);
    ExhaustiveExpectation out;
    out.m = family.m();
    out.pairs = sampler.pair_count();
    Rational sum_prime, sum_star, sum_delta;
    for (std::size_t i = 0; i < sampler.n(); ++i)
        for (std::size_t j = i + 1; j < sampler.n(); ++j) {
            const std::size_t x = sampler.shared(i, j).size();
            const std::uint64_t masks = std::uint64_t{1} << x;
            long sp = 0, ss = 0, sd = 0;
            for (std::uint64_t mask = 0; mask < masks; ++mask) {
                std::vector<bool> coins(x);
                for (std::size_t k = 0; k < x; ++k) coins[k] = (mask >> k) & 1u;
                auto s = sampler.outcome(i, j, coins);
                sp += static_cast<long>(s.t_prime);
                ss += static_cast<long>(s.t_star);
                sd += static_cast<long>(s.t_star_in_delta);
                if (s.cells * s.t_star_in_delta < s.t_star) out.pigeonhole_holds = false;
                ++out.outcomes;
            }
            const long den = static_cast<long>(masks);
            sum_prime += make_rational(sp, den);
            sum_star += make_rational(ss, den);
            sum_delta += make_rational(sd, den);
        }
    const Rational pairs(static_cast<long>(out.pairs));
    out.mean_t_prime = sum_prime / pairs;
    out.mean_t_star = sum_star / pairs;
    out.mean_t_star_in_delta = sum_delta / pairs;
    out.half_bound_holds = 2 * out.mean_t_star >= out.mean_t_prime;
    out.cell_bound_holds = (out.m + 2) * out.mean_t_star_in_delta >= out.mean_t_star;
    return out;
}

struct MonteCarloSummary {
    std::uint64_t seed = 0;
    std::size_t trials = 0;
    int m = 1;
    std::size_t n = 0;
    std::size_t T = 0;
    std::size_t T_rich = 0;
    double mean_t_prime = 0;
    double mean_t_star = 0;
    double mean_t_star_in_delta = 0;
    std::size_t min_t_star_in_delta = 0;
    std::size_t max_t_star_in_delta = 0;
    std::size_t max_cells = 0;
    /// Estimated probability that a fixed rich touching lands in T'.
    double rich_inclusion = 0;
    /// n^(-2/(3m+15)), the order of the lower bound on that probability.
    double rich_inclusion_reference = 0;
    /// mean(t*_delta) >= mean(t') / (2 (m + 2))
    bool expectation_chain_holds = true;
};

inline MonteCarloSummary monte_carlo_ground_pairs(const CurveFamily& family, std::size_t trials, std::uint64_t seed) {
    if (trials == 0) throw PreconditionError("Monte Carlo needs at least one trial");
    GroundPairSampler sampler(family);
    PortableRng master(seed);
    MonteCarloSummary out;
    out.seed = seed;
    out.trials = trials;
    out.m = family.m();
    out.n = family.size();
    out.T = sampler.touching_count();
    out.T_rich = sampler.rich_touching_count();
    std::uint64_t sp = 0, ss = 0, sd = 0, rich = 0;
    for (std::size_t k = 0; k < trials; ++k) {
        auto s = sampler.sample(master.next());
        sp += s.t_prime;
        ss += s.t_star;
        sd += s.t_star_in_delta;
        rich += s.rich_in_t_prime;
        if (k == 0 || s.t_star_in_delta < out.min_t_star_in_delta) out.min_t_star_in_delta = s.t_star_in_delta;
        out.max_t_star_in_delta = std::max(out.max_t_star_in_delta, s.t_star_in_delta);
        out.max_cells = std::max(out.max_cells, s.cells);
    }
    const double t = static_cast<double>(trials);
    out.mean_t_prime = static_cast<double>(sp) / t;
    out.mean_t_star = static_cast<double>(ss) / t;
    out.mean_t_star_in_delta = static_cast<double>(sd) / t;
    out.rich_inclusion = out.T_rich == 0 ? 0.0 : static_cast<double>(rich) / t / static_cast<double>(out.T_rich);
    out.rich_inclusion_reference = std::pow(static_cast<double>(out.n), -2.0 / (3.0 * out.m + 15.0));
    out.expectation_chain_holds = out.mean_t_star_in_delta * 2.0 * (out.m + 2) >= out.mean_t_prime;
    return out;
}

// ------------------------------------------------------------- lemma 8 check

struct Lemma8Report {
    std::size_t arcs = 0;
    std::size_t contact_edges = 0;
    std::size_t s = 0;
    std::size_t l_observed = 0;  // largest t with a K_{s,t}; 0 if none
    std::optional<Biclique> witness;
    std::vector<CurveId> parents;  // parent curve of each sub-arc, by vertex
};

/// Contact graph of sub-arcs. Pieces of one parent are never adjacent:
/// they can share an endpoint at a tangency with the cutting pair.
inline SimpleGraph subarc_contact_graph(const std::vector<PolylineCurve>& arcs, const std::vector<CurveId>& parents) {
    SimpleGraph g(arcs.size());
    for (auto [a, b] : candidate_curve_pairs(arcs)) {
        if (parents[a] == parents[b]) continue;
        PairScan scan = scan_pair(arcs[a], arcs[b]);
        if (!scan.problems.empty()) throw DegeneracyError(scan.problems.front().kind, scan.problems.front().message);
        if (scan.records.size() == 1 && scan.records.front().kind == IncidenceKind::Tangency) g.add_edge(a, b);
    }
    return g;
}

inline Lemma8Report lemma8_on_arcs(const std::vector<PolylineCurve>& arcs, const std::vector<CurveId>& parents, int m,
                                   std::uint64_t budget = 200'000'000) {
    if (m < 1) throw PreconditionError("m must be positive");
    Lemma8Report out;
    out.arcs = arcs.size();
    out.parents = parents;
    out.s = static_cast<std::size_t>(m) + 5;
    SimpleGraph g = subarc_contact_graph(arcs, parents);
    out.contact_edges = g.edge_count();
    for (std::size_t t = 1; t <= arcs.size(); ++t) {
        auto found = find_biclique(g, out.s, t, budget);
        if (!found) break;
        out.l_observed = t;
        out.witness = std::move(found);
    }
    return out;
}

inline Lemma8Report check_lemma8(const CurveFamily& family, const GroundPairSample& sample,
                                 std::uint64_t budget = 200'000'000) {
    std::set<CurveId> A(sample.A.begin(), sample.A.end()), B(sample.B.begin(), sample.B.end());
    auto pieces = split_arcs_by_pair(family, sample.gamma1, sample.gamma2, A, B, sample.delta);
    std::vector<PolylineCurve> arcs;
    std::vector<CurveId> parents;
    for (std::size_t k = 0; k < pieces.size(); ++k) {
        arcs.push_back(pieces[k].to_curve(static_cast<CurveId>(k + 1)));
        parents.push_back(pieces[k].parent);
    }
    return lemma8_on_arcs(arcs, parents, family.m(), budget);
}

// --------------------------------------------------------------- signatures

/// A face of the arrangement of a set of cutting curves together with the
/// distinguished arcs Lambda_1 among them.
struct FaceContext {
    CurveFamily cutters;
    std::vector<CurveId> lambda1;
    Arrangement arr;
    int face = -1;
    std::vector<BoundaryEdge> walk;
    int m = 1;
};

inline FaceContext make_face_context(CurveFamily cutters, std::vector<CurveId> lambda1, const RationalPoint& inside) {
    FaceContext ctx;
    ctx.m = cutters.m();
    for (CurveId id : lambda1) (void)cutters.index_of(id);
    ctx.arr = build_arrangement(cutters);
    ctx.face = locate_cell(ctx.arr, inside);
    if (ctx.face == Arrangement::unbounded_face) throw PreconditionError("face must be bounded");
    if (!ctx.arr.faces()[static_cast<std::size_t>(ctx.face)].hole_cycles.empty())
        throw PreconditionError("face is not simply connected");
    ctx.walk = boundary_edge_cycle(ctx.arr, ctx.face);
    std::set<CurveId> on_boundary;
    for (const auto& e : ctx.walk) on_boundary.insert(e.curve);
    for (CurveId id : lambda1)
        if (!on_boundary.count(id)) throw PreconditionError("curve " + std::to_string(id) + " of Lambda_1 misses the face boundary");
    ctx.cutters = std::move(cutters);
    ctx.lambda1 = std::move(lambda1);
    return ctx;
}

/// Where an arc touches the face boundary.
struct TouchSite {
    CurveId mu = 0;
    int label = -1;
    std::size_t walk_index = 0;
    Rational walk_param;  // along the walk direction within the edge
    RationalPoint point;
};

struct CircularSignature {
    CurveId arc = 0;
    std::vector<int> sequence;
    std::vector<TouchSite> sites;  // aligned with sequence
};

namespace detail {

/// Strictly inside the counter-clockwise wedge from `from` to `to`.
inline bool in_ccw_wedge(const RationalPoint& from, const RationalPoint& to, const RationalPoint& d) {
    const int w = sgn(cross(from, to));
    if (w > 0) return sgn(cross(from, d)) > 0 && sgn(cross(d, to)) > 0;
    if (w < 0) return !(sgn(cross(to, d)) >= 0 && sgn(cross(d, from)) >= 0);
    return sgn(cross(from, d)) > 0;
}

/// Is the curve `lam` locally on the left of the directed path at p?
inline bool arc_left_of_path(const std::vector<RationalPoint>& path, const RationalPoint& p, const PolylineCurve& lam) {
    auto v = lam.find_vertex(p);
    if (!v || lam.is_endpoint(*v)) throw PreconditionError("touching " + to_string(p) + " is not interior to the arc");
    const RationalPoint d = lam.vertex(*lam.next_vertex(*v)) - p;
    for (std::size_t s = 0; s + 1 < path.size(); ++s) {
        if (!on_segment(path[s], path[s + 1], p)) continue;
        if (p != path[s] && p != path[s + 1]) return sgn(cross(path[s + 1] - path[s], d)) > 0;
        // p is a path vertex: the left side is the wedge from outgoing to incoming.
        std::size_t k = p == path[s] ? s : s + 1;
        RationalPoint prev, next;
        if (k > 0 && k + 1 < path.size()) {
            prev = path[k - 1];
            next = path[k + 1];
        } else if (path.front() == path.back()) {
            prev = path[path.size() - 2];
            next = path[1];
        } else {
            throw PreconditionError("touching " + to_string(p) + " sits on an arrangement vertex");
        }
        return in_ccw_wedge(next - p, prev - p, d);
    }
    throw PreconditionError(to_string(p) + " is not on the path");
}

/// Parameter of p along a path (segment index + fraction), or nullopt.
inline std::optional<Rational> path_parameter(const std::vector<RationalPoint>& path, const RationalPoint& p) {
    for (std::size_t s = 0; s + 1 < path.size(); ++s) {
        if (!on_segment(path[s], path[s + 1], p)) continue;
        const RationalPoint e = path[s + 1] - path[s];
        return Rational(static_cast<long>(s) + dot(p - path[s], e) / dot(e, e));
    }
    return std::nullopt;
}

inline TouchSite locate_touch(const FaceContext& ctx, const PolylineCurve& lam, const PolylineCurve& mu) {
    PairScan scan = scan_pair(lam, mu);
    if (!scan.problems.empty()) throw PreconditionError("arc " + std::to_string(lam.id()) + ": " + scan.problems.front().message);
    if (scan.records.size() != 1 || scan.records.front().kind != IncidenceKind::Tangency)
        throw PreconditionError("arc " + std::to_string(lam.id()) + " does not touch curve " + std::to_string(mu.id()) +
                                " exactly once");
    const RationalPoint p = scan.records.front().point;
    std::optional<TouchSite> found;
    for (std::size_t w = 0; w < ctx.walk.size(); ++w) {
        if (ctx.walk[w].curve != mu.id()) continue;
        const auto& path = ctx.arr.half_edges()[static_cast<std::size_t>(ctx.walk[w].label)].path;
        auto t = path_parameter(path, p);
        if (!t || !arc_left_of_path(path, p, lam)) continue;
        if (found) throw PreconditionError("touching " + to_string(p) + " lies on an edge visited ambiguously");
        TouchSite site;
        site.mu = mu.id();
        site.label = ctx.walk[w].label;
        site.walk_index = w;
        site.walk_param = Rational(static_cast<long>(path.size()) - 1) - *t;
        site.point = p;
        found = site;
    }
    if (!found) throw PreconditionError("touching " + to_string(p) + " of arc " + std::to_string(lam.id()) + " is not on the face boundary");
    return *found;
}

inline std::vector<int> canonical_rotation(std::vector<int> seq) {
    if (seq.empty()) return seq;
    auto it = std::min_element(seq.begin(), seq.end());
    std::rotate(seq.begin(), it, seq.end());
    return seq;
}

}  // namespace detail

/// Boundary edges touched by `lam`, one per arc of Lambda_1, in walk order
/// starting from the least label.
inline CircularSignature circular_signature(const FaceContext& ctx, const PolylineCurve& lam) {
    std::vector<TouchSite> sites;
    for (CurveId mu : ctx.lambda1) sites.push_back(detail::locate_touch(ctx, lam, ctx.cutters.by_id(mu)));
    std::sort(sites.begin(), sites.end(), [](const TouchSite& a, const TouchSite& b) {
        if (a.walk_index != b.walk_index) return a.walk_index < b.walk_index;
        return a.walk_param < b.walk_param;
    });
    auto least = std::min_element(sites.begin(), sites.end(), [](const TouchSite& a, const TouchSite& b) { return a.label < b.label; });
    std::rotate(sites.begin(), least, sites.end());
    CircularSignature sig;
    sig.arc = lam.id();
    for (const auto& s : sites) sig.sequence.push_back(s.label);
    sig.sites = std::move(sites);
    return sig;
}

inline bool same_circular(const CircularSignature& a, const CircularSignature& b) { return a.sequence == b.sequence; }

inline bool same_under_reflection(const CircularSignature& a, const CircularSignature& b) {
    std::vector<int> r(b.sequence.rbegin(), b.sequence.rend());
    return a.sequence == detail::canonical_rotation(std::move(r));
}

struct UniquenessReport {
    bool distinct = true;
    bool exploratory = false;  // |Lambda_1| != m + 5
    std::vector<CircularSignature> signatures;
    std::vector<std::pair<CurveId, CurveId>> collisions;
    std::vector<std::pair<CurveId, CurveId>> reflection_matches;
};

inline UniquenessReport verify_signature_uniqueness(const FaceContext& ctx, const std::vector<PolylineCurve>& lambdaF,
                                                    bool exploratory = false) {
    UniquenessReport out;
    out.exploratory = ctx.lambda1.size() != static_cast<std::size_t>(ctx.m) + 5;
    if (out.exploratory && !exploratory)
        throw PreconditionError("Lambda_1 has " + std::to_string(ctx.lambda1.size()) + " arcs, expected m + 5 = " +
                                std::to_string(ctx.m + 5));
    for (const auto& lam : lambdaF) out.signatures.push_back(circular_signature(ctx, lam));
    for (std::size_t a = 0; a < out.signatures.size(); ++a)
        for (std::size_t b = a + 1; b < out.signatures.size(); ++b) {
            const auto& sa = out.signatures[a];
            const auto& sb = out.signatures[b];
            if (same_circular(sa, sb)) {
                out.distinct = false;
                out.collisions.emplace_back(sa.arc, sb.arc);
            } else if (same_under_reflection(sa, sb)) {
                out.reflection_matches.emplace_back(sa.arc, sb.arc);
            }
        }
    return out;
}

// ----------------------------------------------------------------- charging

enum class EdgeClass { Alt, Hat };

inline const char* to_string(EdgeClass c) { return c == EdgeClass::Alt ? "alt" : "hat"; }

struct ChargedEdge {
    std::size_t k = 0;
    int label = -1;
    EdgeClass cls = EdgeClass::Alt;
    int first = 1;             // arc whose contact comes first on e_k
    std::size_t eta1 = 0;      // sub-arc index on the closure of arc 1
    std::size_t eta2 = 0;      // sub-arc index on the closure of arc 2
    std::optional<RationalPoint> point;
    bool real = false;
};

/// Closure of an arc: the arc plus the imaginary path back to its start.
struct ArcClosure {
    PolylineCurve curve;
    std::size_t real_segments = 0;  // segments [0, real_segments) belong to the arc
    std::vector<RationalPoint> waypoints;
};

struct ChargingReport {
    std::size_t length = 0;
    bool exploratory = false;
    bool order_consistent = true;
    std::vector<ChargedEdge> edges;
    std::size_t alt_edges = 0;
    std::size_t hat_edges = 0;
    std::size_t closure_intersections = 0;
    std::size_t arc_intersections = 0;
    std::size_t real_count = 0;
    std::size_t imaginary_count = 0;
    std::size_t uncharged = 0;
    bool injective = true;
    bool certified = false;  // all charged, injective, <= 4 imaginary, real >= length - 4
    std::vector<RationalPoint> waypoints1;
    std::vector<RationalPoint> waypoints2;
};

namespace detail {

inline bool records_clean(const PairScan& scan, const std::vector<RationalPoint>& forbidden) {
    if (!scan.problems.empty()) return false;
    for (const auto& r : scan.records)
        if (std::find(forbidden.begin(), forbidden.end(), r.point) != forbidden.end()) return false;
    return true;
}

inline std::optional<ArcClosure> try_closure(const FaceContext& ctx, const PolylineCurve& lam,
                                             const std::vector<RationalPoint>& waypoints, const PolylineCurve* other,
                                             const std::vector<RationalPoint>& forbidden) {
    std::vector<RationalPoint> pts = lam.vertices();
    pts.insert(pts.end(), waypoints.begin(), waypoints.end());
    std::vector<RationalPoint> bridge{lam.vertices().back()};
    bridge.insert(bridge.end(), waypoints.begin(), waypoints.end());
    bridge.push_back(lam.vertices().front());
    try {
        ArcClosure c{PolylineCurve(lam.id(), pts, true), lam.segment_count(), waypoints};
        PolylineCurve path(0, bridge, false);
        if (!c.curve.is_simple()) return std::nullopt;
        for (const auto& g : ctx.cutters.curves()) {
            if (!path.bbox().overlaps(g.bbox())) continue;
            PairScan scan = scan_pair(path, g);
            if (!scan.records.empty() || !scan.problems.empty()) return std::nullopt;
        }
        if (other && !records_clean(scan_pair(c.curve, *other), forbidden)) return std::nullopt;
        return c;
    } catch (const PreconditionError&) {
        return std::nullopt;
    }
}

/// Closes an open arc inside the face: straight back to its start if that
/// is clean, otherwise through one or two waypoints on refining grids.
inline ArcClosure close_arc(const FaceContext& ctx, const PolylineCurve& lam, const PolylineCurve* other,
                            const std::vector<RationalPoint>& forbidden) {
    if (lam.closed()) return {lam, lam.segment_count(), {}};
    if (auto c = try_closure(ctx, lam, {}, other, forbidden)) return *c;
    const auto& box = ctx.arr.cycles()[static_cast<std::size_t>(ctx.arr.faces()[static_cast<std::size_t>(ctx.face)].outer_cycle)].box;
    const RationalPoint a = lam.vertices().back(), b = lam.vertices().front();
    const RationalPoint mid = midpoint(a, b);
    for (int g : {8, 16, 32}) {
        std::vector<RationalPoint> grid;
        for (int i = 0; i < g; ++i)
            for (int j = 0; j < g; ++j) {
                // Odd offsets keep grid points off the curves' lattice.
                Rational fx = make_rational(2 * i + 1, 2 * g) + make_rational(1, 997);
                Rational fy = make_rational(2 * j + 1, 2 * g) + make_rational(1, 991);
                grid.emplace_back(Rational(box.xmin + (box.xmax - box.xmin) * fx), Rational(box.ymin + (box.ymax - box.ymin) * fy));
            }
        std::stable_sort(grid.begin(), grid.end(), [&](const RationalPoint& p, const RationalPoint& q) {
            return dot(p - mid, p - mid) < dot(q - mid, q - mid);
        });
        for (const auto& w : grid)
            if (auto c = try_closure(ctx, lam, {w}, other, forbidden)) return *c;
        const std::size_t near = std::min<std::size_t>(grid.size(), 24);
        for (std::size_t x = 0; x < near; ++x)
            for (std::size_t y = 0; y < near; ++y) {
                if (x == y) continue;
                if (auto c = try_closure(ctx, lam, {grid[x], grid[y]}, other, forbidden)) return *c;
            }
    }
    throw ConstructionError("cannot close arc " + std::to_string(lam.id()) + " inside the face");
}

inline Rational curve_parameter(const CurvePosition& pos) { return Rational(static_cast<long>(pos.segment) + pos.t); }

}  // namespace detail

/// Charges every edge of the shared signature of lam1 and lam2 to an
/// intersection of their closures.
inline ChargingReport alt_hat_charging(const FaceContext& ctx, const PolylineCurve& lam1, const PolylineCurve& lam2,
                                       bool exploratory = false) {
    ChargingReport out;
    out.exploratory = ctx.lambda1.size() != static_cast<std::size_t>(ctx.m) + 5;
    if (out.exploratory && !exploratory)
        throw PreconditionError("Lambda_1 has " + std::to_string(ctx.lambda1.size()) + " arcs, expected m + 5");
    const CircularSignature s1 = circular_signature(ctx, lam1), s2 = circular_signature(ctx, lam2);
    if (!same_circular(s1, s2)) throw PreconditionError("arcs do not share a circular signature");
    const std::size_t L = s1.sequence.size();
    out.length = L;
    if (L < 3) throw PreconditionError("charging needs a signature of length >= 3");

    PairScan original = scan_pair(lam1, lam2);
    if (!original.problems.empty()) throw PreconditionError("arcs are not in general position: " + original.problems.front().message);
    out.arc_intersections = original.records.size();

    std::vector<RationalPoint> forbidden{lam1.vertices().front(), lam1.vertices().back(), lam2.vertices().front(),
                                         lam2.vertices().back()};
    ArcClosure c1 = detail::close_arc(ctx, lam1, &lam2, forbidden);
    ArcClosure c2 = detail::close_arc(ctx, lam2, &c1.curve, forbidden);
    out.waypoints1 = c1.waypoints;
    out.waypoints2 = c2.waypoints;

    // Contact vertices along each closure, oriented to follow the walk.
    auto contact_params = [&](const ArcClosure& c, const CircularSignature& s) {
        std::vector<long> v;
        for (const auto& site : s.sites) v.push_back(static_cast<long>(*c.curve.find_vertex(site.point)));
        return v;
    };
    const long V1 = static_cast<long>(c1.curve.vertex_count()), V2 = static_cast<long>(c2.curve.vertex_count());
    std::vector<long> v1 = contact_params(c1, s1), v2 = contact_params(c2, s2);
    auto direction = [&](const std::vector<long>& v) {
        std::size_t up = 0, down = 0;
        for (std::size_t k = 0; k < v.size(); ++k) (v[(k + 1) % v.size()] > v[k] ? up : down)++;
        return up == v.size() - 1 ? 1 : (down == v.size() - 1 ? -1 : 0);
    };
    const int d1 = direction(v1), d2 = direction(v2);
    if (d1 == 0 || d2 == 0) {
        out.order_consistent = false;
        return out;
    }
    // Index k of the sub-arc eta_k (from contact k to contact k+1) holding
    // parameter x of a closure with V vertices.
    auto sub_arc = [](const Rational& x, const std::vector<long>& v, long V, int dir) {
        auto shift = [&](const Rational& y) {
            Rational r = dir > 0 ? Rational(y - v[0]) : Rational(v[0] - y);
            while (r < 0) r += V;
            while (r >= V) r -= V;
            return r;
        };
        const Rational sx = shift(x);
        std::size_t k = 0;
        for (std::size_t j = 1; j < v.size(); ++j)
            if (shift(Rational(v[j])) <= sx) k = j;
        return k;
    };

    PairScan cross = scan_pair(c1.curve, c2.curve);
    if (!cross.problems.empty()) throw ConstructionError("closures are not in general position");
    out.closure_intersections = cross.records.size();
    struct Meet {
        RationalPoint point;
        std::size_t k1, k2;
        Rational x1;
        bool real;
    };
    std::vector<Meet> meets;
    for (const auto& r : cross.records) {
        Meet mt{r.point, sub_arc(detail::curve_parameter(r.pos_a), v1, V1, d1), sub_arc(detail::curve_parameter(r.pos_b), v2, V2, d2),
                detail::curve_parameter(r.pos_a),
                r.pos_a.segment < c1.real_segments && r.pos_b.segment < c2.real_segments};
        meets.push_back(mt);
    }

    std::set<RationalPoint> charged;
    for (std::size_t k = 0; k < L; ++k) {
        const std::size_t kn = (k + 1) % L, kp = (k + L - 1) % L;
        ChargedEdge e;
        e.k = k;
        e.label = s1.sequence[k];
        auto first_of = [&](std::size_t idx) { return s1.sites[idx].walk_param < s2.sites[idx].walk_param ? 1 : 2; };
        e.first = first_of(k);
        e.cls = first_of(kn) == e.first ? EdgeClass::Alt : EdgeClass::Hat;
        if (e.cls == EdgeClass::Alt) {
            e.eta1 = k;
            e.eta2 = k;
            ++out.alt_edges;
        } else {
            e.eta1 = e.first == 1 ? k : kp;
            e.eta2 = e.first == 1 ? kp : k;
            ++out.hat_edges;
        }
        const Meet* pick = nullptr;
        for (const auto& mt : meets) {
            if (mt.k1 != e.eta1 || mt.k2 != e.eta2) continue;
            if (!pick || (mt.real && !pick->real) || (mt.real == pick->real && mt.x1 < pick->x1)) pick = &mt;
        }
        if (pick) {
            e.point = pick->point;
            e.real = pick->real;
            if (!charged.insert(pick->point).second) out.injective = false;
            (pick->real ? out.real_count : out.imaginary_count)++;
        } else {
            ++out.uncharged;
        }
        out.edges.push_back(e);
    }
    out.certified = out.uncharged == 0 && out.injective && out.imaginary_count <= 4 && out.real_count + 4 >= L;
    return out;
}

}  // namespace jarc
