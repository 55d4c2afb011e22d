#pragma once

// JSON and CSV renderings of the analysis results. Rationals are written as
// exact strings; doubles only appear for diagnostics.

#include <cstdio>
#include <string>
#include <vector>

#include <json.hpp>

#include "jarc/bounds.hpp"
#include "jarc/experiments.hpp"
#include "jarc/salazar.hpp"
#include "jarc/separator.hpp"
#include "jarc/validate.hpp"

namespace jarc {

using Json = nlohmann::ordered_json;

inline Json to_json(const Rational& q) { return format_rational(q); }

inline Json to_json(const RationalPoint& p) { return Json::array({format_rational(p.x), format_rational(p.y)}); }

inline Json to_json(const FamilyStats& st) {
    return Json{{"n", st.n}, {"T", st.T}, {"X", st.X}, {"d", st.d}};
}

inline Json to_json(const ValidationReport& r) {
    Json v = Json::array();
    for (const auto& x : r.violations) {
        Json e{{"kind", to_string(x.kind)}, {"curves", x.curves}, {"message", x.message}};
        if (x.point) e["point"] = to_json(*x.point);
        v.push_back(std::move(e));
    }
    return Json{{"ok", r.ok}, {"violations", std::move(v)}};
}

inline Json to_json(const BoundCheckRow& r) {
    return Json{{"n", r.n},
                {"m", r.m},
                {"T", r.T},
                {"X", r.X},
                {"d", r.d},
                {"f", to_json(r.f)},
                {"thm3_ratio", r.thm3_ratio},
                {"thm4_applicable", r.thm4_applicable},
                {"thm4_ratio", r.thm4_ratio},
                {"x_at_least_t", r.x_at_least_t}};
}

inline Json to_json(const ExponentFit& f) {
    return Json{{"alpha", f.alpha}, {"intercept", f.intercept}, {"r2", f.r2}, {"points", f.points}};
}

inline Json to_json(const DecompositionReport& r) {
    Json buckets = Json::object();
    for (const auto& [k, v] : r.bucket_sizes) buckets[std::to_string(k)] = v;
    return Json{{"n", r.n},
                {"T", r.T},
                {"X", r.X},
                {"d", r.d},
                {"C_const", to_json(r.C_const)},
                {"M", to_json(r.M)},
                {"reduced_n", r.reduction.family.size()},
                {"reduced_T", r.reduced_T},
                {"separator", r.separator},
                {"separator_size", r.separator.size()},
                {"pieces", r.pieces.size()},
                {"piece_members", r.pieces},
                {"level_sizes", r.level_sizes},
                {"bucket_sizes", std::move(buckets)},
                {"touchings_surviving", r.touchings_surviving},
                {"separator_ratio", r.separator_ratio},
                {"degenerate", r.degenerate},
                {"pieces_below_M", r.pieces_below_M},
                {"pieces_independent", r.pieces_independent},
                {"buckets_disjoint", r.buckets_disjoint},
                {"accounting_matches", r.accounting_matches},
                {"survival_ok", r.survival_ok}};
}

inline Json to_json(const RichPoorReport& r) {
    return Json{{"threshold", to_json(r.threshold)},
                {"poor_arcs", r.poor_arcs},
                {"T", r.T},
                {"T_poor", r.T_poor},
                {"T_rich", r.T_rich},
                {"bound_holds", r.bound_holds}};
}

inline Json to_json(const GroundPairSample& s) {
    return Json{{"seed", s.seed},       {"gamma1", s.gamma1},   {"gamma2", s.gamma2},
                {"A", s.A},             {"B", s.B},             {"X_shared", s.X_shared},
                {"delta", s.delta},     {"cells", s.cells},     {"t_prime", s.t_prime},
                {"t_star", s.t_star},   {"t_star_in_delta", s.t_star_in_delta},
                {"rich_in_t_prime", s.rich_in_t_prime}};
}

inline Json to_json(const ExhaustiveExpectation& e) {
    return Json{{"pairs", e.pairs},
                {"outcomes", e.outcomes},
                {"m", e.m},
                {"mean_t_prime", to_json(e.mean_t_prime)},
                {"mean_t_star", to_json(e.mean_t_star)},
                {"mean_t_star_in_delta", to_json(e.mean_t_star_in_delta)},
                {"half_bound_holds", e.half_bound_holds},
                {"cell_bound_holds", e.cell_bound_holds},
                {"pigeonhole_holds", e.pigeonhole_holds}};
}

inline Json to_json(const MonteCarloSummary& s) {
    return Json{{"seed", s.seed},
                {"trials", s.trials},
                {"m", s.m},
                {"n", s.n},
                {"T", s.T},
                {"T_rich", s.T_rich},
                {"mean_t_prime", s.mean_t_prime},
                {"mean_t_star", s.mean_t_star},
                {"mean_t_star_in_delta", s.mean_t_star_in_delta},
                {"min_t_star_in_delta", s.min_t_star_in_delta},
                {"max_t_star_in_delta", s.max_t_star_in_delta},
                {"max_cells", s.max_cells},
                {"rich_inclusion", s.rich_inclusion},
                {"rich_inclusion_reference", s.rich_inclusion_reference},
                {"expectation_chain_holds", s.expectation_chain_holds}};
}

inline Json to_json(const Lemma8Report& r) {
    Json out{{"arcs", r.arcs}, {"contact_edges", r.contact_edges}, {"s", r.s}, {"l_observed", r.l_observed}};
    if (r.witness) out["witness"] = Json{{"left", r.witness->left}, {"right", r.witness->right}};
    return out;
}

inline Json to_json(const CircularSignature& s) {
    Json sites = Json::array();
    for (const auto& t : s.sites)
        sites.push_back(Json{{"mu", t.mu}, {"label", t.label}, {"walk_index", t.walk_index},
                             {"walk_param", to_json(t.walk_param)}, {"point", to_json(t.point)}});
    return Json{{"arc", s.arc}, {"sequence", s.sequence}, {"sites", std::move(sites)}};
}

inline Json to_json(const UniquenessReport& r) {
    Json sigs = Json::array();
    for (const auto& s : r.signatures) sigs.push_back(to_json(s));
    return Json{{"distinct", r.distinct},
                {"exploratory", r.exploratory},
                {"collisions", r.collisions},
                {"reflection_matches", r.reflection_matches},
                {"signatures", std::move(sigs)}};
}

inline Json to_json(const ChargingReport& r) {
    Json edges = Json::array();
    for (const auto& e : r.edges) {
        Json j{{"k", e.k}, {"label", e.label}, {"class", to_string(e.cls)}, {"first", e.first},
               {"eta1", e.eta1}, {"eta2", e.eta2}, {"real", e.real}};
        j["point"] = e.point ? to_json(*e.point) : Json(nullptr);
        edges.push_back(std::move(j));
    }
    Json w1 = Json::array(), w2 = Json::array();
    for (const auto& p : r.waypoints1) w1.push_back(to_json(p));
    for (const auto& p : r.waypoints2) w2.push_back(to_json(p));
    return Json{{"length", r.length},
                {"exploratory", r.exploratory},
                {"order_consistent", r.order_consistent},
                {"alt_edges", r.alt_edges},
                {"hat_edges", r.hat_edges},
                {"closure_intersections", r.closure_intersections},
                {"arc_intersections", r.arc_intersections},
                {"real_count", r.real_count},
                {"imaginary_count", r.imaginary_count},
                {"uncharged", r.uncharged},
                {"injective", r.injective},
                {"certified", r.certified},
                {"waypoints1", std::move(w1)},
                {"waypoints2", std::move(w2)},
                {"edges", std::move(edges)}};
}

inline Json to_json(const SweepRow& r) {
    Json out = to_json(r.bound);
    out["sep_size"] = r.sep_size;
    out["largest_component"] = r.largest_component;
    out["sep_over_sqrt_x"] = r.sep_over_sqrt_x;
    out["decomposed"] = r.decomposed;
    out["pieces"] = r.pieces;
    out["pieces_below_M"] = r.pieces_below_M;
    out["survival_ok"] = r.survival_ok;
    out["M"] = to_json(r.M);
    return out;
}

inline Json to_json(const SweepSummary& s) {
    Json out{{"rows", s.rows},
             {"m", s.m},
             {"bound_exponent", to_json(s.bound_exponent)},
             {"bound_exponent_value", s.bound_exponent.get_d()}};
    out["fit"] = s.fit ? to_json(*s.fit) : Json(nullptr);
    out["alpha_within_bound"] = s.alpha_within_bound;
    out["x_at_least_t"] = s.x_at_least_t;
    out["thm4_stable"] = s.thm4_stable;
    out["worst_thm4_drop"] = s.worst_thm4_drop;
    return out;
}

/// Fixed-format double so CSV files are stable across runs and platforms.
inline std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

inline std::string sweep_csv(const std::vector<SweepRow>& rows) {
    std::string out = "n,m,T,X,d,f,thm3_ratio,thm4_ratio,sep_size,pieces\n";
    for (const auto& r : rows) {
        const auto& b = r.bound;
        out += std::to_string(b.n) + "," + std::to_string(b.m) + "," + std::to_string(b.T) + "," +
               std::to_string(b.X) + "," + std::to_string(b.d) + "," + format_double(b.f.get_d()) + "," +
               format_double(b.thm3_ratio) + "," + (b.thm4_applicable ? format_double(b.thm4_ratio) : "") + "," +
               std::to_string(r.sep_size) + "," + std::to_string(r.pieces) + "\n";
    }
    return out;
}

inline std::string dump_report(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace jarc
