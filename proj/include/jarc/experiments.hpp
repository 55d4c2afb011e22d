#pragma once

// Generator sweeps: one family per size, its counts against both bounds,
// its string separator and its decomposition.

#include <cmath>
#include <optional>
#include <vector>

#include "jarc/bounds.hpp"
#include "jarc/generators.hpp"
#include "jarc/separator.hpp"

namespace jarc {

struct SweepOptions {
    GeneratorKind kind = GeneratorKind::UnitCirclesGrid;
    int m = 2;
    int resolution = 16;
    std::uint64_t seed = 42;
    std::vector<int> ns;
    Rational C_const = 8;
    bool decompose = true;
};

struct SweepRow {
    BoundCheckRow bound;
    std::size_t sep_size = 0;
    std::size_t largest_component = 0;
    double sep_over_sqrt_x = 0;
    bool decomposed = false;  // false when T < n
    std::size_t pieces = 0;
    bool pieces_below_M = false;
    bool survival_ok = false;
    Rational M;
};

inline SweepRow sweep_row(const CurveFamily& family, const Rational& C_const, bool decompose = true) {
    auto inc = family_incidences(family);
    auto st = family_stats(family, inc);
    SweepRow row;
    row.bound = bound_row(st, family.m());
    auto sep = string_separator(family, inc);
    row.sep_size = sep.separator.size();
    row.largest_component = sep.largest_component;
    if (sep.x > 0) row.sep_over_sqrt_x = static_cast<double>(row.sep_size) / std::sqrt(static_cast<double>(sep.x));
    if (decompose && st.T >= st.n && st.n >= 1) {
        DecomposeOptions opt;
        opt.report_only = true;
        auto rep = recursive_decompose(family, C_const, opt);
        row.decomposed = true;
        row.pieces = rep.pieces.size();
        row.pieces_below_M = rep.pieces_below_M && rep.pieces_independent;
        row.survival_ok = rep.survival_ok;
        row.M = rep.M;
    }
    return row;
}

inline std::vector<SweepRow> run_sweep(const SweepOptions& opt) {
    if (opt.ns.empty()) throw PreconditionError("sweep needs at least one size");
    std::vector<SweepRow> rows;
    for (int n : opt.ns) {
        GeneratorSpec spec;
        spec.kind = opt.kind;
        spec.n = n;
        spec.m = opt.m;
        spec.resolution = opt.resolution;
        spec.seed = opt.seed;
        rows.push_back(sweep_row(generate(spec), opt.C_const, opt.decompose));
    }
    return rows;
}

struct SweepSummary {
    std::size_t rows = 0;
    int m = 1;
    Rational bound_exponent;
    std::optional<ExponentFit> fit;  // absent with fewer than 3 rows having T >= 1
    bool alpha_within_bound = true;  // alpha <= bound_exponent + 0.05
    bool x_at_least_t = true;
    bool thm4_stable = true;         // no drop by more than 10x between consecutive applicable rows
    double worst_thm4_drop = 1;      // smallest ratio_next / ratio_prev
};

inline SweepSummary summarize_sweep(const std::vector<SweepRow>& rows, int m) {
    SweepSummary s;
    s.rows = rows.size();
    s.m = m;
    s.bound_exponent = touching_exponent(m);
    std::vector<BoundCheckRow> fit_rows;
    for (const auto& r : rows) {
        if (r.bound.T >= 1) fit_rows.push_back(r.bound);
        if (!r.bound.x_at_least_t) s.x_at_least_t = false;
    }
    if (fit_rows.size() >= 3) {
        s.fit = fit_exponent(fit_rows);
        s.alpha_within_bound = s.fit->alpha <= s.bound_exponent.get_d() + 0.05;
    }
    const BoundCheckRow* prev = nullptr;
    for (const auto& r : rows) {
        if (!r.bound.thm4_applicable) continue;
        if (!std::isfinite(r.bound.thm4_ratio) || !(r.bound.thm4_ratio > 0)) s.thm4_stable = false;
        if (prev) {
            const double drop = r.bound.thm4_ratio / prev->thm4_ratio;
            s.worst_thm4_drop = std::min(s.worst_thm4_drop, drop);
            if (drop < 0.1) s.thm4_stable = false;
        }
        prev = &r.bound;
    }
    return s;
}

}  // namespace jarc
