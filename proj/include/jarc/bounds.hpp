#pragma once

// Touching and intersection counts measured against the two power-law
// bounds, and log-log exponent fitting over size sweeps.

#include <cmath>
#include <cstddef>
#include <vector>

#include "jarc/curve.hpp"
#include "jarc/errors.hpp"
#include "jarc/graphs.hpp"
#include "jarc/rational.hpp"

namespace jarc {

/// 2 - 1/(3m + 15).
inline Rational touching_exponent(int m) {
    if (m < 1) throw PreconditionError("m must be positive");
    return Rational(2) - make_rational(1, 3L * m + 15);
}

/// 1/(9m + 45).
inline Rational crossing_exponent(int m) {
    if (m < 1) throw PreconditionError("m must be positive");
    return make_rational(1, 9L * m + 45);
}

struct BoundCheckRow {
    std::size_t n = 0;
    int m = 1;
    std::size_t T = 0;
    std::size_t X = 0;
    std::size_t d = 0;
    Rational f;                 // X / T, 0 when T = 0
    double thm3_ratio = 0;      // T / n^(2 - 1/(3m+15))
    bool thm4_applicable = false;
    double thm4_ratio = 0;      // X / (T (T/n)^(1/(9m+45))), when T >= n
    bool x_at_least_t = true;
};

inline BoundCheckRow bound_row(const FamilyStats& st, int m) {
    BoundCheckRow r;
    r.n = st.n;
    r.m = m;
    r.T = st.T;
    r.X = st.X;
    r.d = st.d;
    r.f = st.T == 0 ? Rational(0) : make_rational(static_cast<long>(st.X), static_cast<long>(st.T));
    r.x_at_least_t = st.X >= st.T;
    if (st.n > 0)
        r.thm3_ratio = static_cast<double>(st.T) / std::pow(static_cast<double>(st.n), touching_exponent(m).get_d());
    if (st.n > 0 && st.T >= st.n) {
        r.thm4_applicable = true;
        const double tn = static_cast<double>(st.T) / static_cast<double>(st.n);
        r.thm4_ratio = static_cast<double>(st.X) / (static_cast<double>(st.T) * std::pow(tn, crossing_exponent(m).get_d()));
    }
    return r;
}

inline BoundCheckRow check_thm3(const CurveFamily& family) { return bound_row(family_stats(family), family.m()); }

/// Same row; thm4_applicable is false when T < n.
inline BoundCheckRow check_thm4(const CurveFamily& family) { return bound_row(family_stats(family), family.m()); }

struct ExponentFit {
    double alpha = 0;
    double intercept = 0;
    double r2 = 0;
    std::size_t points = 0;
};

/// Least-squares line through (log x, log y).
inline ExponentFit fit_loglog(const std::vector<double>& xs, const std::vector<double>& ys) {
    if (xs.size() != ys.size()) throw PreconditionError("fit needs paired samples");
    if (xs.size() < 3) throw FitError("fit needs at least 3 points");
    const double k = static_cast<double>(xs.size());
    double sx = 0, sy = 0;
    std::vector<double> lx, ly;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (!(xs[i] > 0) || !(ys[i] > 0)) throw FitError("fit needs positive samples");
        lx.push_back(std::log(xs[i]));
        ly.push_back(std::log(ys[i]));
        sx += lx.back();
        sy += ly.back();
    }
    const double mx = sx / k, my = sy / k;
    double sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        sxx += (lx[i] - mx) * (lx[i] - mx);
        sxy += (lx[i] - mx) * (ly[i] - my);
        syy += (ly[i] - my) * (ly[i] - my);
    }
    if (sxx <= 0) throw FitError("all sizes equal; slope undefined");
    ExponentFit fit;
    fit.alpha = sxy / sxx;
    fit.intercept = my - fit.alpha * mx;
    fit.r2 = syy <= 0 ? 1.0 : (sxy * sxy) / (sxx * syy);
    fit.points = lx.size();
    return fit;
}

/// Slope of log T against log n.
inline ExponentFit fit_exponent(const std::vector<BoundCheckRow>& rows) {
    std::vector<double> xs, ys;
    for (const auto& r : rows) {
        if (r.T < 1) throw PreconditionError("fit rows need T >= 1");
        xs.push_back(static_cast<double>(r.n));
        ys.push_back(static_cast<double>(r.T));
    }
    return fit_loglog(xs, ys);
}

}  // namespace jarc
