#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "jarc/curve.hpp"
#include "jarc/incidence.hpp"

namespace jarc {

enum class ViolationKind {
    TriplePoint,       // (i) three curves through one point
    Overlap,           // (ii) overlapping curve portions
    EndpointContact,   // (iii) a curve through an endpoint of another arc
    ExceedsBound,      // (iv) a pair with more than m intersection points
    SelfIntersection,  // (v) a curve that is not simple
    ForbiddenContact   // vertex on a segment interior, or coincident directions at a shared vertex
};

inline const char* to_string(ViolationKind k) {
    switch (k) {
        case ViolationKind::TriplePoint: return "triple-point";
        case ViolationKind::Overlap: return "overlap";
        case ViolationKind::EndpointContact: return "endpoint-contact";
        case ViolationKind::ExceedsBound: return "exceeds-m";
        case ViolationKind::SelfIntersection: return "self-intersection";
        case ViolationKind::ForbiddenContact: return "forbidden-contact";
    }
    return "?";
}

struct Violation {
    ViolationKind kind;
    std::vector<CurveId> curves;
    std::optional<RationalPoint> point;
    std::string message;
};

struct ValidationReport {
    bool ok = true;
    std::vector<Violation> violations;

    bool has(ViolationKind k) const {
        for (const auto& v : violations)
            if (v.kind == k) return true;
        return false;
    }
};

inline ValidationReport validate_general_position(const CurveFamily& family) {
    ValidationReport report;
    auto add = [&](Violation v) {
        report.ok = false;
        report.violations.push_back(std::move(v));
    };

    for (const auto& c : family.curves()) {
        if (!c.is_simple())
            add({ViolationKind::SelfIntersection, {c.id()}, std::nullopt,
                 "curve " + std::to_string(c.id()) + " is not simple"});
    }

    std::map<RationalPoint, std::set<CurveId>> through;
    for (auto [i, j] : candidate_curve_pairs(family.curves())) {
        const auto& a = family[i];
        const auto& b = family[j];
        PairScan scan = scan_pair(a, b, ScanMode::Strict);
        for (const auto& d : scan.problems) {
            ViolationKind kind = ViolationKind::ForbiddenContact;
            if (d.kind == DegeneracyKind::Overlap) kind = ViolationKind::Overlap;
            if (d.kind == DegeneracyKind::EndpointContact) kind = ViolationKind::EndpointContact;
            add({kind, {a.id(), b.id()}, d.point, d.message});
            through[d.point].insert({a.id(), b.id()});
        }
        for (const auto& r : scan.records) through[r.point].insert({a.id(), b.id()});
        if (scan.records.size() > static_cast<std::size_t>(family.m())) {
            add({ViolationKind::ExceedsBound, {a.id(), b.id()}, std::nullopt,
                 "curves " + std::to_string(a.id()) + " and " + std::to_string(b.id()) + " meet in " +
                     std::to_string(scan.records.size()) + " points, more than m=" + std::to_string(family.m())});
        }
    }
    for (const auto& [p, ids] : through) {
        if (ids.size() >= 3) {
            std::string list;
            for (auto id : ids) list += (list.empty() ? "" : ",") + std::to_string(id);
            add({ViolationKind::TriplePoint, std::vector<CurveId>(ids.begin(), ids.end()), p,
                 "curves " + list + " pass through " + to_string(p)});
        }
    }
    return report;
}

}  // namespace jarc
