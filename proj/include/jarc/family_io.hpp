#pragma once

// Line-based family file:
//
//   family m=<int>
//   curve id=<int> closed=<0|1> nv=<int>
//   <x> <y>            (nv lines; each coordinate <num> or <num>/<den>)
//
// Lines starting with '#' are comments. Writers emit reduced fractions and
// omit a denominator of 1, so write(read(write(f))) is byte-identical.

#include <cstddef>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "jarc/curve.hpp"
#include "jarc/errors.hpp"
#include "jarc/rational.hpp"

namespace jarc {

namespace detail {

inline bool parse_int_field(std::string_view token, std::string_view key, long& out) {
    if (token.size() <= key.size() + 1 || token.substr(0, key.size()) != key || token[key.size()] != '=') return false;
    std::string_view v = token.substr(key.size() + 1);
    bool neg = false;
    if (!v.empty() && v.front() == '-') {
        neg = true;
        v.remove_prefix(1);
    }
    if (v.empty() || v.size() > 18) return false;
    long acc = 0;
    for (char c : v) {
        if (c < '0' || c > '9') return false;
        acc = acc * 10 + (c - '0');
    }
    out = neg ? -acc : acc;
    return true;
}

inline std::vector<std::string_view> split_spaces(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t pos = 0;
    while (pos <= line.size()) {
        std::size_t next = line.find(' ', pos);
        if (next == std::string_view::npos) next = line.size();
        out.push_back(line.substr(pos, next - pos));
        pos = next + 1;
    }
    return out;
}

}  // namespace detail

inline CurveFamily parse_family(std::string_view text) {
    struct Line {
        std::string_view body;
        std::size_t number;
        std::size_t offset;
    };
    std::vector<Line> lines;
    {
        std::size_t pos = 0, number = 1;
        while (pos < text.size()) {
            std::size_t end = text.find('\n', pos);
            if (end == std::string_view::npos) end = text.size();
            std::string_view body = text.substr(pos, end - pos);
            if (!body.empty() && body.front() != '#') lines.push_back({body, number, pos});
            pos = end + 1;
            ++number;
        }
    }
    std::size_t cursor = 0;
    auto fail = [](const Line& l, const std::string& msg) -> ParseError { return ParseError(l.number, l.offset, msg); };
    if (lines.empty()) throw ParseError(1, 0, "empty family file");

    long m = 0;
    {
        const Line& l = lines[cursor++];
        auto tok = detail::split_spaces(l.body);
        if (tok.size() != 2 || tok[0] != "family" || !detail::parse_int_field(tok[1], "m", m) || m < 1)
            throw fail(l, "expected 'family m=<positive int>'");
    }

    std::vector<PolylineCurve> curves;
    while (cursor < lines.size()) {
        const Line& header = lines[cursor++];
        auto tok = detail::split_spaces(header.body);
        long id = 0, closed = 0, nv = 0;
        if (tok.size() != 4 || tok[0] != "curve" || !detail::parse_int_field(tok[1], "id", id) ||
            !detail::parse_int_field(tok[2], "closed", closed) || !detail::parse_int_field(tok[3], "nv", nv) ||
            (closed != 0 && closed != 1) || nv < 0)
            throw fail(header, "expected 'curve id=<int> closed=<0|1> nv=<int>'");
        std::vector<RationalPoint> verts;
        verts.reserve(static_cast<std::size_t>(nv));
        for (long k = 0; k < nv; ++k) {
            if (cursor >= lines.size()) throw fail(header, "curve " + std::to_string(id) + " ends early");
            const Line& l = lines[cursor++];
            auto xy = detail::split_spaces(l.body);
            Rational x, y;
            if (xy.size() != 2) throw fail(l, "expected '<x> <y>'");
            if (!parse_rational(xy[0], x)) throw fail(l, "bad rational '" + std::string(xy[0]) + "'");
            if (!parse_rational(xy[1], y))
                throw ParseError(l.number, l.offset + xy[0].size() + 1, "bad rational '" + std::string(xy[1]) + "'");
            verts.emplace_back(std::move(x), std::move(y));
        }
        try {
            curves.emplace_back(static_cast<CurveId>(id), std::move(verts), closed == 1);
        } catch (const PreconditionError& e) {
            throw fail(header, e.what());
        }
    }
    try {
        return CurveFamily(std::move(curves), static_cast<int>(m));
    } catch (const PreconditionError& e) {
        throw ParseError(lines.front().number, lines.front().offset, e.what());
    }
}

inline std::string format_family(const CurveFamily& family) {
    std::string out = "family m=" + std::to_string(family.m()) + "\n";
    for (const auto& c : family.curves()) {
        out += "curve id=" + std::to_string(c.id()) + " closed=" + (c.closed() ? "1" : "0") +
               " nv=" + std::to_string(c.vertex_count()) + "\n";
        for (const auto& p : c.vertices()) out += format_rational(p.x) + " " + format_rational(p.y) + "\n";
    }
    return out;
}

inline CurveFamily read_family_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_family(ss.str());
}

inline void write_family_file(const std::string& path, const CurveFamily& family) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path);
    out << format_family(family);
}

}  // namespace jarc
