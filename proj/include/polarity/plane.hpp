#pragma once

// PG(2,q) as an explicit point-line incidence structure, plus a validated
// loader for arbitrary projective planes of order q (text format below).
//
// Plane file format:
//   plane order=<q> points=<n> lines=<n>
//   L <line-index>: <space-separated point indices>
// Indices are 0-based; comments start with '#'.

#include <algorithm>
#include <array>
#include <cctype>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "polarity/gf.hpp"
#include "polarity/validation.hpp"

namespace polarity {

inline constexpr int kMaxPlaneOrder = 32;

using Triple = std::array<FieldElem, 3>;

/// Scale a nonzero homogeneous triple so its leftmost nonzero coordinate is 1.
inline Triple normalize(const Triple& raw) {
    for (const auto& c : raw) {
        if (!c.is_zero()) {
            FieldElem s = c.inverse();
            return {s * raw[0], s * raw[1], s * raw[2]};
        }
    }
    throw std::invalid_argument("plane: cannot normalize the zero triple");
}

/// A normalized projective point together with its canonical id.
struct PPoint {
    Triple coords;
    int id = -1;
};

/// A point-line incidence structure of order q.  Immutable after
/// construction/validation; safe for shared concurrent reads.
///
/// For planes built by build_pg2, points and lines carry the same normalized
/// triple labels (so the orthogonal polarity is the identity on indices).
/// Loaded planes have no coordinate labels.
struct IncidencePlane {
    int order = 0;
    std::vector<std::vector<int>> line_points;  // sorted point ids per line
    std::vector<std::vector<int>> point_lines;  // sorted line ids per point
    std::vector<Triple> labels;                 // empty when loaded from file
    Field field;                                // invalid when loaded from file

    int size() const { return static_cast<int>(line_points.size()); }
    bool has_coordinates() const { return !labels.empty(); }

    bool incident(int point, int line) const {
        const auto& pl = point_lines[static_cast<std::size_t>(point)];
        return std::binary_search(pl.begin(), pl.end(), line);
    }

    /// Index of a normalized label; labels are stored in ascending order.
    int index_of_label(const Triple& t) const {
        if (!has_coordinates()) throw std::invalid_argument("plane: no coordinate labels");
        auto key = [](const Triple& x) {
            return std::array<int, 3>{x[0].rank(), x[1].rank(), x[2].rank()};
        };
        auto it = std::lower_bound(labels.begin(), labels.end(), t,
                                   [&](const Triple& a, const Triple& b) { return key(a) < key(b); });
        if (it == labels.end() || key(*it) != key(t))
            throw std::invalid_argument("plane: label not found");
        return static_cast<int>(it - labels.begin());
    }
};

/// Build PG(2,q) over the given field.  Point ids follow lexicographic order
/// of the normalized coordinate vectors; line i carries the same label as
/// point i, and line [a] passes through point (x) iff a0x0+a1x1+a2x2 = 0.
inline IncidencePlane build_pg2(const Field& field) {
    const int q = field.q();
    if (q > kMaxPlaneOrder)
        throw std::invalid_argument("plane: orders above " + std::to_string(kMaxPlaneOrder) +
                                    " are not supported");
    IncidencePlane plane;
    plane.order = q;
    plane.field = field;

    const auto elems = field.elements();  // ascending rank == coefficient-vector order
    const FieldElem zero = field.zero(), one = field.one();
    auto& labels = plane.labels;
    labels.reserve(static_cast<std::size_t>(q) * q + q + 1);
    labels.push_back({zero, zero, one});
    for (const auto& b : elems) labels.push_back({zero, one, b});
    for (const auto& a : elems)
        for (const auto& b : elems) labels.push_back({one, a, b});
    // the three families above are already in ascending lexicographic order

    const int n = static_cast<int>(labels.size());
    plane.line_points.assign(static_cast<std::size_t>(n), {});
    plane.point_lines.assign(static_cast<std::size_t>(n), {});
    for (int li = 0; li < n; ++li) {
        const Triple& a = labels[static_cast<std::size_t>(li)];
        for (int pi = 0; pi < n; ++pi) {
            const Triple& x = labels[static_cast<std::size_t>(pi)];
            FieldElem dot = a[0] * x[0] + a[1] * x[1] + a[2] * x[2];
            if (dot.is_zero()) {
                plane.line_points[static_cast<std::size_t>(li)].push_back(pi);
                plane.point_lines[static_cast<std::size_t>(pi)].push_back(li);
            }
        }
    }
    return plane;
}

/// Check the projective plane axioms, reporting a witness for each failure.
inline ValidationReport validate_plane(const IncidencePlane& plane) {
    ValidationReport report;
    const int q = plane.order;
    const int n = plane.size();
    const int expected = q * q + q + 1;

    {
        bool ok = n == expected && static_cast<int>(plane.point_lines.size()) == expected;
        report.checks.push_back({"point and line counts", ok,
                                 ok ? "" : "got " + std::to_string(plane.point_lines.size()) + " points, " +
                                           std::to_string(n) + " lines, expected " + std::to_string(expected)});
    }
    {
        CheckResult c{"uniform line size", true, ""};
        for (int l = 0; l < n && c.pass; ++l)
            if (static_cast<int>(plane.line_points[static_cast<std::size_t>(l)].size()) != q + 1) {
                c.pass = false;
                c.witness = "line " + std::to_string(l) + " has " +
                            std::to_string(plane.line_points[static_cast<std::size_t>(l)].size()) + " points";
            }
        report.checks.push_back(std::move(c));
    }
    {
        CheckResult c{"uniform point degree", true, ""};
        for (int p = 0; p < static_cast<int>(plane.point_lines.size()) && c.pass; ++p)
            if (static_cast<int>(plane.point_lines[static_cast<std::size_t>(p)].size()) != q + 1) {
                c.pass = false;
                c.witness = "point " + std::to_string(p) + " lies on " +
                            std::to_string(plane.point_lines[static_cast<std::size_t>(p)].size()) + " lines";
            }
        report.checks.push_back(std::move(c));
    }

    auto pair_check = [](const std::vector<std::vector<int>>& rows, int m, const char* what,
                         const char* objects) -> CheckResult {
        // count common rows per object pair; every pair must have exactly one
        std::vector<std::uint8_t> cnt(static_cast<std::size_t>(m) * static_cast<std::size_t>(m), 0);
        for (const auto& row : rows)
            for (std::size_t i = 0; i < row.size(); ++i) {
                if (row[i] < 0 || row[i] >= m)
                    return {what, false, std::string(objects) + " id " + std::to_string(row[i]) + " out of range"};
                for (std::size_t j = i + 1; j < row.size(); ++j) {
                    auto a = static_cast<std::size_t>(row[i]), b = static_cast<std::size_t>(row[j]);
                    auto& c = cnt[a * static_cast<std::size_t>(m) + b];
                    if (c < 255) ++c;
                }
            }
        for (int a = 0; a < m; ++a)
            for (int b = a + 1; b < m; ++b) {
                int c = cnt[static_cast<std::size_t>(a) * static_cast<std::size_t>(m) + static_cast<std::size_t>(b)];
                if (c != 1)
                    return {what, false,
                            std::string(objects) + " " + std::to_string(a) + "," + std::to_string(b) +
                                " share " + std::to_string(c)};
            }
        return {what, true, ""};
    };
    const int npts = static_cast<int>(plane.point_lines.size());
    report.checks.push_back(pair_check(plane.line_points, npts, "unique joining line", "points"));
    report.checks.push_back(pair_check(plane.point_lines, n, "unique meeting point", "lines"));
    return report;
}

namespace detail {

inline std::string strip_comment(const std::string& s) {
    auto pos = s.find('#');
    return pos == std::string::npos ? s : s.substr(0, pos);
}

inline bool blank(const std::string& s) {
    return std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); });
}

// "key=<int>" -> int, or throw ParseError
inline int parse_kv(const std::string& token, const std::string& key, int line_no, int col) {
    if (token.size() <= key.size() + 1 || token.compare(0, key.size(), key) != 0 ||
        token[key.size()] != '=')
        throw ParseError(line_no, col, "expected " + key + "=<int>, got '" + token + "'");
    try {
        return std::stoi(token.substr(key.size() + 1));
    } catch (const std::exception&) {
        throw ParseError(line_no, col, "bad integer in '" + token + "'");
    }
}

}  // namespace detail

/// Parse and validate a plane file.  Throws ParseError on syntax problems
/// (with line/column) and ValidationError when the axioms fail.
inline IncidencePlane load_plane(std::istream& in) {
    std::string raw;
    int line_no = 0;
    auto next_line = [&](std::string& out) {
        while (std::getline(in, raw)) {
            ++line_no;
            std::string s = detail::strip_comment(raw);
            if (!detail::blank(s)) {
                out = s;
                return true;
            }
        }
        return false;
    };

    std::string line;
    if (!next_line(line)) throw ParseError(line_no + 1, 1, "missing plane header");
    std::istringstream hs(line);
    std::string tag, t_order, t_points, t_lines;
    hs >> tag >> t_order >> t_points >> t_lines;
    if (tag != "plane") throw ParseError(line_no, 1, "expected 'plane' header");
    int order = detail::parse_kv(t_order, "order", line_no, 7);
    int npoints = detail::parse_kv(t_points, "points", line_no, 7);
    int nlines = detail::parse_kv(t_lines, "lines", line_no, 7);
    if (order < 2) throw ParseError(line_no, 7, "plane order must be at least 2");
    if (order > kMaxPlaneOrder)
        throw std::invalid_argument("plane: orders above " + std::to_string(kMaxPlaneOrder) +
                                    " are not supported");
    if (npoints <= 0 || nlines <= 0) throw ParseError(line_no, 7, "nonpositive point/line count");

    IncidencePlane plane;
    plane.order = order;
    plane.line_points.assign(static_cast<std::size_t>(nlines), {});
    plane.point_lines.assign(static_cast<std::size_t>(npoints), {});

    for (int li = 0; li < nlines; ++li) {
        if (!next_line(line))
            throw ParseError(line_no + 1, 1,
                             "unexpected end of file: expected " + std::to_string(nlines) +
                                 " lines, got " + std::to_string(li));
        std::istringstream ls(line);
        std::string ltag;
        int idx = -1;
        char colon = 0;
        ls >> ltag >> idx >> colon;
        if (ltag != "L" || colon != ':' || !ls)
            throw ParseError(line_no, 1, "expected 'L <index>: <points>'");
        if (idx != li)
            throw ParseError(line_no, 3,
                             "line index " + std::to_string(idx) + " out of order (expected " +
                                 std::to_string(li) + ")");
        std::vector<int>& row = plane.line_points[static_cast<std::size_t>(li)];
        int p;
        while (ls >> p) {
            if (p < 0 || p >= npoints)
                throw ParseError(line_no, 1, "point index " + std::to_string(p) + " out of range");
            row.push_back(p);
        }
        if (!ls.eof()) throw ParseError(line_no, 1, "trailing garbage after point list");
        std::sort(row.begin(), row.end());
        if (std::adjacent_find(row.begin(), row.end()) != row.end())
            throw ParseError(line_no, 1, "duplicate point in line " + std::to_string(li));
        for (int pt : row) plane.point_lines[static_cast<std::size_t>(pt)].push_back(li);
    }
    if (next_line(line)) throw ParseError(line_no, 1, "unexpected content after last line record");

    ValidationReport report = validate_plane(plane);
    if (!report.pass()) throw ValidationError(std::move(report), "plane axioms violated");
    return plane;
}

inline void save_plane(const IncidencePlane& plane, std::ostream& out) {
    out << "plane order=" << plane.order << " points=" << plane.point_lines.size()
        << " lines=" << plane.line_points.size() << '\n';
    for (std::size_t li = 0; li < plane.line_points.size(); ++li) {
        out << "L " << li << ":";
        for (int p : plane.line_points[li]) out << ' ' << p;
        out << '\n';
    }
}

}  // namespace polarity
