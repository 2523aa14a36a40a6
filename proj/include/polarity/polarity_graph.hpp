#pragma once

// Polarities of projective planes and the derived polarity graph G(Pi,theta):
// vertices are the points of the plane, p ~ p' iff p is incident to theta(p').
// Loops are never stored; G°(Pi,theta) is exposed as the arithmetic overlay
// LoopedView (degree +1 at absolute vertices, diagonal 1 in spectral code).
//
// Polarity file format:
//   polarity order=<q>
//   P <point-index> -> L <line-index>
// The map must be a bijection; its inverse gives the line-to-point direction.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <istream>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "polarity/plane.hpp"

namespace polarity {

enum class PolarityKind { orthogonal, unitary, custom };

inline std::string to_string(PolarityKind k) {
    switch (k) {
        case PolarityKind::orthogonal: return "orthogonal";
        case PolarityKind::unitary: return "unitary";
        default: return "custom";
    }
}

/// An order-two incidence-preserving point<->line correspondence.
/// line_to_point is always the inverse permutation of point_to_line.
struct Polarity {
    std::vector<int> point_to_line;
    std::vector<int> line_to_point;
    PolarityKind kind = PolarityKind::custom;
};

/// The polarity of PG(2,q) fixing every label: point (x) -> line [x].
inline Polarity orthogonal_polarity(const IncidencePlane& plane) {
    if (!plane.has_coordinates())
        throw std::invalid_argument(
            "polarity: plane has no coordinate labels; supply an explicit polarity file");
    const int n = plane.size();
    Polarity theta;
    theta.kind = PolarityKind::orthogonal;
    theta.point_to_line.resize(static_cast<std::size_t>(n));
    theta.line_to_point.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        int li = plane.index_of_label(plane.labels[static_cast<std::size_t>(i)]);
        theta.point_to_line[static_cast<std::size_t>(i)] = li;
        theta.line_to_point[static_cast<std::size_t>(li)] = i;
    }
    return theta;
}

/// The unitary polarity of PG(2,q) for square q: point (x) -> line [x^s]
/// coordinate-wise with s = sqrt(q).  Normalized labels stay normalized
/// because 1^s = 1.
inline Polarity unitary_polarity(const IncidencePlane& plane) {
    if (!plane.has_coordinates())
        throw std::invalid_argument("polarity: plane has no coordinate labels");
    const int q = plane.order;
    const int s = static_cast<int>(std::lround(std::sqrt(static_cast<double>(q))));
    if (s * s != q)
        throw std::invalid_argument("polarity: q must be an even prime power");
    const int n = plane.size();
    Polarity theta;
    theta.kind = PolarityKind::unitary;
    theta.point_to_line.assign(static_cast<std::size_t>(n), -1);
    theta.line_to_point.assign(static_cast<std::size_t>(n), -1);
    for (int i = 0; i < n; ++i) {
        const Triple& x = plane.labels[static_cast<std::size_t>(i)];
        Triple image = normalize({pow(x[0], static_cast<unsigned long long>(s)),
                                  pow(x[1], static_cast<unsigned long long>(s)),
                                  pow(x[2], static_cast<unsigned long long>(s))});
        int li = plane.index_of_label(image);
        theta.point_to_line[static_cast<std::size_t>(i)] = li;
        theta.line_to_point[static_cast<std::size_t>(li)] = i;
    }
    return theta;
}

/// Check that theta is a polarity of the plane: totality, order two, and
/// p I l  iff  theta(l) I theta(p) over all point-line pairs.
inline ValidationReport validate_polarity(const IncidencePlane& plane, const Polarity& theta) {
    ValidationReport report;
    const int n = plane.size();

    bool total = static_cast<int>(theta.point_to_line.size()) == n &&
                 static_cast<int>(theta.line_to_point.size()) == n;
    if (total)
        for (int i = 0; i < n && total; ++i) {
            int l = theta.point_to_line[static_cast<std::size_t>(i)];
            if (l < 0 || l >= n) total = false;
        }
    report.checks.push_back({"total map", total, total ? "" : "map is not a total function into lines"});
    if (!total) return report;

    {
        CheckResult c{"involution", true, ""};
        std::vector<char> hit(static_cast<std::size_t>(n), 0);
        for (int i = 0; i < n && c.pass; ++i) {
            int l = theta.point_to_line[static_cast<std::size_t>(i)];
            if (hit[static_cast<std::size_t>(l)]) {
                c.pass = false;
                c.witness = "line " + std::to_string(l) + " hit twice (not a bijection)";
                break;
            }
            hit[static_cast<std::size_t>(l)] = 1;
            if (theta.line_to_point[static_cast<std::size_t>(l)] != i) {
                c.pass = false;
                c.witness = "theta(theta(P" + std::to_string(i) + ")) != P" + std::to_string(i);
            }
        }
        report.checks.push_back(std::move(c));
        if (!report.checks.back().pass) return report;
    }

    {
        // dense incidence bitmap for the n^2 pair scan
        const std::size_t words = (static_cast<std::size_t>(n) + 63) / 64;
        std::vector<std::uint64_t> inc(static_cast<std::size_t>(n) * words, 0);
        for (int p = 0; p < n; ++p)
            for (int l : plane.point_lines[static_cast<std::size_t>(p)])
                inc[static_cast<std::size_t>(p) * words + static_cast<std::size_t>(l) / 64] |=
                    1ULL << (static_cast<std::size_t>(l) % 64);
        auto incident = [&](int p, int l) {
            return (inc[static_cast<std::size_t>(p) * words + static_cast<std::size_t>(l) / 64] >>
                    (static_cast<std::size_t>(l) % 64)) & 1ULL;
        };
        CheckResult c{"incidence preservation", true, ""};
        for (int p = 0; p < n && c.pass; ++p)
            for (int l = 0; l < n; ++l) {
                bool lhs = incident(p, l) != 0;
                bool rhs = incident(theta.line_to_point[static_cast<std::size_t>(l)],
                                    theta.point_to_line[static_cast<std::size_t>(p)]) != 0;
                if (lhs != rhs) {
                    c.pass = false;
                    c.witness = "pair (P" + std::to_string(p) + ", L" + std::to_string(l) + ")";
                    break;
                }
            }
        report.checks.push_back(std::move(c));
    }
    return report;
}

inline Polarity load_polarity(std::istream& in, const IncidencePlane& plane) {
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
    if (!next_line(line)) throw ParseError(line_no + 1, 1, "missing polarity header");
    std::istringstream hs(line);
    std::string tag, t_order;
    hs >> tag >> t_order;
    if (tag != "polarity") throw ParseError(line_no, 1, "expected 'polarity' header");
    int order = detail::parse_kv(t_order, "order", line_no, 10);
    if (order != plane.order)
        throw std::invalid_argument("polarity: file is for order " + std::to_string(order) +
                                    ", plane has order " + std::to_string(plane.order));

    const int n = plane.size();
    Polarity theta;
    theta.kind = PolarityKind::custom;
    theta.point_to_line.assign(static_cast<std::size_t>(n), -1);
    theta.line_to_point.assign(static_cast<std::size_t>(n), -1);
    int seen = 0;
    while (next_line(line)) {
        std::istringstream ls(line);
        std::string ptag, arrow, ltag;
        int pi = -1, li = -1;
        ls >> ptag >> pi >> arrow >> ltag >> li;
        if (ptag != "P" || arrow != "->" || ltag != "L" || ls.fail())
            throw ParseError(line_no, 1, "expected 'P <point> -> L <line>'");
        if (pi < 0 || pi >= n) throw ParseError(line_no, 3, "point index out of range");
        if (li < 0 || li >= n) throw ParseError(line_no, 3, "line index out of range");
        if (theta.point_to_line[static_cast<std::size_t>(pi)] != -1)
            throw ParseError(line_no, 1, "point " + std::to_string(pi) + " mapped twice");
        theta.point_to_line[static_cast<std::size_t>(pi)] = li;
        ++seen;
    }
    if (seen != n) {
        ValidationReport r;
        r.checks.push_back({"total map", false,
                            "only " + std::to_string(seen) + " of " + std::to_string(n) + " points mapped"});
        throw ValidationError(std::move(r), "polarity not total");
    }
    for (int pi = 0; pi < n; ++pi) {
        int li = theta.point_to_line[static_cast<std::size_t>(pi)];
        if (theta.line_to_point[static_cast<std::size_t>(li)] != -1) {
            ValidationReport r;
            r.checks.push_back({"involution", false, "line " + std::to_string(li) + " hit twice"});
            throw ValidationError(std::move(r), "polarity not a bijection");
        }
        theta.line_to_point[static_cast<std::size_t>(li)] = pi;
    }
    ValidationReport report = validate_polarity(plane, theta);
    if (!report.pass()) throw ValidationError(std::move(report), "polarity validation failed");
    return theta;
}

inline void save_polarity(const Polarity& theta, int order, std::ostream& out) {
    out << "polarity order=" << order << '\n';
    for (std::size_t i = 0; i < theta.point_to_line.size(); ++i)
        out << "P " << i << " -> L " << theta.point_to_line[i] << '\n';
}

/// What a certificate must match to be checked against a graph.
struct GraphDescriptor {
    std::string construction = "custom";  // "ER" | "U" | "custom"
    int q = 0;
    std::vector<int> modulus;  // field modulus for ER/U, empty for custom
    std::string polarity = "custom";

    friend bool operator==(const GraphDescriptor&, const GraphDescriptor&) = default;
};

/// The polarity graph.  Simple adjacency only (loops never stored);
/// absolute[v] marks v I theta(v).  Immutable after build; search workers
/// share it concurrently.
struct PolarityGraph {
    int n = 0;
    int q = 0;
    std::vector<std::vector<int>> adj;  // sorted neighbor lists
    std::vector<bool> absolute;
    int absolute_count = 0;
    IncidencePlane plane;
    Polarity theta;
    GraphDescriptor descriptor;

    int degree(int v) const { return static_cast<int>(adj[static_cast<std::size_t>(v)].size()); }

    bool adjacent(int u, int v) const {
        const auto& row = adj[static_cast<std::size_t>(u)];
        return std::binary_search(row.begin(), row.end(), v);
    }

    long long edge_count() const {
        long long twice = 0;
        for (const auto& row : adj) twice += static_cast<long long>(row.size());
        return twice / 2;
    }
};

/// Build G(Pi,theta).  The polarity is validated first; neighbors of v are
/// the points on line theta(v) minus v itself, and v is absolute iff it lies
/// on its own polar line.
inline PolarityGraph build_graph(IncidencePlane plane, Polarity theta,
                                 GraphDescriptor descriptor = {}) {
    ValidationReport report = validate_polarity(plane, theta);
    if (!report.pass()) throw ValidationError(std::move(report), "invalid polarity");

    PolarityGraph g;
    g.n = plane.size();
    g.q = plane.order;
    g.adj.assign(static_cast<std::size_t>(g.n), {});
    g.absolute.assign(static_cast<std::size_t>(g.n), false);
    for (int v = 0; v < g.n; ++v) {
        int lv = theta.point_to_line[static_cast<std::size_t>(v)];
        for (int u : plane.line_points[static_cast<std::size_t>(lv)]) {
            if (u == v) {
                g.absolute[static_cast<std::size_t>(v)] = true;
                ++g.absolute_count;
            } else {
                g.adj[static_cast<std::size_t>(v)].push_back(u);  // stays sorted
            }
        }
    }
    if (descriptor.q == 0) descriptor.q = g.q;
    if (descriptor.polarity == "custom") descriptor.polarity = to_string(theta.kind);
    g.descriptor = std::move(descriptor);
    g.plane = std::move(plane);
    g.theta = std::move(theta);
    return g;
}

namespace detail {

inline std::pair<int, int> factor_prime_power(int q) {
    for (int p = 2; p <= q; ++p) {
        if (q % p != 0) continue;
        int k = 0, m = q;
        while (m % p == 0) {
            m /= p;
            ++k;
        }
        if (m != 1) throw std::invalid_argument("q = " + std::to_string(q) + " is not a prime power");
        return {p, k};
    }
    throw std::invalid_argument("q = " + std::to_string(q) + " is not a prime power");
}

}  // namespace detail

/// ER_q: PG(2,q) under the orthogonal polarity.
inline PolarityGraph build_er(int q) {
    auto [p, k] = detail::factor_prime_power(q);
    Field f = Field::make(p, k);
    IncidencePlane plane = build_pg2(f);
    Polarity theta = orthogonal_polarity(plane);
    GraphDescriptor d{"ER", q, f.modulus(), "orthogonal"};
    return build_graph(std::move(plane), std::move(theta), std::move(d));
}

/// U_q: PG(2,q) under the unitary (Hermitian) polarity; q must be a square.
inline PolarityGraph build_unitary(int q) {
    auto [p, k] = detail::factor_prime_power(q);
    if (k % 2 != 0) throw std::invalid_argument("polarity: q must be an even prime power");
    Field f = Field::make(p, k);
    IncidencePlane plane = build_pg2(f);
    Polarity theta = unitary_polarity(plane);
    GraphDescriptor d{"U", q, f.modulus(), "unitary"};
    return build_graph(std::move(plane), std::move(theta), std::move(d));
}

inline PolarityGraph build_custom(IncidencePlane plane, Polarity theta) {
    GraphDescriptor d{"custom", plane.order, {}, "custom"};
    return build_graph(std::move(plane), std::move(theta), std::move(d));
}

/// G°(Pi,theta): the looped view.  A loop at each absolute point adds one to
/// its degree, making the graph (q+1)-regular; e(X,Y) counts ordered pairs
/// and a loop at v contributes exactly 1 when v is in both X and Y.
class LoopedView {
  public:
    explicit LoopedView(const PolarityGraph& g) : g_(&g) {}

    int n() const { return g_->n; }
    int q() const { return g_->q; }
    bool has_loop(int v) const { return g_->absolute[static_cast<std::size_t>(v)]; }
    int degree(int v) const { return g_->degree(v) + (has_loop(v) ? 1 : 0); }
    const PolarityGraph& graph() const { return *g_; }

    bool regular(int* degree_out = nullptr) const {
        int d = degree(0);
        for (int v = 1; v < n(); ++v)
            if (degree(v) != d) return false;
        if (degree_out) *degree_out = d;
        return true;
    }

    /// e(X,Y) = |{(x,y) in X x Y : {x,y} in E(G°)}|, ordered pairs.
    long long ordered_pair_count(std::span<const int> X, std::span<const int> Y) const {
        std::vector<char> in_y(static_cast<std::size_t>(n()), 0);
        for (int y : Y) in_y[static_cast<std::size_t>(y)] = 1;
        long long e = 0;
        for (int x : X) {
            for (int u : g_->adj[static_cast<std::size_t>(x)])
                if (in_y[static_cast<std::size_t>(u)]) ++e;
            if (has_loop(x) && in_y[static_cast<std::size_t>(x)]) ++e;
        }
        return e;
    }

  private:
    const PolarityGraph* g_;
};

inline LoopedView looped_view(const PolarityGraph& g) { return LoopedView(g); }

}  // namespace polarity
