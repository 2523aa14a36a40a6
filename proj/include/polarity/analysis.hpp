#pragma once

// Structural analysis of polarity graphs: triangle enumeration, the triangle
// hypergraph H(Pi,theta), the Parsons partition, C4-freeness, diameter,
// Expander Mixing Lemma counting, and the induced-triangle-free size bound.

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <optional>
#include <queue>
#include <span>
#include <unordered_map>
#include <vector>

#include "polarity/polarity_graph.hpp"

namespace polarity {

namespace detail {

/// Flat n*n adjacency bitmap for O(1) edge tests.
class AdjacencyBits {
  public:
    explicit AdjacencyBits(const std::vector<std::vector<int>>& adj)
        : n_(static_cast<int>(adj.size())), words_((static_cast<std::size_t>(n_) + 63) / 64),
          bits_(static_cast<std::size_t>(n_) * words_, 0) {
        for (int u = 0; u < n_; ++u)
            for (int v : adj[static_cast<std::size_t>(u)])
                bits_[static_cast<std::size_t>(u) * words_ + static_cast<std::size_t>(v) / 64] |=
                    1ULL << (static_cast<std::size_t>(v) % 64);
    }

    bool test(int u, int v) const {
        return (bits_[static_cast<std::size_t>(u) * words_ + static_cast<std::size_t>(v) / 64] >>
                (static_cast<std::size_t>(v) % 64)) & 1ULL;
    }

    const std::uint64_t* row(int u) const { return bits_.data() + static_cast<std::size_t>(u) * words_; }
    std::size_t words() const { return words_; }

  private:
    int n_;
    std::size_t words_;
    std::vector<std::uint64_t> bits_;
};

}  // namespace detail

/// All triangles as sorted triples in lexicographic order, each listed once.
/// For each vertex v the edges inside N(v) are scanned (N(v) induces at most
/// a matching); the multiplicity of 3 is divided out by sorting.
inline std::vector<std::array<int, 3>> triangles(const std::vector<std::vector<int>>& adj) {
    detail::AdjacencyBits bits(adj);
    std::vector<std::array<int, 3>> found;
    const int n = static_cast<int>(adj.size());
    for (int v = 0; v < n; ++v) {
        const auto& nb = adj[static_cast<std::size_t>(v)];
        for (std::size_t i = 0; i < nb.size(); ++i)
            for (std::size_t j = i + 1; j < nb.size(); ++j)
                if (bits.test(nb[i], nb[j])) {
                    std::array<int, 3> t{v, nb[i], nb[j]};
                    std::sort(t.begin(), t.end());
                    found.push_back(t);
                }
    }
    std::sort(found.begin(), found.end());
    found.erase(std::unique(found.begin(), found.end()), found.end());
    return found;
}

inline std::vector<std::array<int, 3>> triangles(const PolarityGraph& g) { return triangles(g.adj); }

/// 3-uniform hypergraph on the non-absolute vertices whose edges are the
/// triangles of G.  Max degree <= (q+1)/2 and max codegree 1 for valid
/// polarity graphs.
struct TriangleHypergraph {
    std::vector<int> vertices;               // sorted non-absolute vertex ids
    std::vector<std::array<int, 3>> edges;   // lexicographically sorted triples
    std::vector<int> degrees;                // parallel to vertices
    int graph_size = 0;                      // n of the source graph

    int max_degree() const {
        int m = 0;
        for (int d : degrees) m = std::max(m, d);
        return m;
    }

    /// Largest number of edges sharing a fixed vertex pair.
    int max_codegree() const {
        std::unordered_map<long long, int> pair_count;
        int m = 0;
        for (const auto& t : edges)
            for (int i = 0; i < 3; ++i)
                for (int j = i + 1; j < 3; ++j) {
                    long long key = static_cast<long long>(t[static_cast<std::size_t>(i)]) << 32 |
                                    static_cast<unsigned>(t[static_cast<std::size_t>(j)]);
                    m = std::max(m, ++pair_count[key]);
                }
        return m;
    }
};

inline TriangleHypergraph triangle_hypergraph(const PolarityGraph& g) {
    TriangleHypergraph h;
    h.graph_size = g.n;
    std::vector<int> local(static_cast<std::size_t>(g.n), -1);
    for (int v = 0; v < g.n; ++v)
        if (!g.absolute[static_cast<std::size_t>(v)]) {
            local[static_cast<std::size_t>(v)] = static_cast<int>(h.vertices.size());
            h.vertices.push_back(v);
        }
    h.degrees.assign(h.vertices.size(), 0);
    h.edges = triangles(g);
    for (const auto& t : h.edges)
        for (int v : t) {
            if (local[static_cast<std::size_t>(v)] < 0)
                throw std::invalid_argument("analysis: triangle contains an absolute vertex");
            ++h.degrees[static_cast<std::size_t>(local[static_cast<std::size_t>(v)])];
        }
    return h;
}

/// The vertex partition (A, S, E): absolute points, their non-absolute
/// neighbors, and the vertices with no absolute neighbor.
struct ParsonsPartition {
    std::vector<int> a_set;
    std::vector<int> s_set;
    std::vector<int> e_set;
};

inline ParsonsPartition parsons_partition(const PolarityGraph& g) {
    ParsonsPartition part;
    for (int v = 0; v < g.n; ++v) {
        if (g.absolute[static_cast<std::size_t>(v)]) {
            part.a_set.push_back(v);
            continue;
        }
        bool near = false;
        for (int u : g.adj[static_cast<std::size_t>(v)])
            if (g.absolute[static_cast<std::size_t>(u)]) {
                near = true;
                break;
            }
        (near ? part.s_set : part.e_set).push_back(v);
    }
    return part;
}

/// Split N(p) into absolute neighbors A_p and non-absolute neighbors B_p.
/// B_p induces a matching in any valid polarity graph.
inline std::pair<std::vector<int>, std::vector<int>> neighborhood_split(const PolarityGraph& g, int p) {
    if (g.absolute[static_cast<std::size_t>(p)])
        throw std::invalid_argument("analysis: neighborhood_split requires a non-absolute vertex");
    std::vector<int> a_p, b_p;
    for (int u : g.adj[static_cast<std::size_t>(p)])
        (g.absolute[static_cast<std::size_t>(u)] ? a_p : b_p).push_back(u);
    return {std::move(a_p), std::move(b_p)};
}

struct C4Result {
    bool c4_free = true;
    std::optional<std::array<int, 4>> witness;  // cycle u-x-v-y when present
};

/// True iff every pair of distinct vertices has at most one common neighbor.
inline C4Result is_c4_free(const std::vector<std::vector<int>>& adj) {
    const int n = static_cast<int>(adj.size());
    detail::AdjacencyBits bits(adj);
    const std::size_t words = bits.words();
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) {
            int common = 0;
            const std::uint64_t* ru = bits.row(u);
            const std::uint64_t* rv = bits.row(v);
            for (std::size_t w = 0; w < words; ++w) common += std::popcount(ru[w] & rv[w]);
            if (common >= 2) {
                std::array<int, 4> cyc{u, -1, v, -1};
                for (int x = 0; x < n && cyc[3] < 0; ++x)
                    if (bits.test(u, x) && bits.test(v, x)) (cyc[1] < 0 ? cyc[1] : cyc[3]) = x;
                return {false, cyc};
            }
        }
    return {true, std::nullopt};
}

inline C4Result is_c4_free(const PolarityGraph& g) { return is_c4_free(g.adj); }

/// Exact diameter by one BFS per vertex.  Throws on disconnected input.
inline int diameter(const std::vector<std::vector<int>>& adj) {
    const int n = static_cast<int>(adj.size());
    int diam = 0;
    std::vector<int> dist(static_cast<std::size_t>(n));
    for (int s = 0; s < n; ++s) {
        std::fill(dist.begin(), dist.end(), -1);
        std::queue<int> bfs;
        bfs.push(s);
        dist[static_cast<std::size_t>(s)] = 0;
        int reached = 1;
        while (!bfs.empty()) {
            int u = bfs.front();
            bfs.pop();
            for (int v : adj[static_cast<std::size_t>(u)])
                if (dist[static_cast<std::size_t>(v)] < 0) {
                    dist[static_cast<std::size_t>(v)] = dist[static_cast<std::size_t>(u)] + 1;
                    diam = std::max(diam, dist[static_cast<std::size_t>(v)]);
                    ++reached;
                    bfs.push(v);
                }
        }
        if (reached != n) throw std::invalid_argument("analysis: graph is disconnected");
    }
    return diam;
}

inline int diameter(const PolarityGraph& g) { return diameter(g.adj); }

struct EmlResult {
    long long pair_count = 0;  // e(X,Y)
    double deviation = 0.0;    // |e(X,Y) - d|X||Y|/n|
    double slack = 0.0;        // lambda*sqrt(|X||Y|) - deviation, >= 0 when the lemma holds
};

/// Expander Mixing Lemma check on the looped (q+1)-regular view.
inline EmlResult eml_check(const LoopedView& view, std::span<const int> X, std::span<const int> Y,
                           double lambda) {
    EmlResult r;
    r.pair_count = view.ordered_pair_count(X, Y);
    const double d = view.q() + 1;
    const double nx = static_cast<double>(X.size()), ny = static_cast<double>(Y.size());
    r.deviation = std::abs(static_cast<double>(r.pair_count) - d * nx * ny / view.n());
    r.slack = lambda * std::sqrt(nx * ny) - r.deviation;
    return r;
}

inline EmlResult eml_check(const LoopedView& view, std::span<const int> X, std::span<const int> Y) {
    return eml_check(view, X, Y, std::sqrt(static_cast<double>(view.q())));
}

struct TriangleFreeBound {
    double value = 0.0;
    long long floor_value = 0;
};

/// Upper bound (q^2+q+1)/2 + sqrt(q)(q^2+q+1)/(q+1) on the number of vertices
/// of an induced triangle-free subgraph.  The floor is computed with integer
/// arithmetic so boundary cases cannot be lost to rounding.
inline TriangleFreeBound triangle_free_upper_bound(int q) {
    if (q < 2) throw std::invalid_argument("analysis: triangle_free_upper_bound requires q >= 2");
    const long long N = static_cast<long long>(q) * q + q + 1;
    TriangleFreeBound b;
    b.value = static_cast<double>(N) / 2.0 +
              std::sqrt(static_cast<double>(q)) * static_cast<double>(N) / (q + 1);

    // m <= N/2 + sqrt(q) N/(q+1)  <=>  (q+1)(2m-N) <= 2N sqrt(q)
    //                             <=>  L <= 0  or  L^2 <= 4 N^2 q
    auto fits = [&](long long m) {
        __int128 L = static_cast<__int128>(q + 1) * (2 * m - N);
        if (L <= 0) return true;
        return L * L <= static_cast<__int128>(4) * N * N * q;
    };
    long long m = static_cast<long long>(b.value);
    while (fits(m + 1)) ++m;
    while (!fits(m)) --m;
    b.floor_value = m;
    return b;
}

}  // namespace polarity
