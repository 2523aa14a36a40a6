#include <catch2/catch_amalgamated.hpp>

#include <bit>
#include <cstdint>
#include <map>
#include <random>

#include "polarity/search.hpp"
#include "test_helpers.hpp"

using namespace polarity;
using test_helpers::synthetic_graph;

namespace {

/// 2^|V| reference maximum: largest subset containing no hyperedge.
int enumerate_max(const std::vector<std::uint32_t>& edge_masks, int nverts) {
    int best = 0;
    for (std::uint32_t set = 0; set < (1u << nverts); ++set) {
        bool ok = true;
        for (std::uint32_t e : edge_masks)
            if ((set & e) == e) {
                ok = false;
                break;
            }
        if (ok) best = std::max(best, std::popcount(set));
    }
    return best;
}

}  // namespace

TEST_CASE("exact maxima for small ER_q", "[search]") {
    const std::map<int, int> expected = {{2, 3}, {3, 6}, {4, 11}, {5, 16}};
    for (auto [q, f] : expected) {
        auto g = build_er(q);
        auto res = exact_max(g, {});
        INFO("q=" << q);
        CHECK(res.certificate.size == f);
        CHECK(res.optimal);
        CHECK(verify_certificate(g, res.certificate).accepted);
        CHECK(static_cast<long long>(res.certificate.size) <= triangle_free_upper_bound(q).floor_value);
    }
}

TEST_CASE("exact search window is capped at 40 hypergraph vertices", "[search]") {
    auto g = build_er(7);  // 49 non-absolute vertices
    CHECK_THROWS_AS(exact_max(g, {}), std::invalid_argument);
}

TEST_CASE("empty hypergraph admits every vertex", "[search]") {
    auto star = synthetic_graph({{1, 2, 3, 4, 5}, {0}, {0}, {0}, {0}, {0}});
    auto res = exact_max(star, {});
    CHECK(res.certificate.size == 6);
    CHECK(res.optimal);
}

TEST_CASE("node budget exhaustion clears the optimality flag", "[search]") {
    auto g = build_er(5);
    SearchConfig cfg;
    cfg.node_cap = 1;
    auto res = exact_max(g, cfg);
    CHECK_FALSE(res.optimal);
    CHECK(verify_certificate(g, res.certificate).accepted);  // best-found still valid
}

TEST_CASE("exact agrees with full enumeration on random sub-hypergraphs", "[search]") {
    auto g = build_er(7);
    auto h = triangle_hypergraph(g);
    std::mt19937_64 rng(99);

    for (int instance = 0; instance < 50; ++instance) {
        const int m = 8 + static_cast<int>(rng() % 11);  // |V| in [8, 18]
        std::vector<int> pool = h.vertices;
        for (int i = static_cast<int>(pool.size()) - 1; i > 0; --i)
            std::swap(pool[static_cast<std::size_t>(i)], pool[rng() % (i + 1)]);
        pool.resize(static_cast<std::size_t>(m));
        std::sort(pool.begin(), pool.end());

        TriangleHypergraph sub;
        sub.graph_size = h.graph_size;
        sub.vertices = pool;
        sub.degrees.assign(pool.size(), 0);
        std::vector<int> local(static_cast<std::size_t>(h.graph_size), -1);
        for (std::size_t i = 0; i < pool.size(); ++i) local[static_cast<std::size_t>(pool[i])] = static_cast<int>(i);
        std::vector<std::uint32_t> masks;
        for (const auto& t : h.edges) {
            if (local[static_cast<std::size_t>(t[0])] < 0 || local[static_cast<std::size_t>(t[1])] < 0 ||
                local[static_cast<std::size_t>(t[2])] < 0)
                continue;
            sub.edges.push_back(t);
            masks.push_back((1u << local[static_cast<std::size_t>(t[0])]) |
                            (1u << local[static_cast<std::size_t>(t[1])]) |
                            (1u << local[static_cast<std::size_t>(t[2])]));
        }

        auto res = exact_max(sub, {}, g.descriptor);
        const int reference = enumerate_max(masks, m);
        INFO("instance " << instance << " with " << m << " vertices, " << sub.edges.size()
                         << " edges");
        REQUIRE(res.optimal);
        CHECK(res.certificate.size == reference);
    }
}

TEST_CASE("parsons construction", "[search]") {
    const std::map<int, int> expected = {{3, 6}, {5, 10}, {7, 28}, {11, 66}, {13, 78}};
    for (auto [q, size] : expected) {
        auto g = build_er(q);
        Certificate cert = parsons_construction(g);
        INFO("q=" << q);
        CHECK(cert.size == size);
        CHECK(cert.generator == "parsons");
        CHECK(verify_certificate(g, cert).accepted);
    }
    CHECK_THROWS_AS(parsons_construction(build_unitary(4)), std::invalid_argument);
    CHECK_THROWS_AS(parsons_construction(build_er(4)), std::invalid_argument);
}

TEST_CASE("seeded heuristic determinism and verification", "[search]") {
    auto g = build_er(7);
    SearchConfig cfg;
    cfg.seed = 1;
    cfg.restarts = 10;

    Certificate a = seeded_heuristic(g, cfg);
    Certificate b = seeded_heuristic(g, cfg);
    CHECK(a.vertices == b.vertices);
    CHECK(verify_certificate(g, a).accepted);

    cfg.workers = 4;
    Certificate c = seeded_heuristic(g, cfg);
    CHECK(c.vertices == a.vertices);  // worker count cannot change the answer
}

TEST_CASE("seeded regression anchors on ER_7", "[search]") {
    auto g = build_er(7);
    SearchConfig cfg;
    cfg.seed = 1;
    cfg.restarts = 1;
    CHECK(seeded_heuristic(g, cfg).size == 27);  // pinned from the first run

    cfg.restarts = 100;  // default CLI budget
    CHECK(seeded_heuristic(g, cfg).size >= 28);  // the Parsons baseline
}

TEST_CASE("local search respects its contracts", "[search]") {
    auto g = build_er(5);
    SearchConfig cfg;
    cfg.seed = 3;
    cfg.move_cap = 20000;

    SECTION("never shrinks the init") {
        Certificate init = parsons_construction(g);  // size 10
        Certificate out = local_search(g, init, cfg);
        CHECK(out.size >= 10);
        CHECK(verify_certificate(g, out).accepted);
    }
    SECTION("a known optimum is a fixed point in size") {
        Certificate opt = exact_max(g, {}).certificate;
        REQUIRE(opt.size == 16);
        Certificate out = local_search(g, opt, cfg);
        CHECK(out.size == 16);
    }
    SECTION("from the empty set on ER_3, pinned anchor") {
        auto g3 = build_er(3);
        Certificate empty = make_certificate(g3.descriptor, {}, "empty", 0);
        SearchConfig c3;
        c3.seed = 0;
        c3.move_cap = 1000;
        Certificate out = local_search(g3, empty, c3);
        CHECK(out.size >= 4);
        CHECK(out.size == 6);  // pinned from the first run; also the exact optimum
    }
    SECTION("invalid init is rejected") {
        auto part = parsons_partition(g);
        std::vector<int> bad = {part.a_set[0]};  // an absolute point
        Certificate init = make_certificate(g.descriptor, bad, "bad", 0);
        CHECK_THROWS_AS(local_search(g, init, cfg), std::invalid_argument);
    }
}

TEST_CASE("dlr greedy output is independent in H", "[search]") {
    auto g = build_er(7);
    auto h = triangle_hypergraph(g);
    SearchConfig cfg;
    cfg.seed = 5;
    std::vector<int> set = dlr_greedy(h, cfg);

    std::vector<char> in(static_cast<std::size_t>(g.n), 0);
    for (int v : set) in[static_cast<std::size_t>(v)] = 1;
    for (const auto& t : h.edges)
        CHECK_FALSE((in[static_cast<std::size_t>(t[0])] && in[static_cast<std::size_t>(t[1])] &&
                     in[static_cast<std::size_t>(t[2])]));

    Certificate cert = make_certificate(g.descriptor, set, "dlr", cfg.seed);
    CHECK(verify_certificate(g, cert).accepted);
}

TEST_CASE("dlr greedy on an edgeless hypergraph returns everything", "[search]") {
    auto star = synthetic_graph({{1, 2, 3}, {0}, {0}, {0}});
    auto h = triangle_hypergraph(star);
    REQUIRE(h.edges.empty());
    CHECK(dlr_greedy(h, {}).size() == 4);
}

TEST_CASE("dlr greedy regression floor on ER_7", "[search]") {
    auto g = build_er(7);
    auto h = triangle_hypergraph(g);
    std::size_t best = 0;
    for (int s = 0; s < 100; ++s) {
        SearchConfig cfg;
        cfg.seed = static_cast<std::uint64_t>(s);
        best = std::max(best, dlr_greedy(h, cfg).size());
    }
    CHECK(best >= 29);  // measured once, pinned
}

TEST_CASE("heuristic certificates always verify", "[search]") {
    auto g = build_er(9);
    for (std::uint64_t seed : {0ull, 7ull, 123ull}) {
        SearchConfig cfg;
        cfg.seed = seed;
        cfg.restarts = 3;
        Certificate s = seeded_heuristic(g, cfg);
        CHECK(verify_certificate(g, s).accepted);
        cfg.move_cap = 5000;
        Certificate l = local_search(g, s, cfg);
        CHECK(verify_certificate(g, l).accepted);
        CHECK(l.size >= s.size);
    }
}
