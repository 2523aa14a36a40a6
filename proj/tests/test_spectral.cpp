#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "polarity/analysis.hpp"
#include "polarity/spectral.hpp"
#include "test_helpers.hpp"

using namespace polarity;
using test_helpers::synthetic_graph;

TEST_CASE("jacobi on small known matrices", "[spectral]") {
    SECTION("2x2") {
        auto r = jacobi_eigensymm({2, 1, 1, 2}, 2);
        REQUIRE(r.converged);
        std::vector<double> ev = r.eigenvalues;
        std::sort(ev.begin(), ev.end());
        CHECK(ev[0] == Catch::Approx(1.0));
        CHECK(ev[1] == Catch::Approx(3.0));
    }
    SECTION("diagonal input is a fixed point") {
        auto r = jacobi_eigensymm({4, 0, 0, 0, -1, 0, 0, 0, 2}, 3);
        REQUIRE(r.converged);
        CHECK(r.sweeps == 0);
    }
}

namespace {

// Independent oracle: for any valid polarity graph the looped matrix
// satisfies A^2 = J + qI exactly, so the spectrum is q+1 (once) and +-sqrt(q).
bool looped_square_identity(const PolarityGraph& g) {
    std::vector<bool> loops(g.absolute.begin(), g.absolute.end());
    std::vector<double> a = looped_matrix(g.adj, loops);
    const int n = g.n;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            long long acc = 0;
            for (int t = 0; t < n; ++t)
                acc += static_cast<long long>(a[static_cast<std::size_t>(i) * n + t]) *
                       static_cast<long long>(a[static_cast<std::size_t>(t) * n + j]);
            long long expected = (i == j) ? 1 + g.q : 1;
            if (acc != expected) return false;
        }
    return true;
}

}  // namespace

TEST_CASE("looped matrix squares to J + qI (exact integer identity)", "[spectral]") {
    for (int q : {2, 3, 5}) {
        INFO("ER_" << q);
        CHECK(looped_square_identity(build_er(q)));
    }
    CHECK(looped_square_identity(build_unitary(4)));
}

TEST_CASE("spectrum of G°(ER_2): 3 and +-sqrt(2)", "[spectral]") {
    auto g = build_er(2);
    auto s = adjacency_spectrum(g);
    REQUIRE(s.converged);
    CHECK(s.lambda1 == Catch::Approx(3.0).margin(1e-8));
    for (std::size_t i = 1; i < s.eigenvalues.size(); ++i)
        CHECK(std::abs(s.eigenvalues[i]) == Catch::Approx(std::sqrt(2.0)).margin(1e-8));
}

TEST_CASE("lambda1 = q+1 with multiplicity 1", "[spectral]") {
    auto g = build_er(5);
    auto s = adjacency_spectrum(g);
    CHECK(s.lambda1 == Catch::Approx(6.0).margin(1e-8));
    int mult = 0;
    for (double ev : s.eigenvalues)
        if (std::abs(ev - s.lambda1) < 1e-6) ++mult;
    CHECK(mult == 1);
}

TEST_CASE("rest of the spectrum sits at sqrt(q)", "[spectral]") {
    auto g = build_er(9);
    auto s = adjacency_spectrum(g);
    CHECK(s.lambda_rest_max == Catch::Approx(3.0).margin(1e-8));
}

TEST_CASE("residual is within the advertised tolerance", "[spectral]") {
    for (int q : {3, 9, 13}) {
        auto g = build_er(q);
        auto s = adjacency_spectrum(g);
        INFO("q=" << q);
        CHECK(s.residual <= 1e-8 * g.n);
    }
}

TEST_CASE("trace identities", "[spectral]") {
    for (int q : {2, 3, 4, 5, 7, 8, 9}) {
        auto g = build_er(q);
        auto s = adjacency_spectrum(g);
        double trace = 0, trace_sq = 0;
        for (double ev : s.eigenvalues) {
            trace += ev;
            trace_sq += ev * ev;
        }
        INFO("q=" << q);
        CHECK(trace == Catch::Approx(static_cast<double>(g.absolute_count)).margin(1e-6));
        CHECK(trace_sq == Catch::Approx(static_cast<double>(g.n) * (q + 1)).margin(1e-5));
    }
}

TEST_CASE("spectral gap check passes for polarity graphs", "[spectral]") {
    for (int q : {2, 3, 5, 9}) {
        auto gap = spectral_gap_check(build_er(q));
        INFO("ER_" << q);
        CHECK(gap.pass);
        CHECK(gap.multiplicity == 1);
    }
    for (int q : {4, 9}) {
        auto gap = spectral_gap_check(build_unitary(q));
        INFO("U_" << q);
        CHECK(gap.pass);
    }
}

TEST_CASE("spectral gap check fails the regularity precondition on a non-regular graph",
          "[spectral]") {
    auto path = synthetic_graph({{1}, {0, 2}, {1}}, 1);
    auto s = adjacency_spectrum(path.adj, std::vector<bool>(3, false));
    auto gap = spectral_gap_check(path.adj, std::vector<bool>(3, false), 1, s);
    REQUIRE_FALSE(gap.pass);
    bool mentions_regularity = false;
    for (const auto& f : gap.failures)
        if (f.find("regularity") != std::string::npos) mentions_regularity = true;
    CHECK(mentions_regularity);
}

TEST_CASE("mixing slack stays nonnegative under the measured lambda", "[spectral]") {
    std::mt19937_64 rng(11);
    for (int q : {3, 5, 9}) {
        auto g = build_er(q);
        auto s = adjacency_spectrum(g);
        LoopedView view = looped_view(g);
        int bad = 0;
        for (int trial = 0; trial < 200; ++trial) {
            std::vector<int> X, Y;
            for (int v = 0; v < g.n; ++v) {
                if (rng() & 1) X.push_back(v);
                if (rng() & 1) Y.push_back(v);
            }
            bad += eml_check(view, X, Y, s.lambda_rest_max).slack < -1e-9;
        }
        INFO("q=" << q);
        CHECK(bad == 0);
    }
}

TEST_CASE("size cap", "[spectral]") {
    std::vector<std::vector<int>> adj(4001);
    CHECK_THROWS_AS(adjacency_spectrum(adj, std::vector<bool>(4001, false)),
                    std::invalid_argument);
}
