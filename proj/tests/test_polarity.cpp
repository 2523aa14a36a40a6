#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <sstream>

#include "polarity/polarity_graph.hpp"

using namespace polarity;

TEST_CASE("orthogonal polarity fixes labels and flags absolutes", "[polarity]") {
    Field f3 = Field::make(3, 1);
    IncidencePlane plane = build_pg2(f3);
    Polarity theta = orthogonal_polarity(plane);

    int id = plane.index_of_label({f3.one(), f3.one(), f3.one()});
    CHECK(theta.point_to_line[static_cast<std::size_t>(id)] == id);  // same label
    // (1,1,1) is absolute: 1+1+1 = 0 mod 3
    CHECK(plane.incident(id, id));
}

TEST_CASE("orthogonal absolute-point counts are q+1", "[polarity]") {
    for (int q : {2, 5}) {
        auto g = build_er(q);
        CHECK(g.absolute_count == q + 1);
    }
}

TEST_CASE("orthogonal polarity needs coordinates", "[polarity]") {
    IncidencePlane fano = build_pg2(Field::make(2, 1));
    std::stringstream buf;
    save_plane(fano, buf);
    IncidencePlane loaded = load_plane(buf);
    CHECK_THROWS_AS(orthogonal_polarity(loaded), std::invalid_argument);
}

TEST_CASE("unitary polarity", "[polarity]") {
    SECTION("absolute counts are q^(3/2)+1") {
        CHECK(build_unitary(4).absolute_count == 9);
        CHECK(build_unitary(9).absolute_count == 28);
    }
    SECTION("theta is an involution on every point, q=4") {
        IncidencePlane plane = build_pg2(Field::make(2, 2));
        Polarity theta = unitary_polarity(plane);
        for (int p = 0; p < plane.size(); ++p)
            CHECK(theta.line_to_point[static_cast<std::size_t>(
                      theta.point_to_line[static_cast<std::size_t>(p)])] == p);
    }
    SECTION("q must be a square") {
        CHECK_THROWS_AS(build_unitary(5), std::invalid_argument);
        CHECK_THROWS_AS(build_unitary(8), std::invalid_argument);
    }
}

TEST_CASE("validate_polarity", "[polarity]") {
    IncidencePlane plane = build_pg2(Field::make(3, 1));
    SECTION("orthogonal passes") {
        CHECK(validate_polarity(plane, orthogonal_polarity(plane)).pass());
    }
    SECTION("unitary on GF(16) passes") {
        IncidencePlane p16 = build_pg2(Field::make(2, 4));
        CHECK(validate_polarity(p16, unitary_polarity(p16)).pass());
    }
    SECTION("a transposition keeps the involution but breaks incidence") {
        Polarity theta = orthogonal_polarity(plane);
        std::swap(theta.point_to_line[1], theta.point_to_line[2]);
        theta.line_to_point.assign(theta.point_to_line.size(), -1);
        for (std::size_t p = 0; p < theta.point_to_line.size(); ++p)
            theta.line_to_point[static_cast<std::size_t>(theta.point_to_line[p])] = static_cast<int>(p);
        ValidationReport report = validate_polarity(plane, theta);
        CHECK_FALSE(report.pass());
        CHECK(report.find("involution")->pass);
        const CheckResult* inc = report.find("incidence preservation");
        REQUIRE(inc != nullptr);
        CHECK_FALSE(inc->pass);
        CHECK_FALSE(inc->witness.empty());
    }
}

TEST_CASE("ER_2 structure", "[polarity]") {
    auto g = build_er(2);
    CHECK(g.n == 7);
    CHECK(g.edge_count() == 9);
    CHECK(g.absolute_count == 3);
}

TEST_CASE("ER_3 structure", "[polarity]") {
    auto g = build_er(3);
    CHECK(g.n == 13);
    CHECK(g.edge_count() == 24);
    std::map<int, int> profile;
    for (int v = 0; v < g.n; ++v) ++profile[g.degree(v)];
    CHECK(profile == std::map<int, int>{{3, 4}, {4, 9}});
}

TEST_CASE("U_4 structure", "[polarity]") {
    auto g = build_unitary(4);
    CHECK(g.n == 21);
    int abs_deg4 = 0, nonabs_deg5 = 0;
    for (int v = 0; v < g.n; ++v) {
        if (g.absolute[static_cast<std::size_t>(v)] && g.degree(v) == 4) ++abs_deg4;
        if (!g.absolute[static_cast<std::size_t>(v)] && g.degree(v) == 5) ++nonabs_deg5;
    }
    CHECK(abs_deg4 == 9);
    CHECK(nonabs_deg5 == 12);
}

TEST_CASE("adjacency symmetry and absolute-flag consistency", "[polarity]") {
    for (int q : {3, 5}) {
        auto g = build_er(q);
        int bad = 0;
        for (int v = 0; v < g.n; ++v) {
            for (int u : g.adj[static_cast<std::size_t>(v)]) bad += !g.adjacent(u, v);
            int lv = g.theta.point_to_line[static_cast<std::size_t>(v)];
            bad += g.absolute[static_cast<std::size_t>(v)] != g.plane.incident(v, lv);
        }
        CHECK(bad == 0);
    }
    {
        auto g = build_unitary(4);
        int bad = 0;
        for (int v = 0; v < g.n; ++v)
            for (int u : g.adj[static_cast<std::size_t>(v)]) bad += !g.adjacent(u, v);
        CHECK(bad == 0);
    }
}

TEST_CASE("degrees: q+1 for non-absolute, q for absolute", "[polarity]") {
    for (int q : {2, 3, 4, 5, 7, 8, 9, 11, 13}) {
        auto g = build_er(q);
        int bad = 0;
        for (int v = 0; v < g.n; ++v)
            bad += g.degree(v) != (g.absolute[static_cast<std::size_t>(v)] ? q : q + 1);
        INFO("q=" << q);
        CHECK(bad == 0);
    }
}

TEST_CASE("Baer bounds on the number of absolute points", "[polarity]") {
    auto baer = [](const PolarityGraph& g) {
        double upper = std::pow(static_cast<double>(g.q), 1.5) + 1.0;
        return g.absolute_count >= g.q + 1 &&
               static_cast<double>(g.absolute_count) <= upper + 1e-9;
    };
    for (int q : {2, 3, 4, 5, 7, 8, 9, 11, 13}) CHECK(baer(build_er(q)));
    for (int q : {4, 9, 16}) CHECK(baer(build_unitary(q)));
}

TEST_CASE("looped view degrees read q+1 everywhere", "[polarity]") {
    for (auto g : {build_er(3), build_unitary(4)}) {
        LoopedView view = looped_view(g);
        int d = 0;
        CHECK(view.regular(&d));
        CHECK(d == g.q + 1);
        for (int v = 0; v < g.n; ++v)
            if (!g.absolute[static_cast<std::size_t>(v)]) CHECK(view.degree(v) == g.degree(v));
    }
}

TEST_CASE("looped pair counting", "[polarity]") {
    auto g = build_er(3);
    LoopedView view = looped_view(g);
    std::vector<int> all(static_cast<std::size_t>(g.n));
    for (int v = 0; v < g.n; ++v) all[static_cast<std::size_t>(v)] = v;
    // e(V,V) = 2*edges + loops = d*n for the regular looped view
    CHECK(view.ordered_pair_count(all, all) == 52);
    CHECK(view.ordered_pair_count({}, all) == 0);
}

TEST_CASE("polarity file round-trip and validation", "[polarity]") {
    IncidencePlane plane = build_pg2(Field::make(2, 2));
    Polarity theta = unitary_polarity(plane);

    std::stringstream planebuf;
    save_plane(plane, planebuf);
    IncidencePlane loaded_plane = load_plane(planebuf);

    std::stringstream thetabuf;
    save_polarity(theta, plane.order, thetabuf);
    Polarity loaded = load_polarity(thetabuf, loaded_plane);
    CHECK(loaded.point_to_line == theta.point_to_line);
    CHECK(loaded.kind == PolarityKind::custom);

    PolarityGraph g = build_custom(std::move(loaded_plane), std::move(loaded));
    PolarityGraph reference = build_unitary(4);
    CHECK(g.adj == reference.adj);
    CHECK(g.absolute == reference.absolute);

    SECTION("a non-bijective file is rejected") {
        std::stringstream bad;
        bad << "polarity order=4\n";
        for (int p = 0; p < plane.size(); ++p) bad << "P " << p << " -> L 0\n";
        std::stringstream planebuf2;
        save_plane(plane, planebuf2);
        IncidencePlane plane2 = load_plane(planebuf2);
        CHECK_THROWS_AS(load_polarity(bad, plane2), ValidationError);
    }
}

TEST_CASE("build_graph rejects an invalid polarity", "[polarity]") {
    IncidencePlane plane = build_pg2(Field::make(3, 1));
    Polarity theta = orthogonal_polarity(plane);
    std::swap(theta.point_to_line[0], theta.point_to_line[5]);
    theta.line_to_point.assign(theta.point_to_line.size(), -1);
    for (std::size_t p = 0; p < theta.point_to_line.size(); ++p)
        theta.line_to_point[static_cast<std::size_t>(theta.point_to_line[p])] = static_cast<int>(p);
    CHECK_THROWS_AS(build_graph(std::move(plane), std::move(theta)), ValidationError);
}
