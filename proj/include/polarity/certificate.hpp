#pragma once

// Certificates: explicit vertex sets claimed to induce a triangle-free,
// absolute-point-free subgraph.  A certificate is a scientific claim, so it
// is persisted as diffable JSON and re-verified from raw adjacency every
// time; nothing is trusted from the file.
//
// JSON schema:
//   { "construction": "ER"|"U"|"custom", "q": int, "modulus": [ints],
//     "polarity": str, "vertices": [ints], "size": int,
//     "generator": str, "seed": int }
// plus an optional "manifest" key referencing the run that produced it.

#include <algorithm>
#include <array>
#include <cstdint>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "polarity/polarity_graph.hpp"

namespace polarity {

struct Certificate {
    std::string construction = "custom";
    int q = 0;
    std::vector<int> modulus;
    std::string polarity = "custom";
    std::vector<int> vertices;  // sorted, duplicate-free
    int size = 0;
    std::string generator;
    std::uint64_t seed = 0;
    std::optional<std::string> manifest;

    GraphDescriptor graph_descriptor() const { return {construction, q, modulus, polarity}; }
};

inline Certificate make_certificate(const GraphDescriptor& d, std::vector<int> vertices,
                                    std::string generator, std::uint64_t seed) {
    std::sort(vertices.begin(), vertices.end());
    Certificate c;
    c.construction = d.construction;
    c.q = d.q;
    c.modulus = d.modulus;
    c.polarity = d.polarity;
    c.size = static_cast<int>(vertices.size());
    c.vertices = std::move(vertices);
    c.generator = std::move(generator);
    c.seed = seed;
    return c;
}

inline nlohmann::json certificate_to_json(const Certificate& c) {
    nlohmann::json j{
        {"construction", c.construction}, {"q", c.q},       {"modulus", c.modulus},
        {"polarity", c.polarity},         {"vertices", c.vertices},
        {"size", c.size},                 {"generator", c.generator},
        {"seed", c.seed},
    };
    if (c.manifest) j["manifest"] = *c.manifest;
    return j;
}

inline Certificate certificate_from_json(const nlohmann::json& j) {
    Certificate c;
    c.construction = j.at("construction").get<std::string>();
    c.q = j.at("q").get<int>();
    c.modulus = j.at("modulus").get<std::vector<int>>();
    c.polarity = j.at("polarity").get<std::string>();
    c.vertices = j.at("vertices").get<std::vector<int>>();
    c.size = j.at("size").get<int>();
    c.generator = j.at("generator").get<std::string>();
    c.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("manifest")) c.manifest = j.at("manifest").get<std::string>();
    return c;
}

inline void save_certificate(const Certificate& c, std::ostream& out) {
    out << certificate_to_json(c).dump(2) << '\n';
}

inline Certificate load_certificate(std::istream& in) {
    nlohmann::json j;
    in >> j;
    return certificate_from_json(j);
}

inline bool descriptor_matches(const Certificate& c, const GraphDescriptor& d) {
    return c.graph_descriptor() == d;
}

struct VerifyResult {
    bool accepted = false;
    std::string reason;
    std::optional<int> absolute_vertex;
    std::optional<std::array<int, 3>> triangle;
};

/// Accept iff the set contains no absolute point and no triangle of G lies
/// inside it.  Triangles are recomputed here from raw adjacency; this path
/// shares no code with the search strategies it checks.
inline VerifyResult verify_certificate(const PolarityGraph& g, const Certificate& cert) {
    const auto& vs = cert.vertices;
    for (int v : vs)
        if (v < 0 || v >= g.n)
            throw std::out_of_range("certificate: vertex id " + std::to_string(v) + " out of range");
    if (!std::is_sorted(vs.begin(), vs.end()) ||
        std::adjacent_find(vs.begin(), vs.end()) != vs.end())
        throw std::invalid_argument("certificate: vertex list must be sorted and duplicate-free");
    if (cert.size != static_cast<int>(vs.size()))
        throw std::invalid_argument("certificate: claimed size " + std::to_string(cert.size) +
                                    " does not match vertex list length " + std::to_string(vs.size()));

    for (int v : vs)
        if (g.absolute[static_cast<std::size_t>(v)])
            return {false, "vertex " + std::to_string(v) + " is an absolute point", v, std::nullopt};

    // dense bitmap straight from the adjacency lists
    const std::size_t words = (static_cast<std::size_t>(g.n) + 63) / 64;
    std::vector<std::uint64_t> bits(static_cast<std::size_t>(g.n) * words, 0);
    for (int u = 0; u < g.n; ++u)
        for (int v : g.adj[static_cast<std::size_t>(u)])
            bits[static_cast<std::size_t>(u) * words + static_cast<std::size_t>(v) / 64] |=
                1ULL << (static_cast<std::size_t>(v) % 64);
    auto edge = [&](int u, int v) {
        return (bits[static_cast<std::size_t>(u) * words + static_cast<std::size_t>(v) / 64] >>
                (static_cast<std::size_t>(v) % 64)) & 1ULL;
    };

    const std::size_t m = vs.size();
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j) {
            if (!edge(vs[i], vs[j])) continue;
            for (std::size_t k = j + 1; k < m; ++k)
                if (edge(vs[i], vs[k]) && edge(vs[j], vs[k])) {
                    std::array<int, 3> t{vs[i], vs[j], vs[k]};
                    return {false,
                            "triangle {" + std::to_string(t[0]) + "," + std::to_string(t[1]) + "," +
                                std::to_string(t[2]) + "} inside the set",
                            std::nullopt, t};
                }
        }
    return {true, "", std::nullopt, std::nullopt};
}

}  // namespace polarity
