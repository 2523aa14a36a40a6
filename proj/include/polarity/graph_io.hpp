#pragma once

// Graph exports: DIMACS undirected edge format and a plain adjacency-list
// text format (one "v: n1 n2 ..." line per vertex), plus a JSON summary.

#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "polarity/polarity_graph.hpp"
#include "polarity/validation.hpp"

namespace polarity {

inline void export_dimacs(const PolarityGraph& g, std::ostream& out) {
    out << "c polarity graph " << g.descriptor.construction << " q=" << g.q << '\n';
    out << "p edge " << g.n << ' ' << g.edge_count() << '\n';
    for (int u = 0; u < g.n; ++u)
        for (int v : g.adj[static_cast<std::size_t>(u)])
            if (u < v) out << "e " << u + 1 << ' ' << v + 1 << '\n';
}

inline void export_adjacency(const PolarityGraph& g, std::ostream& out) {
    for (int v = 0; v < g.n; ++v) {
        out << v << ':';
        for (int u : g.adj[static_cast<std::size_t>(v)]) out << ' ' << u;
        out << '\n';
    }
}

/// Parse the adjacency-list text format back into sorted neighbor lists.
inline std::vector<std::vector<int>> load_adjacency(std::istream& in) {
    std::vector<std::vector<int>> adj;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') continue;
        auto colon = line.find(':');
        if (colon == std::string::npos) throw ParseError(line_no, 1, "expected '<v>: <neighbors>'");
        int v = -1;
        try {
            v = std::stoi(line.substr(0, colon));
        } catch (const std::exception&) {
            throw ParseError(line_no, 1, "bad vertex id");
        }
        if (v != static_cast<int>(adj.size()))
            throw ParseError(line_no, 1, "vertex " + std::to_string(v) + " out of order");
        std::istringstream rest(line.substr(colon + 1));
        std::vector<int> row;
        int u;
        while (rest >> u) row.push_back(u);
        if (!rest.eof()) throw ParseError(line_no, static_cast<int>(colon) + 2, "bad neighbor id");
        adj.push_back(std::move(row));
    }
    for (const auto& row : adj)
        for (int u : row)
            if (u < 0 || u >= static_cast<int>(adj.size()))
                throw ParseError(0, 0, "neighbor id " + std::to_string(u) + " out of range");
    return adj;
}

inline nlohmann::json descriptor_to_json(const GraphDescriptor& d) {
    return {{"construction", d.construction}, {"q", d.q}, {"modulus", d.modulus},
            {"polarity", d.polarity}};
}

inline nlohmann::json graph_summary(const PolarityGraph& g) {
    nlohmann::json profile = nlohmann::json::object();
    std::vector<int> counts;
    for (int v = 0; v < g.n; ++v) {
        int d = g.degree(v);
        if (d >= static_cast<int>(counts.size())) counts.resize(static_cast<std::size_t>(d) + 1, 0);
        ++counts[static_cast<std::size_t>(d)];
    }
    for (std::size_t d = 0; d < counts.size(); ++d)
        if (counts[d]) profile[std::to_string(d)] = counts[d];
    return {{"graph", descriptor_to_json(g.descriptor)},
            {"n", g.n},
            {"edges", g.edge_count()},
            {"absolute", g.absolute_count},
            {"degree_profile", profile}};
}

}  // namespace polarity
