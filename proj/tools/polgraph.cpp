// polgraph: build polarity graphs, check their structural and spectral
// invariants, and search for maximum induced triangle-free subgraphs.
//
// Exit codes: 0 success/verified, 1 verification failure, 2 usage error,
// 3 input validation error.

#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "polarity/analysis.hpp"
#include "polarity/certificate.hpp"
#include "polarity/graph_io.hpp"
#include "polarity/search.hpp"
#include "polarity/spectral.hpp"
#include "polarity/version.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct CliError : std::runtime_error {
    int code;
    CliError(int c, const std::string& msg) : std::runtime_error(msg), code(c) {}
};

struct GraphOpts {
    std::string kind = "ER";
    int q = 0;
    std::string plane_file;
    std::string polarity_file;
};

void add_graph_options(CLI::App* cmd, GraphOpts& opts) {
    cmd->add_option("--kind", opts.kind, "graph construction: ER, U, or custom")
        ->check(CLI::IsMember({"ER", "U", "custom"}));
    cmd->add_option("--q", opts.q, "plane order");
    cmd->add_option("--plane", opts.plane_file, "plane file (custom construction)");
    cmd->add_option("--polarity", opts.polarity_file, "polarity file (custom construction)");
}

polarity::PolarityGraph resolve_graph(const GraphOpts& o) {
    if (!o.plane_file.empty() || o.kind == "custom") {
        if (o.plane_file.empty())
            throw CliError(3, "custom construction requires --plane");
        std::ifstream pf(o.plane_file);
        if (!pf) throw CliError(3, "cannot open plane file: " + o.plane_file);
        polarity::IncidencePlane plane = polarity::load_plane(pf);
        if (o.polarity_file.empty())
            throw CliError(3, "loaded planes carry no coordinates; supply --polarity");
        std::ifstream qf(o.polarity_file);
        if (!qf) throw CliError(3, "cannot open polarity file: " + o.polarity_file);
        polarity::Polarity theta = polarity::load_polarity(qf, plane);
        return polarity::build_custom(std::move(plane), std::move(theta));
    }
    if (o.q <= 0) throw CliError(2, "--q is required");
    if (o.kind == "ER") return polarity::build_er(o.q);
    return polarity::build_unitary(o.q);
}

std::string timestamp_utc() {
    std::time_t t = std::time(nullptr);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
    return buf;
}

json make_manifest(const std::string& command, json config, const polarity::GraphDescriptor& d,
                   std::vector<std::string> outputs) {
    return {{"command", command},      {"config", std::move(config)},
            {"graph", polarity::descriptor_to_json(d)}, {"outputs", std::move(outputs)},
            {"version", polarity::kVersion},            {"timestamp", timestamp_utc()}};
}

void write_text(const fs::path& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw CliError(3, "cannot write " + path.string());
    out << content;
}

std::string joined_command(int argc, char** argv) {
    std::string s;
    for (int i = 0; i < argc; ++i) {
        if (i) s += ' ';
        s += argv[i];
    }
    return s;
}

bool induced_triangle_free(const polarity::PolarityGraph& g, const std::vector<int>& set) {
    polarity::Certificate probe = polarity::make_certificate(g.descriptor, set, "probe", 0);
    return polarity::verify_certificate(g, probe).accepted;
}

json analyze_report(const polarity::PolarityGraph& g) {
    json report = polarity::graph_summary(g);

    auto c4 = polarity::is_c4_free(g);
    report["c4_free"] = c4.c4_free;
    report["diameter"] = polarity::diameter(g);

    auto tris = polarity::triangles(g);
    bool abs_free = true;
    for (const auto& t : tris)
        for (int v : t)
            if (g.absolute[static_cast<std::size_t>(v)]) abs_free = false;
    report["absolute_points_triangle_free"] = abs_free;

    bool matching = true;
    for (int p = 0; p < g.n && matching; ++p) {
        if (g.absolute[static_cast<std::size_t>(p)]) continue;
        auto [a_p, b_p] = polarity::neighborhood_split(g, p);
        for (int u : b_p) {
            int inside = 0;
            for (int w : b_p)
                if (w != u && g.adjacent(u, w)) ++inside;
            if (inside > 1) {
                matching = false;
                break;
            }
        }
    }
    report["neighborhoods_induce_matching"] = matching;

    auto part = polarity::parsons_partition(g);
    report["parsons"] = {{"a", part.a_set.size()},
                         {"s", part.s_set.size()},
                         {"e", part.e_set.size()},
                         {"s_triangle_free", induced_triangle_free(g, part.s_set)},
                         {"e_triangle_free", induced_triangle_free(g, part.e_set)}};

    auto h = polarity::triangle_hypergraph(g);
    report["hypergraph"] = {{"vertices", h.vertices.size()},
                            {"edges", h.edges.size()},
                            {"max_degree", h.max_degree()},
                            {"max_codegree", h.max_codegree()}};
    report["triangles"] = tris.size();

    auto bound = polarity::triangle_free_upper_bound(g.q);
    report["bound"] = {{"value", bound.value}, {"floor", bound.floor_value}};
    return report;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"polarity graph toolkit"};
    app.require_subcommand(1);

    GraphOpts graph_opts;
    std::string out_dir = ".";
    std::string format = "adj";
    std::string strategy = "seeded";
    std::string init_file;
    std::string cert_file;
    std::uint64_t seed = 0;
    int restarts = 100;
    double budget_sec = 0.0;
    long long move_cap = 1'000'000;
    long long node_cap = -1;
    int workers = 1;
    int bound_q = 0;

    auto* cmd_build = app.add_subcommand("build", "construct a graph and write its artifacts");
    add_graph_options(cmd_build, graph_opts);
    cmd_build->add_option("--out", out_dir, "output directory");

    auto* cmd_analyze = app.add_subcommand("analyze", "structural report as JSON");
    add_graph_options(cmd_analyze, graph_opts);
    cmd_analyze->add_option("--out", out_dir, "output directory");

    auto* cmd_spectrum = app.add_subcommand("spectrum", "eigenvalues of the looped graph");
    add_graph_options(cmd_spectrum, graph_opts);

    auto* cmd_bound = app.add_subcommand("bound", "induced triangle-free size bound");
    cmd_bound->add_option("--q", bound_q, "plane order")->required();

    auto* cmd_search = app.add_subcommand("search", "search for a maximum induced triangle-free set");
    add_graph_options(cmd_search, graph_opts);
    cmd_search->add_option("--strategy", strategy, "exact|parsons|seeded|local|greedy")
        ->check(CLI::IsMember({"exact", "parsons", "seeded", "local", "greedy"}));
    cmd_search->add_option("--seed", seed, "base RNG seed");
    cmd_search->add_option("--restarts", restarts, "restart count");
    cmd_search->add_option("--budget-sec", budget_sec, "wall-clock budget (0 = unlimited)");
    cmd_search->add_option("--move-cap", move_cap, "move cap for local search");
    cmd_search->add_option("--node-cap", node_cap, "node cap for exact search (-1 = unlimited)");
    cmd_search->add_option("--workers", workers, "parallel restart workers");
    cmd_search->add_option("--init", init_file, "initial certificate for local search");
    cmd_search->add_option("--out", out_dir, "output directory");

    auto* cmd_verify = app.add_subcommand("verify", "verify a certificate against a graph");
    add_graph_options(cmd_verify, graph_opts);
    cmd_verify->add_option("certificate", cert_file, "certificate JSON file")->required();

    auto* cmd_export = app.add_subcommand("export", "export the graph in a chosen format");
    add_graph_options(cmd_export, graph_opts);
    cmd_export->add_option("--format", format, "dimacs|adj|json")
        ->check(CLI::IsMember({"dimacs", "adj", "json"}));
    cmd_export->add_option("--out", out_dir, "output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        const std::string command = joined_command(argc, argv);

        if (cmd_build->parsed()) {
            polarity::PolarityGraph g = resolve_graph(graph_opts);
            fs::create_directories(out_dir);
            fs::path dir(out_dir);
            {
                std::ostringstream os;
                polarity::export_adjacency(g, os);
                write_text(dir / "graph.adj", os.str());
            }
            {
                std::ostringstream os;
                polarity::export_dimacs(g, os);
                write_text(dir / "graph.dimacs", os.str());
            }
            {
                std::ostringstream os;
                polarity::save_plane(g.plane, os);
                write_text(dir / "plane.txt", os.str());
            }
            {
                std::ostringstream os;
                polarity::save_polarity(g.theta, g.q, os);
                write_text(dir / "polarity.txt", os.str());
            }
            json summary = polarity::graph_summary(g);
            write_text(dir / "summary.json", summary.dump(2) + "\n");
            json manifest = make_manifest(
                command, {{"kind", graph_opts.kind}, {"q", g.q}}, g.descriptor,
                {"graph.adj", "graph.dimacs", "plane.txt", "polarity.txt", "summary.json"});
            write_text(dir / "manifest.json", manifest.dump(2) + "\n");
            std::cout << summary.dump(2) << '\n';
            return 0;
        }

        if (cmd_analyze->parsed()) {
            polarity::PolarityGraph g = resolve_graph(graph_opts);
            json report = analyze_report(g);
            if (cmd_analyze->count("--out")) {
                fs::create_directories(out_dir);
                write_text(fs::path(out_dir) / "analysis.json", report.dump(2) + "\n");
            }
            std::cout << report.dump(2) << '\n';
            return 0;
        }

        if (cmd_spectrum->parsed()) {
            polarity::PolarityGraph g = resolve_graph(graph_opts);
            auto s = polarity::adjacency_spectrum(g);
            auto gap = polarity::spectral_gap_check(g, s);
            json out = {{"n", g.n},
                        {"lambda1", s.lambda1},
                        {"lambda_rest_max", s.lambda_rest_max},
                        {"sqrt_q", gap.sqrt_q},
                        {"pass", gap.pass}};
            std::cout << out.dump(2) << '\n';
            return gap.pass ? 0 : 1;
        }

        if (cmd_bound->parsed()) {
            auto b = polarity::triangle_free_upper_bound(bound_q);
            json out = {{"q", bound_q}, {"value", b.value}, {"floor", b.floor_value}};
            std::cout << out.dump(2) << '\n';
            return 0;
        }

        if (cmd_search->parsed()) {
            polarity::PolarityGraph g = resolve_graph(graph_opts);
            fs::create_directories(out_dir);
            fs::path dir(out_dir);

            polarity::SearchConfig cfg;
            cfg.strategy = polarity::strategy_from_string(strategy);
            cfg.seed = seed;
            cfg.restarts = restarts;
            if (budget_sec > 0) cfg.budget_sec = budget_sec;
            cfg.move_cap = move_cap;
            cfg.node_cap = node_cap;
            cfg.workers = workers;

            std::ofstream log(dir / "search.log");
            cfg.progress = &log;

            polarity::Certificate cert;
            bool optimal = false;
            switch (cfg.strategy) {
                case polarity::Strategy::exact: {
                    auto res = polarity::exact_max(g, cfg);
                    cert = std::move(res.certificate);
                    optimal = res.optimal;
                    log << "nodes=" << res.nodes << " optimal=" << (optimal ? 1 : 0) << '\n';
                    break;
                }
                case polarity::Strategy::parsons:
                    cert = polarity::parsons_construction(g);
                    break;
                case polarity::Strategy::seeded:
                    cert = polarity::seeded_heuristic(g, cfg);
                    break;
                case polarity::Strategy::local: {
                    polarity::Certificate init =
                        polarity::make_certificate(g.descriptor, {}, "empty", cfg.seed);
                    if (!init_file.empty()) {
                        std::ifstream in(init_file);
                        if (!in) throw CliError(3, "cannot open init certificate: " + init_file);
                        init = polarity::load_certificate(in);
                        if (!polarity::descriptor_matches(init, g.descriptor))
                            throw CliError(3, "init certificate descriptor does not match the graph");
                    }
                    cert = polarity::local_search(g, init, cfg);
                    break;
                }
                case polarity::Strategy::greedy: {
                    auto h = polarity::triangle_hypergraph(g);
                    cert = polarity::make_certificate(g.descriptor, polarity::dlr_greedy(h, cfg),
                                                      "dlr", cfg.seed);
                    break;
                }
            }

            cert.manifest = "manifest.json";
            {
                std::ostringstream os;
                polarity::save_certificate(cert, os);
                write_text(dir / "certificate.json", os.str());
            }
            json config = {{"strategy", strategy}, {"seed", seed},       {"restarts", restarts},
                           {"budget_sec", budget_sec}, {"move_cap", move_cap},
                           {"node_cap", node_cap},     {"workers", workers}};
            json manifest = make_manifest(command, config, g.descriptor,
                                          {"certificate.json", "search.log"});
            write_text(dir / "manifest.json", manifest.dump(2) + "\n");

            auto vr = polarity::verify_certificate(g, cert);
            json out = {{"strategy", strategy},
                        {"size", cert.size},
                        {"verified", vr.accepted},
                        {"certificate", (dir / "certificate.json").string()}};
            if (cfg.strategy == polarity::Strategy::exact) out["optimal"] = optimal;
            std::cout << out.dump(2) << '\n';
            return vr.accepted ? 0 : 1;
        }

        if (cmd_verify->parsed()) {
            polarity::PolarityGraph g = resolve_graph(graph_opts);
            std::ifstream in(cert_file);
            if (!in) throw CliError(3, "cannot open certificate: " + cert_file);
            polarity::Certificate cert = polarity::load_certificate(in);
            if (!polarity::descriptor_matches(cert, g.descriptor))
                throw CliError(3, "certificate descriptor does not match the graph");
            auto vr = polarity::verify_certificate(g, cert);
            json out = {{"accepted", vr.accepted}, {"size", cert.size}};
            if (!vr.accepted) {
                out["reason"] = vr.reason;
                if (vr.absolute_vertex) out["vertex"] = *vr.absolute_vertex;
                if (vr.triangle) out["triangle"] = *vr.triangle;
            }
            std::cout << out.dump(2) << '\n';
            return vr.accepted ? 0 : 1;
        }

        if (cmd_export->parsed()) {
            polarity::PolarityGraph g = resolve_graph(graph_opts);
            fs::create_directories(out_dir);
            fs::path dir(out_dir);
            std::ostringstream os;
            std::string name;
            if (format == "dimacs") {
                polarity::export_dimacs(g, os);
                name = "graph.dimacs";
            } else if (format == "adj") {
                polarity::export_adjacency(g, os);
                name = "graph.adj";
            } else {
                os << polarity::graph_summary(g).dump(2) << '\n';
                name = "summary.json";
            }
            write_text(dir / name, os.str());
            std::cout << (dir / name).string() << '\n';
            return 0;
        }
    } catch (const CliError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return e.code;
    } catch (const polarity::ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const polarity::ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    }
    return 2;
}
