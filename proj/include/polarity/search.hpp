#pragma once

// Search for large induced triangle-free vertex sets avoiding absolute
// points, phrased over the triangle hypergraph H(Pi,theta):
//
//   exact    branch-and-bound, exact maximum for small H (<= 40 vertices)
//   parsons  the E_q / S_q construction for ER_q, q an odd prime power
//   seeded   randomized restarts: independent seed set, one vertex per
//            neighborhood triangle, repair, then a maximality fill
//   local    hill climbing with zero-violation adds and net-nonnegative
//            swaps, plateau escape by perturbing the incumbent
//   greedy   random-order greedy independent set in H
//
// Determinism: every strategy draws from a named seedable generator
// (mt19937_64, hand-rolled Fisher-Yates); restart r uses stream seed
// base + r, so fixed (strategy, seed, restarts, single worker) reproduces
// byte-identical certificates regardless of scheduling.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <mutex>
#include <optional>
#include <ostream>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "polarity/analysis.hpp"
#include "polarity/certificate.hpp"

namespace polarity {

enum class Strategy { exact, parsons, seeded, local, greedy };

inline std::string to_string(Strategy s) {
    switch (s) {
        case Strategy::exact: return "exact";
        case Strategy::parsons: return "parsons";
        case Strategy::seeded: return "seeded";
        case Strategy::local: return "local";
        default: return "greedy";
    }
}

inline Strategy strategy_from_string(const std::string& s) {
    if (s == "exact") return Strategy::exact;
    if (s == "parsons") return Strategy::parsons;
    if (s == "seeded") return Strategy::seeded;
    if (s == "local") return Strategy::local;
    if (s == "greedy") return Strategy::greedy;
    throw std::invalid_argument("search: unknown strategy '" + s + "'");
}

struct SearchConfig {
    Strategy strategy = Strategy::seeded;
    std::uint64_t seed = 0;
    int restarts = 1;
    double budget_sec = std::numeric_limits<double>::infinity();
    long long node_cap = -1;             // exact: B&B node limit, -1 = unlimited
    long long move_cap = 1'000'000;      // local: add/remove move limit
    int workers = 1;
    std::optional<Certificate> init;
    std::ostream* progress = nullptr;    // "restart=<i> size=<s> best=<b> elapsed=<sec>"
};

namespace detail {

using Clock = std::chrono::steady_clock;

inline double elapsed_sec(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

/// Seedable generator with platform-independent bounded draws and shuffle.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    int below(int n) {  // uniform in [0, n)
        return static_cast<int>((static_cast<unsigned __int128>(gen_()) *
                                 static_cast<std::uint64_t>(n)) >> 64);
    }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (int i = static_cast<int>(v.size()) - 1; i > 0; --i)
            std::swap(v[static_cast<std::size_t>(i)], v[static_cast<std::size_t>(below(i + 1))]);
    }

  private:
    std::mt19937_64 gen_;
};

/// Incremental triangle-violation bookkeeping for a vertex set under
/// add/remove.  A triangle is violated when all three vertices are in the
/// set; with codegree 1 each move touches at most (q+1)/2 triangles.
struct TriangleState {
    const std::vector<std::array<int, 3>>* tris = nullptr;
    const std::vector<std::vector<int>>* tri_of = nullptr;  // per graph vertex
    std::vector<int> cnt;    // set members per triangle
    std::vector<char> in_set;
    int size = 0;
    int violated = 0;

    void reset(int n, const std::vector<std::array<int, 3>>& t,
               const std::vector<std::vector<int>>& tof) {
        tris = &t;
        tri_of = &tof;
        cnt.assign(t.size(), 0);
        in_set.assign(static_cast<std::size_t>(n), 0);
        size = 0;
        violated = 0;
    }

    void clear() {
        std::fill(cnt.begin(), cnt.end(), 0);
        std::fill(in_set.begin(), in_set.end(), 0);
        size = 0;
        violated = 0;
    }

    void add(int v) {
        in_set[static_cast<std::size_t>(v)] = 1;
        ++size;
        for (int ti : (*tri_of)[static_cast<std::size_t>(v)])
            if (++cnt[static_cast<std::size_t>(ti)] == 3) ++violated;
    }

    void remove(int v) {
        in_set[static_cast<std::size_t>(v)] = 0;
        --size;
        for (int ti : (*tri_of)[static_cast<std::size_t>(v)])
            if (cnt[static_cast<std::size_t>(ti)]-- == 3) --violated;
    }

    // violations created if v (not in the set) were added
    int created(int v) const {
        int c = 0;
        for (int ti : (*tri_of)[static_cast<std::size_t>(v)])
            if (cnt[static_cast<std::size_t>(ti)] == 2) ++c;
        return c;
    }

    // violated triangles containing v (a member)
    int viol_deg(int v) const {
        int c = 0;
        for (int ti : (*tri_of)[static_cast<std::size_t>(v)])
            if (cnt[static_cast<std::size_t>(ti)] == 3) ++c;
        return c;
    }

    std::vector<int> members() const {
        std::vector<int> out;
        out.reserve(static_cast<std::size_t>(size));
        for (std::size_t v = 0; v < in_set.size(); ++v)
            if (in_set[v]) out.push_back(static_cast<int>(v));
        return out;
    }
};

inline std::vector<std::vector<int>> triangles_per_vertex(
    int n, const std::vector<std::array<int, 3>>& tris) {
    std::vector<std::vector<int>> tof(static_cast<std::size_t>(n));
    for (std::size_t ti = 0; ti < tris.size(); ++ti)
        for (int v : tris[ti]) tof[static_cast<std::size_t>(v)].push_back(static_cast<int>(ti));
    return tof;
}

// size first, then lexicographically least vertex list
inline bool better_certificate(const std::vector<int>& cand, const std::vector<int>& best) {
    if (cand.size() != best.size()) return cand.size() > best.size();
    return std::lexicographical_compare(cand.begin(), cand.end(), best.begin(), best.end());
}

}  // namespace detail

struct ExactResult {
    Certificate certificate;
    bool optimal = false;
    long long nodes = 0;
};

namespace detail {

/// Hitting-set view of maximum independent set in a 3-uniform hypergraph:
/// every hyperedge must lose at least one vertex; maximize the survivors.
class ExactSolver {
  public:
    ExactSolver(const TriangleHypergraph& h, long long node_cap, double budget_sec)
        : node_cap_(node_cap), budget_sec_(budget_sec), start_(Clock::now()) {
        m_ = static_cast<int>(h.vertices.size());
        local_.assign(static_cast<std::size_t>(h.graph_size), -1);
        for (int i = 0; i < m_; ++i)
            local_[static_cast<std::size_t>(h.vertices[static_cast<std::size_t>(i)])] = i;
        for (const auto& t : h.edges)
            edges_.push_back({local_[static_cast<std::size_t>(t[0])],
                              local_[static_cast<std::size_t>(t[1])],
                              local_[static_cast<std::size_t>(t[2])]});
        tri_of_.assign(static_cast<std::size_t>(m_), {});
        for (std::size_t ti = 0; ti < edges_.size(); ++ti)
            for (int v : edges_[ti]) tri_of_[static_cast<std::size_t>(v)].push_back(static_cast<int>(ti));
        state_.assign(static_cast<std::size_t>(m_), kUndecided);
        exc_.assign(edges_.size(), 0);
        forced_.assign(edges_.size(), 0);
    }

    void run() {
        rec(0);
    }

    long long nodes() const { return nodes_; }
    bool exhausted() const { return !stopped_; }
    int best_size() const { return best_size_; }
    const std::vector<char>& best_state() const { return best_state_; }

  private:
    static constexpr char kUndecided = 0, kIn = 1, kExcluded = 2;

    void rec(int nexcl) {
        if (stopped_) return;
        ++nodes_;
        if ((node_cap_ >= 0 && nodes_ > node_cap_) ||
            ((nodes_ & 4095) == 0 && elapsed_sec(start_) > budget_sec_)) {
            stopped_ = true;
            return;
        }

        // collect uncovered hyperedges; a fully forced one is a contradiction
        active_scratch_.clear();
        for (std::size_t ti = 0; ti < edges_.size(); ++ti)
            if (exc_[ti] == 0) {
                if (forced_[ti] == 3) return;
                active_scratch_.push_back(static_cast<int>(ti));
            }
        if (active_scratch_.empty()) {
            const int size = m_ - nexcl;
            if (size > best_size_) {
                best_size_ = size;
                best_state_ = state_;
            }
            return;
        }

        // admissible bound: vertex-disjoint uncovered hyperedges each cost one exclusion
        packing_used_.assign(static_cast<std::size_t>(m_), 0);
        int packing = 0;
        for (int ti : active_scratch_) {
            const auto& e = edges_[static_cast<std::size_t>(ti)];
            if (!packing_used_[static_cast<std::size_t>(e[0])] &&
                !packing_used_[static_cast<std::size_t>(e[1])] &&
                !packing_used_[static_cast<std::size_t>(e[2])]) {
                ++packing;
                for (int v : e) packing_used_[static_cast<std::size_t>(v)] = 1;
            }
        }
        if (m_ - nexcl - packing <= best_size_) return;

        // branch on the highest-degree undecided vertex of the first
        // uncovered hyperedge, ties to the lowest id
        const auto& e = edges_[static_cast<std::size_t>(active_scratch_.front())];
        int v = -1, vd = -1;
        for (int cand : e) {
            if (state_[static_cast<std::size_t>(cand)] != kUndecided) continue;
            int d = 0;
            for (int ti : tri_of_[static_cast<std::size_t>(cand)])
                if (exc_[static_cast<std::size_t>(ti)] == 0) ++d;
            if (d > vd) {
                vd = d;
                v = cand;
            }
        }
        if (v < 0) return;  // all three forced in: contradiction

        state_[static_cast<std::size_t>(v)] = kExcluded;
        for (int ti : tri_of_[static_cast<std::size_t>(v)]) ++exc_[static_cast<std::size_t>(ti)];
        rec(nexcl + 1);
        for (int ti : tri_of_[static_cast<std::size_t>(v)]) --exc_[static_cast<std::size_t>(ti)];

        state_[static_cast<std::size_t>(v)] = kIn;
        for (int ti : tri_of_[static_cast<std::size_t>(v)]) ++forced_[static_cast<std::size_t>(ti)];
        rec(nexcl);
        for (int ti : tri_of_[static_cast<std::size_t>(v)]) --forced_[static_cast<std::size_t>(ti)];
        state_[static_cast<std::size_t>(v)] = kUndecided;
    }

    int m_ = 0;
    std::vector<int> local_;
    std::vector<std::array<int, 3>> edges_;
    std::vector<std::vector<int>> tri_of_;
    std::vector<char> state_;
    std::vector<int> exc_, forced_;
    std::vector<char> packing_used_;
    std::vector<int> active_scratch_;
    int best_size_ = -1;
    std::vector<char> best_state_;
    long long nodes_ = 0;
    long long node_cap_;
    double budget_sec_;
    bool stopped_ = false;
    Clock::time_point start_;
};

}  // namespace detail

/// Exact maximum independent set of the triangle hypergraph, i.e. the largest
/// induced triangle-free absolute-point-free vertex set.  Exhausting the tree
/// within budget sets the optimality flag; otherwise the best find is
/// returned with the flag false.
inline ExactResult exact_max(const TriangleHypergraph& h, const SearchConfig& cfg,
                             const GraphDescriptor& descriptor) {
    if (static_cast<int>(h.vertices.size()) > 40)
        throw std::invalid_argument("search: exact_max is limited to 40 hypergraph vertices");

    detail::ExactSolver solver(h, cfg.node_cap, cfg.budget_sec);
    solver.run();

    std::vector<int> chosen;
    const auto& st = solver.best_state();
    for (std::size_t i = 0; i < st.size(); ++i)
        if (st[i] != 2) chosen.push_back(h.vertices[i]);

    // feasibility against H itself; certificates for real graphs are
    // re-verified downstream by verify_certificate
    std::vector<char> in(static_cast<std::size_t>(h.graph_size), 0);
    for (int v : chosen) in[static_cast<std::size_t>(v)] = 1;
    for (const auto& t : h.edges)
        if (in[static_cast<std::size_t>(t[0])] && in[static_cast<std::size_t>(t[1])] &&
            in[static_cast<std::size_t>(t[2])])
            throw std::logic_error("search: exact_max produced an infeasible set");

    ExactResult r;
    r.certificate = make_certificate(descriptor, std::move(chosen), "exact", cfg.seed);
    r.optimal = solver.exhausted();
    r.nodes = solver.nodes();
    return r;
}

inline ExactResult exact_max(const PolarityGraph& g, const SearchConfig& cfg) {
    return exact_max(triangle_hypergraph(g), cfg, g.descriptor);
}

/// Parsons construction: E_q when q = 1 (mod 4), S_q when q = 3 (mod 4).
inline Certificate parsons_construction(const PolarityGraph& g) {
    if (g.descriptor.construction != "ER")
        throw std::invalid_argument("search: parsons_construction requires an ER_q graph");
    const int q = g.q;
    if (q % 2 == 0) throw std::invalid_argument("search: parsons_construction requires odd q");

    ParsonsPartition part = parsons_partition(g);
    const bool use_e = q % 4 == 1;
    std::vector<int> set = use_e ? part.e_set : part.s_set;
    const long long expected = use_e ? static_cast<long long>(q) * (q - 1) / 2
                                     : static_cast<long long>(q + 1) * q / 2;
    if (static_cast<long long>(set.size()) != expected)
        throw std::logic_error("search: parsons set has size " + std::to_string(set.size()) +
                               ", expected " + std::to_string(expected));

    Certificate cert = make_certificate(g.descriptor, std::move(set), "parsons", 0);
    VerifyResult vr = verify_certificate(g, cert);
    if (!vr.accepted) throw std::logic_error("search: parsons certificate rejected: " + vr.reason);
    return cert;
}

namespace detail {

struct SharedTriangleData {
    std::vector<std::array<int, 3>> tris;
    std::vector<std::vector<int>> tri_of;
    std::vector<int> non_absolute;

    explicit SharedTriangleData(const PolarityGraph& g) {
        tris = triangles(g);
        tri_of = triangles_per_vertex(g.n, tris);
        for (int v = 0; v < g.n; ++v)
            if (!g.absolute[static_cast<std::size_t>(v)]) non_absolute.push_back(v);
    }
};

/// One seeded restart: independent set of size q, one endpoint per
/// neighborhood triangle, max-degree repair, then an ascending-id
/// zero-violation fill to maximality.
inline std::vector<int> seeded_restart(const PolarityGraph& g, const SharedTriangleData& shared,
                                       std::uint64_t stream_seed, TriangleState& state) {
    Rng rng(stream_seed);
    const int n = g.n;
    const int q = g.q;

    std::vector<int> order = shared.non_absolute;
    rng.shuffle(order);
    std::vector<char> picked(static_cast<std::size_t>(n), 0);
    std::vector<int> seeds;
    for (int v : order) {
        if (static_cast<int>(seeds.size()) >= q) break;
        bool clash = false;
        for (int u : g.adj[static_cast<std::size_t>(v)])
            if (picked[static_cast<std::size_t>(u)]) {
                clash = true;
                break;
            }
        if (!clash) {
            picked[static_cast<std::size_t>(v)] = 1;
            seeds.push_back(v);
        }
    }

    state.clear();
    for (int v : seeds) {
        for (int ti : shared.tri_of[static_cast<std::size_t>(v)]) {
            const auto& t = shared.tris[static_cast<std::size_t>(ti)];
            int a = -1, b = -1;
            for (int x : t)
                if (x != v) (a < 0 ? a : b) = x;
            if (state.in_set[static_cast<std::size_t>(a)] || state.in_set[static_cast<std::size_t>(b)])
                continue;  // triangle already represented
            const int ca = state.created(a), cb = state.created(b);
            int pick = b;
            if (ca < cb || (ca == cb && a < b)) pick = a;
            state.add(pick);
        }
    }

    while (state.violated > 0) {
        int best = -1, best_deg = -1;
        for (int v = 0; v < n; ++v)
            if (state.in_set[static_cast<std::size_t>(v)]) {
                const int d = state.viol_deg(v);
                if (d > best_deg) {
                    best_deg = d;
                    best = v;
                }
            }
        state.remove(best);
    }

    bool changed = true;
    while (changed) {
        changed = false;
        for (int v = 0; v < n; ++v)
            if (!state.in_set[static_cast<std::size_t>(v)] &&
                !g.absolute[static_cast<std::size_t>(v)] && state.created(v) == 0) {
                state.add(v);
                changed = true;
            }
    }
    return state.members();
}

}  // namespace detail

/// Randomized seeded construction, best verified certificate over all
/// restarts (lexicographically least among maximum-size finds).  Restarts
/// are embarrassingly parallel over the shared immutable graph.
inline Certificate seeded_heuristic(const PolarityGraph& g, const SearchConfig& cfg) {
    const detail::SharedTriangleData shared(g);
    const auto start = detail::Clock::now();
    const int restarts = std::max(1, cfg.restarts);

    std::vector<std::optional<std::vector<int>>> results(static_cast<std::size_t>(restarts));
    std::mutex log_mutex;
    std::vector<int> running_best;

    auto log_restart = [&](int r, std::size_t size) {
        if (!cfg.progress) return;
        std::lock_guard<std::mutex> lock(log_mutex);
        if (results[static_cast<std::size_t>(r)] &&
            detail::better_certificate(*results[static_cast<std::size_t>(r)], running_best))
            running_best = *results[static_cast<std::size_t>(r)];
        char buf[96];
        std::snprintf(buf, sizeof buf, "restart=%d size=%zu best=%zu elapsed=%.3f", r, size,
                      running_best.size(), detail::elapsed_sec(start));
        *cfg.progress << buf << '\n';
    };

    auto worker = [&](std::atomic<int>& next) {
        detail::TriangleState state;
        state.reset(g.n, shared.tris, shared.tri_of);
        for (;;) {
            const int r = next.fetch_add(1);
            if (r >= restarts || detail::elapsed_sec(start) > cfg.budget_sec) break;
            results[static_cast<std::size_t>(r)] =
                detail::seeded_restart(g, shared, cfg.seed + static_cast<std::uint64_t>(r), state);
            log_restart(r, results[static_cast<std::size_t>(r)]->size());
        }
    };

    std::atomic<int> next{0};
    if (cfg.workers <= 1) {
        worker(next);
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < cfg.workers; ++w) pool.emplace_back([&] { worker(next); });
        for (auto& t : pool) t.join();
    }

    std::vector<int> best;
    bool have = false;
    for (const auto& res : results)
        if (res && (!have || detail::better_certificate(*res, best))) {
            best = *res;
            have = true;
        }
    if (!have) best = {};

    Certificate cert = make_certificate(g.descriptor, std::move(best), "seeded", cfg.seed);
    VerifyResult vr = verify_certificate(g, cert);
    if (!vr.accepted) throw std::logic_error("search: seeded certificate rejected: " + vr.reason);
    return cert;
}

/// Hill climbing from a verified initial certificate.  Moves: add a vertex
/// creating no violation; swap in a vertex whose would-be violations all
/// share one removable member.  Plateaus are escaped by perturbing the
/// incumbent (drop ~10% at random).  Never returns less than the init.
inline Certificate local_search(const PolarityGraph& g, const Certificate& init,
                                const SearchConfig& cfg) {
    {
        VerifyResult vr = verify_certificate(g, init);
        if (!vr.accepted)
            throw std::invalid_argument("search: invalid initial certificate: " + vr.reason);
    }
    const detail::SharedTriangleData shared(g);
    const auto start = detail::Clock::now();
    detail::Rng rng(cfg.seed);

    detail::TriangleState state;
    state.reset(g.n, shared.tris, shared.tri_of);
    for (int v : init.vertices) state.add(v);

    std::vector<int> best = init.vertices;
    long long moves = 0;
    int stall = 0;
    int perturbations = 0;
    constexpr int kStallLimit = 40;

    std::vector<int> order = shared.non_absolute;
    std::vector<int> scratch;

    auto log_improvement = [&] {
        if (!cfg.progress) return;
        char buf[96];
        std::snprintf(buf, sizeof buf, "restart=%d size=%d best=%zu elapsed=%.3f", perturbations,
                      state.size, best.size(), detail::elapsed_sec(start));
        *cfg.progress << buf << '\n';
    };

    while (moves < cfg.move_cap && detail::elapsed_sec(start) <= cfg.budget_sec) {
        bool improved = false;
        rng.shuffle(order);
        for (int v : order)
            if (!state.in_set[static_cast<std::size_t>(v)] && state.created(v) == 0) {
                state.add(v);
                ++moves;
                improved = true;
            }
        if (state.size > static_cast<int>(best.size())) {
            best = state.members();
            stall = 0;
            log_improvement();
        }

        bool swapped = false;
        rng.shuffle(order);
        for (int v : order) {
            if (state.in_set[static_cast<std::size_t>(v)]) continue;
            // members shared by every triangle v would violate
            scratch.clear();
            bool first = true;
            for (int ti : shared.tri_of[static_cast<std::size_t>(v)]) {
                if (state.cnt[static_cast<std::size_t>(ti)] != 2) continue;
                const auto& t = shared.tris[static_cast<std::size_t>(ti)];
                if (first) {
                    for (int x : t)
                        if (x != v && state.in_set[static_cast<std::size_t>(x)]) scratch.push_back(x);
                    first = false;
                } else {
                    std::size_t keep = 0;
                    for (std::size_t i = 0; i < scratch.size(); ++i) {
                        bool inside = false;
                        for (int x : t)
                            if (x == scratch[i]) inside = true;
                        if (inside) scratch[keep++] = scratch[i];
                    }
                    scratch.resize(keep);
                }
                if (scratch.empty()) break;
            }
            if (first || scratch.empty()) continue;  // pure add (handled) or no single fix
            const int u = *std::min_element(scratch.begin(), scratch.end());
            state.add(v);
            state.remove(u);
            moves += 2;
            swapped = true;
            break;
        }

        if (!swapped && !improved) ++stall;
        if (stall > kStallLimit) {
            // back to the incumbent, then drop a random slice
            for (int v : state.members()) state.remove(v);
            for (int v : best) state.add(v);
            std::vector<int> mem = state.members();
            rng.shuffle(mem);
            const int k = std::max(2, static_cast<int>(best.size()) / 10);
            for (int i = 0; i < k && i < static_cast<int>(mem.size()); ++i) {
                state.remove(mem[static_cast<std::size_t>(i)]);
                ++moves;
            }
            stall = 0;
            ++perturbations;
        }
    }

    Certificate cert = make_certificate(g.descriptor, std::move(best), "local", cfg.seed);
    VerifyResult vr = verify_certificate(g, cert);
    if (!vr.accepted) throw std::logic_error("search: local certificate rejected: " + vr.reason);
    return cert;
}

/// Random-order greedy independent set in H: admit a vertex unless it
/// completes a hyperedge with vertices admitted earlier.
inline std::vector<int> dlr_greedy(const TriangleHypergraph& h, const SearchConfig& cfg) {
    detail::Rng rng(cfg.seed);
    std::vector<std::vector<int>> tri_of(static_cast<std::size_t>(h.graph_size));
    for (std::size_t ti = 0; ti < h.edges.size(); ++ti)
        for (int v : h.edges[ti]) tri_of[static_cast<std::size_t>(v)].push_back(static_cast<int>(ti));

    std::vector<int> order = h.vertices;
    rng.shuffle(order);
    std::vector<char> in(static_cast<std::size_t>(h.graph_size), 0);
    std::vector<int> out;
    for (int v : order) {
        bool blocked = false;
        for (int ti : tri_of[static_cast<std::size_t>(v)]) {
            const auto& t = h.edges[static_cast<std::size_t>(ti)];
            int have = 0;
            for (int x : t)
                if (x != v && in[static_cast<std::size_t>(x)]) ++have;
            if (have == 2) {
                blocked = true;
                break;
            }
        }
        if (!blocked) {
            in[static_cast<std::size_t>(v)] = 1;
            out.push_back(v);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace polarity
