#include "sphere7/coloring.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <deque>
#include <set>
#include <stdexcept>

namespace sphere7 {

Graph Graph::from_edges(int n, const std::vector<std::pair<int, int>>& edges) {
    Graph g;
    g.n = n;
    g.adj.assign(n, {});
    std::set<std::pair<int, int>> seen;
    for (auto [u, v] : edges) {
        if (u < 0 || v < 0 || u >= n || v >= n || u == v)
            throw std::runtime_error("bad edge in graph construction");
        auto key = std::minmax(u, v);
        if (!seen.insert(key).second) continue;
        g.adj[u].push_back(v);
        g.adj[v].push_back(u);
    }
    for (auto& a : g.adj) std::sort(a.begin(), a.end());
    return g;
}

Graph Graph::from_mesh(const TriMesh& m) {
    Graph g;
    g.n = m.vertex_count();
    g.adj.assign(g.n, {});
    for (int v = 0; v < g.n; ++v) {
        g.adj[v] = m.neighbors(v);
        std::sort(g.adj[v].begin(), g.adj[v].end());
    }
    return g;
}

bool Graph::has_edge(int u, int v) const {
    return std::binary_search(adj[u].begin(), adj[u].end(), v);
}

long Graph::edge_count() const {
    long s = 0;
    for (const auto& a : adj) s += static_cast<long>(a.size());
    return s / 2;
}

Graph square_graph(const Graph& g) {
    Graph sq;
    sq.n = g.n;
    sq.adj.assign(g.n, {});
    for (int v = 0; v < g.n; ++v) {
        std::set<int> within;
        for (int u : g.adj[v]) {
            within.insert(u);
            for (int w : g.adj[u])
                if (w != v) within.insert(w);
        }
        sq.adj[v].assign(within.begin(), within.end());
    }
    return sq;
}

NiceCheckResult is_nice_coloring(const Graph& g, const std::vector<int>& colors, int k) {
    if (static_cast<int>(colors.size()) != g.n)
        throw std::runtime_error("coloring size does not match graph");
    for (int c : colors)
        if (c < 1 || c > k) throw std::runtime_error("color out of range 1..k");
    Graph sq = square_graph(g);
    for (int v = 0; v < g.n; ++v)
        for (int u : sq.adj[v])
            if (u > v && colors[u] == colors[v]) return {false, v, u};
    return {true, -1, -1};
}

namespace {

struct Searcher {
    const Graph& sq;
    int k;
    SearchMode mode;
    bool collect;
    std::size_t max_collected;
    std::chrono::steady_clock::time_point deadline;
    bool timed_out = false;

    std::vector<int> color;                    // 0 = unassigned
    std::vector<std::vector<int>> forbid_cnt;  // forbid_cnt[v][c-1] = #assigned sq-neighbors with c
    std::vector<uint32_t> forbid_mask;
    std::vector<int> allowed_count;
    int uncolored = 0;

    SearchStats stats;
    unsigned long long count = 0;
    std::optional<std::vector<int>> witness;
    std::vector<std::vector<int>> solutions;

    Searcher(const Graph& s, const SearchOptions& o)
        : sq(s), k(o.k), mode(o.mode), collect(o.collect_solutions), max_collected(o.max_collected) {
        color.assign(sq.n, 0);
        forbid_cnt.assign(sq.n, std::vector<int>(k, 0));
        forbid_mask.assign(sq.n, 0);
        allowed_count.assign(sq.n, k);
        uncolored = sq.n;
        // Clamp so the conversion to the clock's integer ticks cannot overflow.
        deadline = std::chrono::steady_clock::now() +
                   std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                       std::chrono::duration<double>(std::min(o.timeout_seconds, 1e8)));
    }

    // Returns false if some neighbor loses its last color.
    bool assign(int v, int c, std::vector<int>& trail) {
        color[v] = c;
        --uncolored;
        trail.push_back(v);
        bool ok = true;
        for (int u : sq.adj[v]) {
            if (color[u] != 0) continue;
            if (++forbid_cnt[u][c - 1] == 1) {
                forbid_mask[u] |= (1u << (c - 1));
                if (--allowed_count[u] == 0) ok = false;
            }
        }
        return ok;
    }

    void unassign(int v) {
        int c = color[v];
        color[v] = 0;
        ++uncolored;
        for (int u : sq.adj[v]) {
            if (color[u] != 0) continue;
            if (--forbid_cnt[u][c - 1] == 0) {
                forbid_mask[u] &= ~(1u << (c - 1));
                ++allowed_count[u];
            }
        }
    }

    void undo(std::vector<int>& trail, std::size_t mark) {
        while (trail.size() > mark) {
            unassign(trail.back());
            trail.pop_back();
        }
    }

    int pick_vertex() const {
        // Saturation degree = number of distinct forbidden colors; ties by id.
        int best = -1, best_sat = -1;
        for (int v = 0; v < sq.n; ++v) {
            if (color[v] != 0) continue;
            int sat = std::popcount(forbid_mask[v]);
            if (sat > best_sat) {
                best_sat = sat;
                best = v;
            }
        }
        return best;
    }

    // Assigns every vertex whose candidate set became a singleton.
    // Returns false on wipeout. Appends to the same trail for undo.
    bool propagate(std::vector<int>& trail) {
        bool changed = true;
        while (changed) {
            changed = false;
            for (int v = 0; v < sq.n; ++v) {
                if (color[v] != 0 || allowed_count[v] != 1) continue;
                uint32_t free_mask = ~forbid_mask[v] & ((k == 32) ? ~0u : ((1u << k) - 1));
                int c = std::countr_zero(free_mask) + 1;
                if (!assign(v, c, trail)) return false;
                changed = true;
            }
        }
        return true;
    }

    bool done() const {
        if (timed_out) return true;
        if (mode == SearchMode::Find && witness) return true;
        return false;
    }

    void record_solution() {
        ++count;
        if (!witness) witness = color;
        if (collect && solutions.size() < max_collected) solutions.push_back(color);
    }

    void dfs(int depth) {
        if (done()) return;
        ++stats.nodes_expanded;
        stats.max_depth = std::max(stats.max_depth, depth);
        if ((stats.nodes_expanded & 0x3ff) == 0 &&
            std::chrono::steady_clock::now() > deadline) {
            timed_out = true;
            return;
        }
        if (uncolored == 0) {
            record_solution();
            return;
        }
        int v = pick_vertex();
        for (int c = 1; c <= k; ++c) {
            if (forbid_mask[v] & (1u << (c - 1))) continue;
            std::vector<int> trail;
            if (assign(v, c, trail) && propagate(trail)) {
                if (uncolored == 0)
                    record_solution();
                else
                    dfs(depth + 1);
            }
            undo(trail, 0);
            if (done()) return;
        }
    }
};

}  // namespace

SearchOutcome search_nice_coloring(const Graph& g, const SearchOptions& opts) {
    if (opts.k < 1 || opts.k > 32) throw std::runtime_error("k must be in 1..32");
    Graph sq = square_graph(g);
    auto t0 = std::chrono::steady_clock::now();
    Searcher s(sq, opts);

    std::vector<int> seed_trail;
    bool seed_ok = true;
    if (!opts.fixed.empty()) {
        if (static_cast<int>(opts.fixed.size()) != g.n)
            throw std::runtime_error("fixed assignment size does not match graph");
        for (int v = 0; v < g.n && seed_ok; ++v) {
            int c = opts.fixed[v];
            if (c == 0) continue;
            if (c < 1 || c > opts.k) throw std::runtime_error("fixed color out of range");
            if (s.color[v] != 0) continue;
            if (s.forbid_mask[v] & (1u << (c - 1))) seed_ok = false;
            else seed_ok = s.assign(v, c, seed_trail);
        }
    }
    if (seed_ok && opts.fix_first_neighborhood) {
        if (opts.k < 7) throw std::runtime_error("neighborhood pinning needs k >= 7");
        // Pin vertex 0 and its base-graph neighbors in rotation/list order to 1..7.
        std::vector<int> pin{0};
        for (int u : g.adj[0]) pin.push_back(u);
        if (pin.size() > 7) {
            // Degree >= 7 forces two equal colors among the closed neighborhood.
            seed_ok = false;
        } else {
            for (std::size_t i = 0; i < pin.size() && seed_ok; ++i) {
                int v = pin[i];
                if (s.color[v] != 0) {
                    if (s.color[v] != static_cast<int>(i) + 1) seed_ok = false;
                    continue;
                }
                int c = static_cast<int>(i) + 1;
                if (s.forbid_mask[v] & (1u << (c - 1))) seed_ok = false;
                else seed_ok = s.assign(v, c, seed_trail);
            }
        }
    }

    if (seed_ok && s.propagate(seed_trail)) {
        if (s.uncolored == 0)
            s.record_solution();
        else
            s.dfs(0);
    }

    SearchOutcome out;
    out.stats = s.stats;
    out.stats.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    out.count = s.count;
    out.coloring = s.witness;
    out.solutions = std::move(s.solutions);
    if (s.timed_out) {
        out.status = SearchOutcome::Status::Indeterminate;
    } else if (opts.mode == SearchMode::Enumerate) {
        out.status = SearchOutcome::Status::Enumerated;
    } else if (s.witness) {
        out.status = SearchOutcome::Status::Sat;
    } else {
        out.status = SearchOutcome::Status::Unsat;
    }
    return out;
}

namespace {

bool proper_colorable(const Graph& g, int k, std::vector<int>& col, int v) {
    if (v == g.n) return true;
    for (int c = 1; c <= k; ++c) {
        bool ok = true;
        for (int u : g.adj[v])
            if (u < v && col[u] == c) {
                ok = false;
                break;
            }
        if (!ok) continue;
        col[v] = c;
        if (proper_colorable(g, k, col, v + 1)) return true;
        col[v] = 0;
    }
    return false;
}

}  // namespace

int chromatic_number(const Graph& g, int max_k) {
    for (int k = 1; k <= max_k; ++k) {
        std::vector<int> col(g.n, 0);
        if (proper_colorable(g, k, col, 0)) return k;
    }
    throw std::runtime_error("chromatic number exceeds max_k");
}

const char* to_string(SearchOutcome::Status s) {
    switch (s) {
        case SearchOutcome::Status::Sat: return "sat";
        case SearchOutcome::Status::Unsat: return "unsat";
        case SearchOutcome::Status::Enumerated: return "enumerated";
        case SearchOutcome::Status::Indeterminate: return "indeterminate";
    }
    return "unknown";
}

}  // namespace sphere7
