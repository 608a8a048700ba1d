#include "sphere7/curvature.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <sstream>

namespace sphere7 {

namespace {

std::pair<int, int> norm_edge(int u, int v) { return {std::min(u, v), std::max(u, v)}; }

}  // namespace

CurvatureResult cycle_curvature(const TriMesh& m, const DirectedCycle& c) {
    Region r = interior_region(m, c);  // validates simple + separating
    std::vector<int> deg_int(m.vertex_count(), 0);
    for (auto [u, v] : r.open_edges) {
        ++deg_int[u];
        ++deg_int[v];
    }
    CurvatureResult res;
    res.per_vertex.reserve(c.verts.size());
    for (int v : c.verts) {
        res.per_vertex.push_back(2 - deg_int[v]);
        res.total += 2 - deg_int[v];
    }
    return res;
}

int irregular_inside(const TriMesh& m, const DirectedCycle& c) {
    Region r = interior_region(m, c);
    int s = 0;
    for (int v : r.interior_vertices)
        if (m.degree(v) < 6) s += 6 - m.degree(v);
    return s;
}

std::pair<DirectedCycle, ContractStepKind> contract_step(const TriMesh& m, const DirectedCycle& c) {
    Region r = interior_region(m, c);
    if (r.triangles.size() < 2)
        throw MeshError("contract_step requires at least two interior triangles");
    int n = c.length();
    std::vector<char> on_cycle(m.vertex_count(), 0);
    for (int v : c.verts) on_cycle[v] = 1;

    // Type1: the triangle left of (v_{k-1}, v_k) also lies left of (v_k, v_{k+1});
    // cut the corner at v_k. Smallest pivot vertex id wins.
    int best_k = -1;
    for (int k = 0; k < n; ++k) {
        int prev = c.at(k - 1), v = c.at(k), next = c.at(k + 1);
        if (m.face_left_of(prev, v) == m.face_left_of(v, next)) {
            if (best_k < 0 || v < c.verts[best_k]) best_k = k;
        }
    }
    if (best_k >= 0) {
        DirectedCycle out;
        for (int k = 0; k < n; ++k)
            if (k != best_k) out.verts.push_back(c.verts[k]);
        validate_cycle(m, out);
        return {out, ContractStepKind::Type1};
    }

    // Type2: reroute edge (v_k, v_{k+1}) through the third vertex of its
    // interior triangle when that vertex is strictly inside.
    int best_edge = -1, best_pivot = -1;
    for (int k = 0; k < n; ++k) {
        int u = c.at(k), v = c.at(k + 1);
        const auto& tri = m.faces()[m.face_left_of(u, v)];
        int x = tri[0] + tri[1] + tri[2] - u - v;
        if (on_cycle[x]) continue;
        if (best_edge < 0 || x < best_pivot) {
            best_edge = k;
            best_pivot = x;
        }
    }
    if (best_edge >= 0) {
        DirectedCycle out;
        for (int k = 0; k < n; ++k) {
            out.verts.push_back(c.verts[k]);
            if (k == best_edge) out.verts.push_back(best_pivot);
        }
        validate_cycle(m, out);
        return {out, ContractStepKind::Type2};
    }
    throw MeshError("no contraction step applies (internal inconsistency)");
}

ContractionTrace contract_to_triangle(const TriMesh& m, const DirectedCycle& c) {
    ContractionTrace trace;
    trace.initial = c;
    trace.initial_curvature = cycle_curvature(m, c).total;
    DirectedCycle cur = c;
    while (true) {
        Region r = interior_region(m, cur);
        if (r.triangles.size() == 1) break;
        auto [next, kind] = contract_step(m, cur);
        ContractStep step;
        step.kind = kind;
        if (kind == ContractStepKind::Type1) {
            // The removed vertex is the one missing from the new cycle.
            std::multiset<int> a(cur.verts.begin(), cur.verts.end());
            for (int v : next.verts) a.erase(a.find(v));
            step.pivot = *a.begin();
        } else {
            std::multiset<int> b(next.verts.begin(), next.verts.end());
            for (int v : cur.verts) b.erase(b.find(v));
            step.pivot = *b.begin();
        }
        step.curvature_after = cycle_curvature(m, next).total;
        step.cycle = next;
        trace.steps.push_back(std::move(step));
        cur = trace.steps.back().cycle;
    }
    return trace;
}

ProximityGraph proximity_graph(const TriMesh& m) {
    ProximityGraph h;
    for (auto [v, mult] : irregular_vertices(m)) {
        h.vertices.push_back(v);
        h.multiplicities.push_back(mult);
        h.multiplicity_sum += mult;
    }
    int k = static_cast<int>(h.vertices.size());
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < k; ++i) {
        auto dist = bfs_distances(m, h.vertices[i], 3);
        for (int j = i + 1; j < k; ++j)
            if (dist[h.vertices[j]] >= 0 && dist[h.vertices[j]] <= 3) edges.emplace_back(i, j);
    }
    h.graph = Graph::from_edges(std::max(k, 1), edges);
    if (k == 0) h.graph.n = 0, h.graph.adj.clear();

    std::vector<int> comp(k, -1);
    for (int i = 0; i < k; ++i) {
        if (comp[i] >= 0) continue;
        int id = static_cast<int>(h.components.size());
        h.components.emplace_back();
        std::deque<int> q{i};
        comp[i] = id;
        while (!q.empty()) {
            int x = q.front();
            q.pop_front();
            h.components[id].push_back(x);
            for (int y : h.graph.adj[x])
                if (comp[y] < 0) {
                    comp[y] = id;
                    q.push_back(y);
                }
        }
        std::sort(h.components[id].begin(), h.components[id].end());
        int msum = 0;
        for (int x : h.components[id]) msum += h.multiplicities[x];
        h.component_multiplicity.push_back(msum);
    }
    return h;
}

CaseKind classify_case(const ProximityGraph& h) {
    if (h.multiplicity_sum != 12)
        throw MeshError("case classification requires irregular multiplicity sum 12, got " +
                        std::to_string(h.multiplicity_sum));
    if (h.components.size() == 1) return CaseKind::Case1a;
    if (h.components.size() == 2 && h.component_multiplicity[0] == 6 &&
        h.component_multiplicity[1] == 6)
        return CaseKind::Case1b;
    return CaseKind::Case2;
}

const char* to_string(CaseKind k) {
    switch (k) {
        case CaseKind::Case1a: return "case1a";
        case CaseKind::Case1b: return "case1b";
        case CaseKind::Case2: return "case2";
    }
    return "unknown";
}

bool Tree::contains(int v) const {
    return std::binary_search(vertices.begin(), vertices.end(), v);
}

std::vector<int> Tree::tree_neighbors(int v) const {
    std::vector<int> out;
    for (auto [a, b] : edges) {
        if (a == v) out.push_back(b);
        if (b == v) out.push_back(a);
    }
    return out;
}

namespace {

std::vector<int> bfs_path(const TriMesh& m, int from, int to) {
    std::vector<int> parent(m.vertex_count(), -2);
    std::deque<int> q{from};
    parent[from] = -1;
    while (!q.empty()) {
        int v = q.front();
        q.pop_front();
        if (v == to) break;
        for (int u : m.neighbors(v))
            if (parent[u] == -2) {
                parent[u] = v;
                q.push_back(u);
            }
    }
    std::vector<int> path;
    for (int v = to; v != -1; v = parent[v]) path.push_back(v);
    std::reverse(path.begin(), path.end());
    return path;
}

Tree tree_from_edges(const std::set<std::pair<int, int>>& edges, int single_vertex = -1) {
    Tree t;
    if (edges.empty()) {
        if (single_vertex < 0) throw MeshError("empty tree");
        t.vertices = {single_vertex};
        return t;
    }
    std::set<int> vs;
    for (auto& e : edges) {
        vs.insert(e.first);
        vs.insert(e.second);
        t.edges.push_back(e);
    }
    t.vertices.assign(vs.begin(), vs.end());
    std::sort(t.edges.begin(), t.edges.end());
    if (t.edges.size() + 1 != t.vertices.size()) throw MeshError("edge set is not a tree");
    return t;
}

// Spanning tree of the union of connecting paths, pruned down to the anchors.
Tree connect_and_prune(const TriMesh& m, const std::vector<int>& anchors,
                       const std::vector<std::pair<int, int>>& anchor_pairs) {
    if (anchors.size() == 1 && anchor_pairs.empty()) return tree_from_edges({}, anchors[0]);
    std::map<int, std::set<int>> adj;
    for (auto [a, b] : anchor_pairs) {
        auto path = bfs_path(m, a, b);
        for (std::size_t i = 0; i + 1 < path.size(); ++i) {
            adj[path[i]].insert(path[i + 1]);
            adj[path[i + 1]].insert(path[i]);
        }
    }
    if (adj.empty()) return tree_from_edges({}, anchors[0]);
    // Breadth-first spanning tree of the union, from the smallest vertex.
    std::set<std::pair<int, int>> tree_edges;
    std::set<int> seen{adj.begin()->first};
    std::deque<int> q{adj.begin()->first};
    while (!q.empty()) {
        int v = q.front();
        q.pop_front();
        for (int u : adj[v])
            if (!seen.count(u)) {
                seen.insert(u);
                tree_edges.insert(norm_edge(v, u));
                q.push_back(u);
            }
    }
    std::set<int> anchor_set(anchors.begin(), anchors.end());
    // Prune non-anchor leaves.
    bool changed = true;
    while (changed) {
        changed = false;
        std::map<int, int> deg;
        for (auto& e : tree_edges) {
            ++deg[e.first];
            ++deg[e.second];
        }
        for (auto it = tree_edges.begin(); it != tree_edges.end();) {
            auto [a, b] = *it;
            bool leaf_a = deg[a] == 1 && !anchor_set.count(a);
            bool leaf_b = deg[b] == 1 && !anchor_set.count(b);
            if (leaf_a || leaf_b) {
                it = tree_edges.erase(it);
                changed = true;
            } else {
                ++it;
            }
        }
    }
    return tree_from_edges(tree_edges, anchors[0]);
}

}  // namespace

Tree steiner_tree(const TriMesh& m, const ProximityGraph& h) {
    if (h.components.size() != 1) throw MeshError("steiner_tree requires a connected H (Case 1a)");
    int k = static_cast<int>(h.vertices.size());
    if (k == 0) throw MeshError("no irregular vertices");
    // Breadth-first spanning tree of H.
    std::vector<std::pair<int, int>> pairs;
    std::vector<char> seen(k, 0);
    std::deque<int> q{0};
    seen[0] = 1;
    while (!q.empty()) {
        int v = q.front();
        q.pop_front();
        for (int u : h.graph.adj[v])
            if (!seen[u]) {
                seen[u] = 1;
                pairs.emplace_back(h.vertices[v], h.vertices[u]);
                q.push_back(u);
            }
    }
    Tree t = connect_and_prune(m, h.vertices, pairs);
    if (t.edge_count() > 33)
        throw MeshError("steiner tree bound violated: " + std::to_string(t.edge_count()) +
                        " edges > 33");
    return t;
}

namespace {

// Edge count of the branch hanging off neighbor `nbr` of `v` in tree `t`,
// and the branch's edge set.
std::set<std::pair<int, int>> branch_edges(const Tree& t, int v, int nbr) {
    std::set<std::pair<int, int>> out{norm_edge(v, nbr)};
    std::deque<std::pair<int, int>> q{{nbr, v}};
    while (!q.empty()) {
        auto [x, from] = q.front();
        q.pop_front();
        for (int y : t.tree_neighbors(x))
            if (y != from) {
                out.insert(norm_edge(x, y));
                q.push_back({y, x});
            }
    }
    return out;
}

}  // namespace

TreePair split_tree(const TriMesh& m, const Tree& t0) {
    if (t0.edge_count() == 0) throw MeshError("cannot split a single-vertex tree");
    if (t0.edge_count() > 33) throw MeshError("split_tree precondition |E(t0)| <= 33 violated");

    long best_max = -1;
    TreePair best;
    for (int v : t0.vertices) {
        // Branches around v in mesh rotation order, so that each side of the
        // split is a consecutive fan and the two trees do not cross at v.
        std::vector<int> nbrs;
        for (int u : m.neighbors(v))
            if (std::binary_search(t0.vertices.begin(), t0.vertices.end(), u) &&
                std::find(t0.edges.begin(), t0.edges.end(), norm_edge(v, u)) != t0.edges.end())
                nbrs.push_back(u);
        int d = static_cast<int>(nbrs.size());
        if (d < 2) continue;
        std::vector<std::set<std::pair<int, int>>> branches;
        for (int u : nbrs) branches.push_back(branch_edges(t0, v, u));
        for (int start = 0; start < d; ++start) {
            for (int len = 1; len < d; ++len) {
                std::set<std::pair<int, int>> e1, e2;
                for (int i = 0; i < d; ++i) {
                    bool in_first = ((i - start + d) % d) < len;
                    auto& dst = in_first ? e1 : e2;
                    dst.insert(branches[i].begin(), branches[i].end());
                }
                long mx = static_cast<long>(std::max(e1.size(), e2.size()));
                if (best_max < 0 || mx < best_max) {
                    best_max = mx;
                    best.t1 = tree_from_edges(e1);
                    best.t2 = tree_from_edges(e2);
                    best.shared_vertex = v;
                }
            }
        }
    }
    if (best_max < 0) throw MeshError("tree admits no shared-vertex split");
    if (best_max > 22)
        throw MeshError("split bound violated: max(E(t1),E(t2)) = " + std::to_string(best_max) +
                        " > 22");
    return best;
}

TreePair component_trees(const TriMesh& m, const ProximityGraph& h) {
    if (h.components.size() != 2) throw MeshError("component_trees requires exactly two components");
    std::array<Tree, 2> trees;
    for (int c = 0; c < 2; ++c) {
        std::vector<int> anchors;
        for (int local : h.components[c]) anchors.push_back(h.vertices[local]);
        std::vector<std::pair<int, int>> pairs;
        std::set<int> local_set(h.components[c].begin(), h.components[c].end());
        std::vector<char> seen(h.vertices.size(), 0);
        std::deque<int> q{h.components[c][0]};
        seen[h.components[c][0]] = 1;
        while (!q.empty()) {
            int v = q.front();
            q.pop_front();
            for (int u : h.graph.adj[v])
                if (local_set.count(u) && !seen[u]) {
                    seen[u] = 1;
                    pairs.emplace_back(h.vertices[v], h.vertices[u]);
                    q.push_back(u);
                }
        }
        trees[c] = connect_and_prune(m, anchors, pairs);
        if (trees[c].edge_count() > 15)
            throw MeshError("component tree bound violated: " +
                            std::to_string(trees[c].edge_count()) + " > 15");
    }
    for (int v : trees[0].vertices)
        if (trees[1].contains(v)) throw MeshError("component trees are not disjoint");
    TreePair tp;
    tp.t1 = trees[0];
    tp.t2 = trees[1];
    tp.shared_vertex = -1;
    return tp;
}

std::vector<int> tree_boundary_walk(const TriMesh& m, const Tree& t) {
    if (t.edge_count() == 0) return {t.vertices[0]};
    std::set<std::pair<int, int>> edge_set(t.edges.begin(), t.edges.end());
    auto is_tree_edge = [&](int a, int b) { return edge_set.count(norm_edge(a, b)) > 0; };

    int r = t.vertices[0];
    int s = *std::min_element(t.tree_neighbors(r).begin(), t.tree_neighbors(r).end());
    // After arriving at v along (u, v), leave along the first tree edge
    // scanning clockwise from u; the surface fans stay on the walk's left.
    std::vector<int> walk;
    int u = r, v = s;
    do {
        walk.push_back(u);
        int w = m.next_cw(v, u);
        while (!is_tree_edge(v, w)) w = m.next_cw(v, w);
        u = v;
        v = w;
    } while (!(u == r && v == s));
    if (static_cast<int>(walk.size()) != 2 * t.edge_count())
        throw MeshError("tree boundary walk has unexpected length");
    return walk;
}

namespace {

// ---- sweep machinery ----------------------------------------------------

struct SweepSide {
    std::vector<int> walk;                 // current closed walk (or single vertex)
    std::set<int> swept;                   // faces consumed from this side
    std::set<int> reserved_against;        // faces the *other* side may not sweep
    std::vector<std::vector<int>> cycles;  // history
    std::vector<int> kinds;
};

int wedge_face(const TriMesh& m, int v, int slot) {
    return m.face_left_of(v, m.neighbors(v)[slot]);
}

// Faces of the corner fan at walk position k (left wedges of the walk).
std::vector<int> corner_fan(const TriMesh& m, const std::vector<int>& walk, int k,
                            const std::set<int>& all_swept) {
    int n = static_cast<int>(walk.size());
    int v = walk[k], prev = walk[(k + n - 1) % n], next = walk[(k + 1) % n];
    std::vector<int> faces;
    if (prev == next) {
        // Turnaround corner (tree leaf or degenerate 2-walk): every unswept
        // face at v belongs to this corner.
        for (int i = 0; i < m.degree(v); ++i) {
            int f = wedge_face(m, v, i);
            if (!all_swept.count(f)) faces.push_back(f);
        }
        return faces;
    }
    int a = m.rotation_index(v, next), b = m.rotation_index(v, prev), d = m.degree(v);
    for (int i = a; i % d != b % d; ++i) {
        int f = wedge_face(m, v, i % d);
        if (all_swept.count(f))
            throw MeshError("sweep invariant broken: swept face inside a boundary fan");
        faces.push_back(f);
    }
    return faces;
}

bool walks_coincide(const std::vector<int>& a, const std::vector<int>& b) {
    if (a.size() != b.size()) return false;
    auto key = [](const std::vector<int>& w) {
        std::vector<std::pair<int, int>> e;
        int n = static_cast<int>(w.size());
        if (n == 1) return e;
        for (int i = 0; i < n; ++i) e.push_back(norm_edge(w[i], w[(i + 1) % n]));
        std::sort(e.begin(), e.end());
        return e;
    };
    std::vector<int> sa = a, sb = b;
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    return sa == sb && key(a) == key(b);
}

// Applies the lowest-index applicable step of kind 1 or 2 (1 preferred), or
// the degenerate ring step from a one-vertex walk. Updates side in place.
// Faces listed in `blocked` may not be swept.
bool try_step12(const TriMesh& m, SweepSide& side, const std::set<int>& blocked) {
    std::set<int> union_swept = side.swept;
    auto face_ok = [&](const std::vector<int>& fs) {
        for (int f : fs)
            if (blocked.count(f)) return false;
        return true;
    };

    if (side.walk.size() == 1) {
        int v = side.walk[0];
        std::vector<int> star;
        for (int i = 0; i < m.degree(v); ++i) star.push_back(wedge_face(m, v, i));
        if (!face_ok(star)) return false;
        std::vector<int> link(m.neighbors(v).rbegin(), m.neighbors(v).rend());
        side.swept.insert(star.begin(), star.end());
        side.walk = link;
        side.cycles.push_back(side.walk);
        side.kinds.push_back(3);
        return true;
    }
    int n = static_cast<int>(side.walk.size());
    if (n == 2) return false;  // only termination can consume a 2-walk

    // Kind 1: corner with exactly one fan face.
    for (int k = 0; k < n; ++k) {
        auto fan = corner_fan(m, side.walk, k, union_swept);
        if (fan.size() != 1 || !face_ok(fan)) continue;
        side.swept.insert(fan[0]);
        std::vector<int> next_walk;
        for (int i = 0; i < n; ++i)
            if (i != k) next_walk.push_back(side.walk[i]);
        side.walk = std::move(next_walk);
        side.cycles.push_back(side.walk);
        side.kinds.push_back(1);
        return true;
    }
    // Kind 2: corner with exactly two fan faces; reroute through the far vertex.
    for (int k = 0; k < n; ++k) {
        auto fan = corner_fan(m, side.walk, k, union_swept);
        if (fan.size() != 2 || !face_ok(fan)) continue;
        int v = side.walk[k], next = side.walk[(k + 1) % n];
        int x = m.neighbors(v)[(m.rotation_index(v, next) + 1) % m.degree(v)];
        side.swept.insert(fan.begin(), fan.end());
        side.walk[k] = x;
        side.cycles.push_back(side.walk);
        side.kinds.push_back(2);
        return true;
    }
    return false;
}

// Ring advance: all corners have exactly three fan faces.
bool try_step3(const TriMesh& m, SweepSide& side, const std::set<int>& blocked) {
    int n = static_cast<int>(side.walk.size());
    if (n < 3) return false;
    std::vector<std::vector<int>> fans(n);
    std::set<int> to_sweep;
    for (int k = 0; k < n; ++k) {
        fans[k] = corner_fan(m, side.walk, k, side.swept);
        if (fans[k].size() != 3) return false;
        for (int f : fans[k]) {
            if (blocked.count(f)) return false;
            to_sweep.insert(f);
        }
    }
    std::vector<int> ring(n);
    for (int k = 0; k < n; ++k) {
        int v = side.walk[k], prev = side.walk[(k + n - 1) % n];
        // The arc edge just before prev: the second interior vertex of the fan.
        int d = m.degree(v);
        ring[k] = m.neighbors(v)[(m.rotation_index(v, prev) + d - 1) % d];
    }
    for (int k = 0; k < n; ++k)
        if (!m.adjacent(ring[k], ring[(k + 1) % n]))
            throw MeshError("ring advance produced a non-walk");
    side.swept.insert(to_sweep.begin(), to_sweep.end());
    side.walk = std::move(ring);
    side.cycles.push_back(side.walk);
    side.kinds.push_back(3);
    return true;
}

std::set<int> star_faces(const TriMesh& m, int v) {
    std::set<int> out;
    for (int i = 0; i < m.degree(v); ++i) out.insert(wedge_face(m, v, i));
    return out;
}

}  // namespace

SweepTrace sweep_cycles(const TriMesh& m, const TreePair& tp) {
    SweepTrace trace;
    SweepSide s1, s2;
    s1.walk = tree_boundary_walk(m, tp.t1);
    s2.walk = tree_boundary_walk(m, tp.t2);
    s1.cycles.push_back(s1.walk);
    s2.cycles.push_back(s2.walk);
    if (tp.t1.edge_count() == 0) s2.reserved_against = star_faces(m, tp.t1.vertices[0]);
    if (tp.t2.edge_count() == 0) s1.reserved_against = star_faces(m, tp.t2.vertices[0]);

    auto blocked_for = [&](const SweepSide& self, const SweepSide& other) {
        std::set<int> b = other.swept;
        b.insert(self.reserved_against.begin(), self.reserved_against.end());
        return b;
    };

    bool done = walks_coincide(s1.walk, s2.walk);
    long guard = 8L * m.face_count() + 16;
    while (!done && guard-- > 0) {
        if (try_step12(m, s1, blocked_for(s1, s2))) {
        } else if (try_step12(m, s2, blocked_for(s2, s1))) {
        } else if (try_step3(m, s2, blocked_for(s2, s1))) {
        } else if (try_step3(m, s1, blocked_for(s1, s2))) {
        } else {
            std::ostringstream os;
            os << "sweep stuck: side1 length " << s1.walk.size() << ", side2 length "
               << s2.walk.size() << ", swept " << s1.swept.size() << "+" << s2.swept.size()
               << " of " << m.face_count() << " faces";
            trace.diagnostic = os.str();
            break;
        }
        done = walks_coincide(s1.walk, s2.walk);
    }
    if (guard <= 0 && !done) trace.diagnostic = "sweep exceeded the step guard";

    trace.terminated = done;
    trace.side1_steps = static_cast<int>(s1.cycles.size()) - 1;
    trace.cycles = s1.cycles;
    if (done) {
        for (int i = static_cast<int>(s2.cycles.size()) - 2; i >= 0; --i) {
            std::vector<int> rev(s2.cycles[i].rbegin(), s2.cycles[i].rend());
            trace.cycles.push_back(std::move(rev));
        }
        trace.step_kinds = s1.kinds;
        for (int i = static_cast<int>(s2.kinds.size()) - 1; i >= 0; --i)
            trace.step_kinds.push_back(s2.kinds[i]);
    } else {
        trace.step_kinds = s1.kinds;
    }
    for (const auto& cyc : trace.cycles)
        trace.max_length = std::max(trace.max_length, static_cast<int>(cyc.size()));
    return trace;
}

SweepTrace sweep_cycles(const CutMesh& cm) { return sweep_cycles(cm.base, cm.trees); }

bool check_sweep_contracts(const TriMesh& m, const SweepTrace& trace, std::string* why) {
    auto near = [&](int v, const std::vector<int>& cyc) {
        for (int u : cyc)
            if (u == v || m.adjacent(u, v)) return true;
        return false;
    };
    auto near_both = [&](int a, int b, const std::vector<int>& cyc) {
        for (int u : cyc) {
            bool na = (u == a) || m.adjacent(u, a);
            bool nb = (u == b) || m.adjacent(u, b);
            if (na && nb) return true;
        }
        return false;
    };
    for (std::size_t i = 0; i + 1 < trace.cycles.size(); ++i) {
        const auto& c = trace.cycles[i];
        const auto& d = trace.cycles[i + 1];
        for (int v : c)
            if (!near(v, d)) {
                if (why) *why = "vertex contract fails at transition " + std::to_string(i);
                return false;
            }
        for (int v : d)
            if (!near(v, c)) {
                if (why) *why = "vertex contract fails (reverse) at transition " + std::to_string(i);
                return false;
            }
        auto edge_ok = [&](const std::vector<int>& from, const std::vector<int>& to) {
            int n = static_cast<int>(from.size());
            if (n < 2) return true;
            for (int k = 0; k < n; ++k)
                if (!near_both(from[k], from[(k + 1) % n], to)) return false;
            return true;
        };
        if (!edge_ok(c, d) || !edge_ok(d, c)) {
            if (why) *why = "edge contract fails at transition " + std::to_string(i);
            return false;
        }
    }
    return true;
}

// ---- cut surgery ---------------------------------------------------------

CutMesh cut_along_trees(const TriMesh& m, const TreePair& tp) {
    CutMesh cm;
    cm.base = m;
    cm.trees = tp;
    int n = m.vertex_count();

    std::set<std::pair<int, int>> cut_edges;
    std::vector<int> star_vertices;  // single-vertex trees cut to their link
    for (const Tree* t : {&tp.t1, &tp.t2}) {
        if (t->edge_count() == 0)
            star_vertices.push_back(t->vertices[0]);
        else
            cut_edges.insert(t->edges.begin(), t->edges.end());
    }

    cm.face_removed.assign(m.face_count(), 0);
    std::vector<char> vertex_removed(n, 0);
    for (int v : star_vertices) {
        vertex_removed[v] = 1;
        for (int f : star_faces(m, v)) cm.face_removed[f] = 1;
    }

    // wedge_corner[v] maps rotation slot (wedge index) -> corner id. Corner j
    // owns the slots from cut_slots[j] inclusive to cut_slots[j+1] exclusive,
    // cyclically; with a single cut edge the lone corner keeps every slot.
    std::vector<std::vector<int>> wedge_corner(n);
    for (int v = 0; v < n; ++v) {
        if (vertex_removed[v]) {
            wedge_corner[v].clear();
            continue;
        }
        int d = m.degree(v);
        std::vector<int> cut_slots;
        for (int i = 0; i < d; ++i)
            if (cut_edges.count(norm_edge(v, m.neighbors(v)[i]))) cut_slots.push_back(i);
        wedge_corner[v].assign(d, -1);
        if (cut_slots.empty()) {
            int c = cm.corner_count++;
            cm.corner_vertex.push_back(v);
            for (int i = 0; i < d; ++i) wedge_corner[v][i] = c;
        } else {
            int k = static_cast<int>(cut_slots.size());
            for (int j = 0; j < k; ++j) {
                int c = cm.corner_count++;
                cm.corner_vertex.push_back(v);
                int from = cut_slots[j];
                int to = cut_slots[(j + 1) % k];
                int len = (to - from + d) % d;
                if (len == 0) len = d;  // single cut edge: one corner, all slots
                for (int i = 0; i < len; ++i) wedge_corner[v][(from + i) % d] = c;
            }
        }
    }

    cm.face_corners.assign(m.face_count(), {-1, -1, -1});
    cm.corner_faces.assign(cm.corner_count, {});
    cm.kept_faces = 0;
    for (int f = 0; f < m.face_count(); ++f) {
        if (cm.face_removed[f]) continue;
        ++cm.kept_faces;
        const auto& tri = m.faces()[f];
        for (int k = 0; k < 3; ++k) {
            int p = tri[k], q = tri[(k + 1) % 3];
            int slot = m.rotation_index(p, q);  // wedge between q and the next ccw edge
            cm.face_corners[f][k] = wedge_corner[p][slot];
        }
    }
    for (int f = 0; f < m.face_count(); ++f) {
        if (cm.face_removed[f]) continue;
        for (int c : cm.face_corners[f]) cm.corner_faces[c].push_back(f);
    }

    // Edge census of the complex: kept base edges once, cut edges twice,
    // star edges dropped.
    long kept_edges = 0;
    for (int v = 0; v < n; ++v) {
        if (vertex_removed[v]) continue;
        for (int u : m.neighbors(v))
            if (u > v && !vertex_removed[u]) ++kept_edges;
    }
    cm.edge_count = kept_edges + static_cast<long>(cut_edges.size());
    cm.chi = cm.corner_count - static_cast<int>(cm.edge_count) + cm.kept_faces;

    // Boundary edges: one copy of each cut edge per incident face side, plus
    // the link edges of removed stars.
    std::map<int, std::vector<int>> boundary_adj;  // corner -> adjacent boundary corners
    auto add_boundary = [&](int c1, int c2) {
        boundary_adj[c1].push_back(c2);
        boundary_adj[c2].push_back(c1);
    };
    auto corner_at_face = [&](int v, int f) {
        const auto& tri = m.faces()[f];
        for (int k = 0; k < 3; ++k)
            if (tri[k] == v) return cm.face_corners[f][k];
        throw MeshError("vertex not on face");
    };
    for (auto [u, v] : cut_edges) {
        for (int f : {m.face_left_of(u, v), m.face_left_of(v, u)}) {
            if (cm.face_removed[f]) continue;
            add_boundary(corner_at_face(u, f), corner_at_face(v, f));
        }
    }
    for (int sv : star_vertices) {
        const auto& link = m.neighbors(sv);
        int d = static_cast<int>(link.size());
        for (int i = 0; i < d; ++i) {
            int u = link[i], w = link[(i + 1) % d];
            // The wedge face (sv,u,w) was removed; edge (u,w) is now boundary.
            int f_keep = -1;
            auto [fl, fr] = m.edge_faces(u, w);
            f_keep = cm.face_removed[fl] ? fr : fl;
            if (cm.face_removed[f_keep]) throw MeshError("both faces of a link edge removed");
            add_boundary(corner_at_face(u, f_keep), corner_at_face(w, f_keep));
        }
    }

    // Assemble boundary cycles and attribute them to the trees.
    std::set<int> visited;
    std::vector<std::vector<int>> cycles;
    for (auto& [c0, adj] : boundary_adj) {
        if (visited.count(c0)) continue;
        if (adj.size() != 2) throw MeshError("boundary corner without exactly two boundary edges");
        std::vector<int> cyc{c0};
        visited.insert(c0);
        int prev = c0, cur = adj[0];
        while (cur != c0) {
            cyc.push_back(cur);
            visited.insert(cur);
            const auto& a = boundary_adj[cur];
            if (a.size() != 2) throw MeshError("boundary corner without exactly two boundary edges");
            int nxt = (a[0] == prev) ? a[1] : a[0];
            prev = cur;
            cur = nxt;
        }
        cycles.push_back(std::move(cyc));
    }
    auto belongs_to = [&](const std::vector<int>& cyc, const Tree& t) {
        if (t.edge_count() == 0) {
            // Link cycle of the removed star.
            for (int c : cyc)
                if (!m.adjacent(cm.corner_vertex[c], t.vertices[0])) return false;
            return true;
        }
        for (int c : cyc)
            if (t.contains(cm.corner_vertex[c])) return true;
        return false;
    };
    for (auto& cyc : cycles) {
        if (belongs_to(cyc, tp.t1) && cm.boundary1.empty())
            cm.boundary1 = cyc;
        else if (belongs_to(cyc, tp.t2) && cm.boundary2.empty())
            cm.boundary2 = cyc;
    }
    if (cycles.size() == 2 && (cm.boundary1.empty() || cm.boundary2.empty()))
        throw MeshError("could not attribute boundary cycles to the trees");
    return cm;
}

int cut_cycle_curvature(const CutMesh& cm, const std::vector<int>& corner_cycle) {
    const TriMesh& m = cm.base;
    int len = static_cast<int>(corner_cycle.size());
    if (len < 2) throw MeshError("cut cycle too short");
    std::set<std::pair<int, int>> cyc_edges;
    for (int i = 0; i < len; ++i) {
        int a = corner_cycle[i], b = corner_cycle[(i + 1) % len];
        cyc_edges.insert(norm_edge(a, b));
    }

    std::set<std::pair<int, int>> cut_edges;
    for (const Tree* t : {&cm.trees.t1, &cm.trees.t2})
        cut_edges.insert(t->edges.begin(), t->edges.end());

    // Face flood not crossing the corner cycle (and never crossing cut edges).
    auto flood = [&](int seed) {
        std::set<int> comp{seed};
        std::deque<int> q{seed};
        while (!q.empty()) {
            int f = q.front();
            q.pop_front();
            const auto& tri = m.faces()[f];
            for (int k = 0; k < 3; ++k) {
                int u = tri[k], v = tri[(k + 1) % 3];
                if (cut_edges.count(norm_edge(u, v))) continue;
                int g = m.face_left_of(v, u);
                if (cm.face_removed[g] || comp.count(g)) continue;
                int cu = cm.face_corners[f][k];
                int cv = cm.face_corners[f][(k + 1) % 3];
                if (cyc_edges.count(norm_edge(cu, cv))) continue;
                comp.insert(g);
                q.push_back(g);
            }
        }
        return comp;
    };

    if (cm.boundary1.empty() || cm.boundary2.empty())
        throw MeshError("cut mesh does not have two boundary cycles");
    auto ext = flood(cm.corner_faces[cm.boundary2[0]].front());
    auto side1 = flood(cm.corner_faces[cm.boundary1[0]].front());
    bool cycle_is_b1 = cyc_edges.count(norm_edge(cm.boundary1[0], cm.boundary1[1 % cm.boundary1.size()])) > 0 ||
                       walks_coincide(corner_cycle, cm.boundary1);
    if (!cycle_is_b1) {
        for (int f : ext)
            if (side1.count(f))
                throw MeshError("cycle does not separate the two boundaries");
    }

    int total = 0;
    for (int c : corner_cycle) {
        int cnt = 0;
        for (int f : cm.corner_faces[c])
            if (ext.count(f)) ++cnt;
        total += cnt - 3;
    }
    return total;
}

// ---- Case 2 --------------------------------------------------------------

DirectedCycle separating_cycle(const TriMesh& m, int component) {
    ProximityGraph h = proximity_graph(m);
    if (classify_case(h) != CaseKind::Case2)
        throw MeshError("separating_cycle requires Case 2");
    int chosen = -1;
    for (std::size_t i = 0; i < h.components.size(); ++i) {
        if (component >= 0 && static_cast<int>(i) != component) continue;
        if (h.component_multiplicity[i] % 6 != 0) {
            chosen = static_cast<int>(i);
            break;
        }
    }
    if (chosen < 0) throw MeshError("no component with multiplicity not divisible by 6");

    // Region: faces incident to the closed 1-neighborhood of the component.
    std::set<int> n1;
    for (int local : h.components[chosen]) {
        int v = h.vertices[local];
        n1.insert(v);
        for (int u : m.neighbors(v)) n1.insert(u);
    }
    std::set<int> region;
    for (int v : n1)
        for (int i = 0; i < m.degree(v); ++i) region.insert(m.face_left_of(v, m.neighbors(v)[i]));

    // Boundary edges of the region.
    std::map<int, std::vector<int>> badj;
    for (int f : region) {
        const auto& tri = m.faces()[f];
        for (int k = 0; k < 3; ++k) {
            int u = tri[k], v = tri[(k + 1) % 3];
            int g = m.face_left_of(v, u);
            if (!region.count(g)) {
                badj[u].push_back(v);
                badj[v].push_back(u);
            }
        }
    }
    if (badj.empty()) throw MeshError("component region has no boundary");
    for (auto& [v, adj] : badj)
        if (adj.size() != 2)
            throw MeshError("component region boundary is not a simple cycle");

    DirectedCycle c;
    int start = badj.begin()->first;
    int prev = start, cur = badj[start][0];
    c.verts.push_back(start);
    while (cur != start) {
        c.verts.push_back(cur);
        const auto& a = badj[cur];
        int nxt = (a[0] == prev) ? a[1] : a[0];
        prev = cur;
        cur = nxt;
    }
    if (c.verts.size() != badj.size())
        throw MeshError("component region boundary is not a single cycle");
    // Orient with the component side as the interior.
    if (!region.count(m.face_left_of(c.verts[0], c.verts[1]))) c = c.reversed();
    validate_cycle(m, c);

    for (int v : c.verts)
        for (int local = 0; local < static_cast<int>(h.vertices.size()); ++local)
            if (graph_distance(m, v, h.vertices[local]) < 2)
                throw MeshError("separating cycle touches the 1-neighborhood of an irregular vertex");
    return c;
}

std::vector<int> chart_psi(const TriMesh& m, const DirectedCycle& c2, int i) {
    int vi = c2.at(i), vnext = c2.at(i + 1);
    if (m.degree(vi) != 6)
        throw MeshError("chart center is not regular");
    std::vector<int> chart(19, -1);
    chart[0] = vi;
    int i0 = m.rotation_index(vi, vnext);
    std::array<int, 7> u;  // u[1..6]
    for (int t = 0; t < 6; ++t) {
        u[t + 1] = m.neighbors(vi)[(i0 + t) % 6];
        chart[1 + t] = u[t + 1];
        if (m.degree(u[t + 1]) != 6)
            throw MeshError("chart neighbor is not regular");
    }
    for (int j = 1; j <= 6; ++j) {
        int uj = u[j];
        int base = m.rotation_index(uj, vi);
        int ujj = m.neighbors(uj)[(base + 3) % 6];
        int ujj1 = m.neighbors(uj)[(base + 4) % 6];
        chart[7 + 2 * (j - 1)] = ujj;
        chart[8 + 2 * (j - 1)] = ujj1;
        // Orientation and triangle preservation: the same vertex seen from u_{j+1}.
        int un = u[j % 6 + 1];
        int check = m.neighbors(un)[(m.rotation_index(un, vi) + 2) % 6];
        if (check != ujj1)
            throw MeshError("chart is not orientation-consistent around vertex " +
                            std::to_string(vi));
    }
    return chart;
}

Case2Verdict case2_consistency(const TriMesh& m, const std::vector<int>& colors,
                               const DirectedCycle& c2) {
    Case2Verdict verdict;
    validate_cycle(m, c2);
    if (static_cast<int>(colors.size()) != m.vertex_count())
        throw MeshError("color vector size mismatch");

    LatticeFragment gh = fragment(FragmentKind::GH);
    auto isbell_set = all_isbell_colorings();

    std::optional<IsbellParams> frame;
    int extended = 0;
    std::string chart_notes;
    for (int i = 0; i < c2.length(); ++i) {
        std::vector<int> chart;
        try {
            chart = chart_psi(m, c2, i);
        } catch (const MeshError&) {
            continue;
        }
        bool full = true;
        for (int v : chart)
            if (colors[v] <= 0) full = false;
        if (!full) continue;
        int matches = 0;
        IsbellParams found;
        for (const auto& p : isbell_set) {
            bool ok = true;
            for (std::size_t t = 0; t < gh.points.size() && ok; ++t)
                if (isbell_color(p, gh.points[t]) != colors[chart[t]]) ok = false;
            if (ok) {
                ++matches;
                found = p;
            }
        }
        if (matches == 0) {
            chart_notes += "chart " + std::to_string(i) + " not Isbell-extendable; ";
            continue;
        }
        ++extended;
        if (!frame) frame = found;
    }
    verdict.charts_extended = extended;
    if (!frame) {
        verdict.status = Case2Status::NotLocallyIsbell;
        verdict.details = chart_notes.empty() ? "no fully colored chart" : chart_notes;
        return verdict;
    }

    DirectionTable g = direction_table(*frame);
    for (int i = 0; i < c2.length(); ++i) {
        int a = colors[c2.at(i)], b = colors[c2.at(i + 1)];
        if (a <= 0 || b <= 0 || !g.defined(a, b)) {
            verdict.status = Case2Status::NotLocallyIsbell;
            verdict.details = "cycle edge " + std::to_string(i) +
                              " colors are not adjacent-realizable in the Isbell frame";
            return verdict;
        }
    }
    long sum = 0;
    for (int i = 0; i < c2.length(); ++i) {
        int prev = colors[c2.at(i - 1)], cur = colors[c2.at(i)], nxt = colors[c2.at(i + 1)];
        sum += g.lookup(cur, nxt) - g.lookup(prev, cur);
    }
    verdict.telescoped_sum_mod6 = static_cast<int>(((sum % 6) + 6) % 6);

    verdict.curvature = cycle_curvature(m, c2).total;
    verdict.curvature_mod6 = ((verdict.curvature % 6) + 6) % 6;
    if (verdict.curvature_mod6 == verdict.telescoped_sum_mod6) {
        verdict.status = Case2Status::Consistent;
    } else {
        verdict.status = Case2Status::Contradiction;
        verdict.details = "cycle curvature " + std::to_string(verdict.curvature) +
                          " is not divisible by 6 while the direction sum telescopes to 0; " +
                          chart_notes;
    }
    return verdict;
}

}  // namespace sphere7
