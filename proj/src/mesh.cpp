#include "sphere7/mesh.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace sphere7 {

namespace {

std::string edge_str(int u, int v) {
    return "(" + std::to_string(u) + "," + std::to_string(v) + ")";
}

}  // namespace

TriMesh TriMesh::from_faces(int vertex_count, const std::vector<std::array<int, 3>>& faces) {
    if (vertex_count <= 0 || faces.empty()) throw MeshError("empty mesh input");
    // succ[v][u] = w meaning: in face (.., u, v?) -- for face (a,b,c) ccw, the
    // neighbor after b counterclockwise around a is c.
    std::vector<std::unordered_map<int, int>> succ(vertex_count);
    for (const auto& f : faces) {
        for (int k = 0; k < 3; ++k) {
            int a = f[k], b = f[(k + 1) % 3], c = f[(k + 2) % 3];
            if (a < 0 || a >= vertex_count) throw MeshError("face vertex id out of range");
            if (a == b || b == c || a == c) throw MeshError("degenerate face");
            auto [it, inserted] = succ[a].emplace(b, c);
            (void)it;
            if (!inserted)
                throw MeshError("edge " + edge_str(a, b) +
                                " incident to more than one face on the same side "
                                "(non-manifold or inconsistent orientation)");
        }
    }
    TriMesh m;
    m.rotation_.assign(vertex_count, {});
    for (int v = 0; v < vertex_count; ++v) {
        if (succ[v].empty()) throw MeshError("isolated vertex " + std::to_string(v));
        // Stitch the umbrella; it must close into a single cycle over all neighbors.
        int start = succ[v].begin()->first;
        int cur = start;
        do {
            m.rotation_[v].push_back(cur);
            auto it = succ[v].find(cur);
            if (it == succ[v].end())
                throw MeshError("open umbrella at vertex " + std::to_string(v) +
                                " (edge with only one incident face)");
            cur = it->second;
            if (m.rotation_[v].size() > succ[v].size())
                throw MeshError("umbrella at vertex " + std::to_string(v) + " does not close");
        } while (cur != start);
        if (m.rotation_[v].size() != succ[v].size())
            throw MeshError("split umbrella at vertex " + std::to_string(v) +
                            " (link is not a single cycle)");
    }
    m.derive_faces_and_validate();
    return m;
}

TriMesh TriMesh::from_rotation(std::vector<std::vector<int>> rotation) {
    if (rotation.empty()) throw MeshError("empty rotation system");
    TriMesh m;
    m.rotation_ = std::move(rotation);
    int n = m.vertex_count();
    for (int v = 0; v < n; ++v) {
        if (m.rotation_[v].empty()) throw MeshError("isolated vertex " + std::to_string(v));
        std::set<int> seen;
        for (int u : m.rotation_[v]) {
            if (u < 0 || u >= n || u == v) throw MeshError("bad neighbor id in rotation");
            if (!seen.insert(u).second) throw MeshError("repeated neighbor in rotation");
        }
    }
    m.derive_faces_and_validate();
    return m;
}

void TriMesh::derive_faces_and_validate() {
    int n = vertex_count();
    // Symmetry of the edge relation.
    long deg_sum = 0;
    for (int v = 0; v < n; ++v) {
        deg_sum += degree(v);
        for (int u : rotation_[v]) {
            const auto& ru = rotation_[u];
            if (std::find(ru.begin(), ru.end(), v) == ru.end())
                throw MeshError("edge " + edge_str(v, u) + " missing from the rotation of " +
                                std::to_string(u));
        }
    }
    if (deg_sum % 2 != 0) throw MeshError("odd degree sum");
    edge_count_ = deg_sum / 2;

    // Trace faces: the face left of (u -> v) continues with (v -> w), w the
    // clockwise-next neighbor of u around v. Every face must close in 3 steps.
    faces_.clear();
    face_left_.assign(n, {});
    for (int v = 0; v < n; ++v) face_left_[v].assign(degree(v), -1);
    for (int u = 0; u < n; ++u) {
        for (int i = 0; i < degree(u); ++i) {
            if (face_left_[u][i] != -1) continue;
            int v = rotation_[u][i];
            int w = next_cw(v, u);
            int x = next_cw(w, v);
            if (x != u)
                throw MeshError("face left of " + edge_str(u, v) +
                                " is not a triangle (surface not fully triangulated)");
            int id = static_cast<int>(faces_.size());
            faces_.push_back({u, v, w});
            face_left_[u][i] = id;
            face_left_[v][rotation_index(v, w)] = id;
            face_left_[w][rotation_index(w, u)] = id;
        }
    }
    if (static_cast<long>(faces_.size()) * 3 != 2 * edge_count_)
        throw MeshError("face census does not match 2|E|/3");
    chi_ = n - static_cast<int>(edge_count_) + static_cast<int>(faces_.size());

    // Vertex connectivity.
    std::vector<char> vis(n, 0);
    std::deque<int> q{0};
    vis[0] = 1;
    int reached = 1;
    while (!q.empty()) {
        int v = q.front();
        q.pop_front();
        for (int u : rotation_[v])
            if (!vis[u]) {
                vis[u] = 1;
                ++reached;
                q.push_back(u);
            }
    }
    if (reached != n) throw MeshError("mesh is disconnected");
}

bool TriMesh::adjacent(int u, int v) const {
    const auto& r = rotation_[u];
    return std::find(r.begin(), r.end(), v) != r.end();
}

int TriMesh::rotation_index(int v, int u) const {
    const auto& r = rotation_[v];
    auto it = std::find(r.begin(), r.end(), u);
    if (it == r.end()) throw MeshError("vertices " + edge_str(v, u) + " are not adjacent");
    return static_cast<int>(it - r.begin());
}

int TriMesh::next_ccw(int v, int u) const {
    const auto& r = rotation_[v];
    return r[(rotation_index(v, u) + 1) % r.size()];
}

int TriMesh::next_cw(int v, int u) const {
    const auto& r = rotation_[v];
    int i = rotation_index(v, u);
    return r[(i + r.size() - 1) % r.size()];
}

int TriMesh::face_left_of(int u, int v) const { return face_left_[u][rotation_index(u, v)]; }

std::pair<int, int> TriMesh::edge_faces(int u, int v) const {
    return {face_left_of(u, v), face_left_of(v, u)};
}

bool DirectedCycle::same_undirected(const DirectedCycle& other) const {
    if (verts.size() != other.verts.size()) return false;
    auto edges = [](const DirectedCycle& c) {
        std::vector<std::pair<int, int>> e;
        int n = c.length();
        for (int i = 0; i < n; ++i) {
            int a = c.verts[i], b = c.verts[(i + 1) % n];
            e.emplace_back(std::min(a, b), std::max(a, b));
        }
        std::sort(e.begin(), e.end());
        return e;
    };
    return edges(*this) == edges(other);
}

void validate_cycle(const TriMesh& m, const DirectedCycle& c) {
    int n = c.length();
    if (n < 3) throw MeshError("cycle too short");
    std::set<int> seen;
    for (int i = 0; i < n; ++i) {
        if (!seen.insert(c.verts[i]).second) throw MeshError("cycle is not simple");
        if (!m.adjacent(c.verts[i], c.verts[(i + 1) % n]))
            throw MeshError("cycle edge " + edge_str(c.verts[i], c.verts[(i + 1) % n]) +
                            " is not a mesh edge");
    }
}

Region interior_region(const TriMesh& m, const DirectedCycle& c) {
    validate_cycle(m, c);
    int n = c.length();
    std::set<std::pair<int, int>> cycle_edges;
    std::vector<char> on_cycle(m.vertex_count(), 0);
    for (int i = 0; i < n; ++i) {
        int a = c.verts[i], b = c.verts[(i + 1) % n];
        cycle_edges.emplace(std::min(a, b), std::max(a, b));
        on_cycle[a] = 1;
    }
    auto crosses = [&](int u, int v) {
        return cycle_edges.count({std::min(u, v), std::max(u, v)}) > 0;
    };

    int seed = m.face_left_of(c.verts[0], c.verts[1]);
    int anti_seed = m.face_left_of(c.verts[1], c.verts[0]);
    std::vector<char> in(m.face_count(), 0);
    std::deque<int> q{seed};
    in[seed] = 1;
    while (!q.empty()) {
        int f = q.front();
        q.pop_front();
        const auto& tri = m.faces()[f];
        for (int k = 0; k < 3; ++k) {
            int u = tri[k], v = tri[(k + 1) % 3];
            if (crosses(u, v)) continue;
            int g = m.face_left_of(v, u);
            if (!in[g]) {
                if (g == anti_seed)
                    throw MeshError("cycle does not separate the surface");
                in[g] = 1;
                q.push_back(g);
            }
        }
    }

    Region r;
    std::set<int> ivs;
    std::set<std::pair<int, int>> oes;
    for (int f = 0; f < m.face_count(); ++f) {
        if (!in[f]) continue;
        r.triangles.push_back(f);
        const auto& tri = m.faces()[f];
        for (int k = 0; k < 3; ++k) {
            int u = tri[k], v = tri[(k + 1) % 3];
            if (!on_cycle[u]) ivs.insert(u);
            auto e = std::make_pair(std::min(u, v), std::max(u, v));
            if (!cycle_edges.count(e)) oes.insert(e);
        }
    }
    r.interior_vertices.assign(ivs.begin(), ivs.end());
    r.open_edges.assign(oes.begin(), oes.end());
    return r;
}

std::vector<std::pair<int, int>> irregular_vertices(const TriMesh& m) {
    std::vector<std::pair<int, int>> out;
    for (int v = 0; v < m.vertex_count(); ++v)
        if (m.degree(v) < 6) out.emplace_back(v, 6 - m.degree(v));
    return out;
}

int irregular_multiplicity_sum(const TriMesh& m) {
    int s = 0;
    for (auto [v, mult] : irregular_vertices(m)) {
        (void)v;
        s += mult;
    }
    return s;
}

std::vector<int> bfs_distances(const TriMesh& m, int source, int cap) {
    std::vector<int> dist(m.vertex_count(), -1);
    std::deque<int> q{source};
    dist[source] = 0;
    while (!q.empty()) {
        int v = q.front();
        q.pop_front();
        if (cap >= 0 && dist[v] >= cap) continue;
        for (int u : m.neighbors(v))
            if (dist[u] < 0) {
                dist[u] = dist[v] + 1;
                q.push_back(u);
            }
    }
    return dist;
}

std::vector<int> neighborhood(const TriMesh& m, int v, int radius) {
    auto dist = bfs_distances(m, v, radius);
    std::vector<int> out;
    for (int u = 0; u < m.vertex_count(); ++u)
        if (dist[u] >= 0 && dist[u] <= radius) out.push_back(u);
    return out;
}

std::vector<int> strict_neighborhood(const TriMesh& m, int v, int radius) {
    auto dist = bfs_distances(m, v, radius);
    std::vector<int> out;
    for (int u = 0; u < m.vertex_count(); ++u)
        if (dist[u] == radius) out.push_back(u);
    return out;
}

int graph_distance(const TriMesh& m, int u, int v) {
    auto d = bfs_distances(m, u);
    return d[v];
}

int distance_to_set(const TriMesh& m, int v, const std::vector<int>& set) {
    if (set.empty()) throw MeshError("distance to empty set");
    std::vector<int> dist(m.vertex_count(), -1);
    std::deque<int> q;
    for (int s : set)
        if (dist[s] < 0) {
            dist[s] = 0;
            q.push_back(s);
        }
    while (!q.empty()) {
        int x = q.front();
        q.pop_front();
        if (x == v) return dist[x];
        for (int u : m.neighbors(x))
            if (dist[u] < 0) {
                dist[u] = dist[x] + 1;
                q.push_back(u);
            }
    }
    return dist[v];
}

std::vector<std::vector<int>> all_pairs_distances(const TriMesh& m, ExecMode mode) {
    int n = m.vertex_count();
    std::vector<std::vector<int>> d(n);
#ifdef _OPENMP
    if (mode == ExecMode::Parallel) {
#pragma omp parallel for schedule(dynamic)
        for (int v = 0; v < n; ++v) d[v] = bfs_distances(m, v);
        return d;
    }
#else
    (void)mode;
#endif
    for (int v = 0; v < n; ++v) d[v] = bfs_distances(m, v);
    return d;
}

TriangleAdjacency triangle_adjacency_graph(const TriMesh& m) {
    TriangleAdjacency g;
    g.node_count = m.face_count();
    g.adj.assign(g.node_count, {-1, -1, -1});
    for (int f = 0; f < g.node_count; ++f) {
        const auto& tri = m.faces()[f];
        for (int k = 0; k < 3; ++k) {
            int u = tri[k], v = tri[(k + 1) % 3];
            g.adj[f][k] = m.face_left_of(v, u);
        }
    }
    std::vector<char> vis(g.node_count, 0);
    std::deque<int> q{0};
    vis[0] = 1;
    int reached = 1;
    while (!q.empty()) {
        int f = q.front();
        q.pop_front();
        for (int h : g.adj[f])
            if (!vis[h]) {
                vis[h] = 1;
                ++reached;
                q.push_back(h);
            }
    }
    g.connected = (reached == g.node_count);
    return g;
}

TriMesh torus_grid_mesh(int n, int m) {
    if (n < 4 || m < 4) throw MeshError("torus grid requires n, m >= 4");
    auto id = [&](int i, int j) { return ((i % n + n) % n) * m + ((j % m + m) % m); };
    std::vector<std::array<int, 3>> faces;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < m; ++j) {
            faces.push_back({id(i, j), id(i + 1, j), id(i, j + 1)});
            faces.push_back({id(i + 1, j), id(i + 1, j + 1), id(i, j + 1)});
        }
    return TriMesh::from_faces(n * m, faces);
}

TriMesh connected_sum(const TriMesh& a, const TriMesh& b, int face_a, int face_b) {
    const auto& fa = a.faces()[face_a];
    const auto& fb = b.faces()[face_b];
    int na = a.vertex_count();
    // Identify fb's corners with fa's in reversed order so orientations mate.
    std::vector<int> remap(b.vertex_count(), -1);
    remap[fb[0]] = fa[0];
    remap[fb[1]] = fa[2];
    remap[fb[2]] = fa[1];
    int next_id = na;
    for (int v = 0; v < b.vertex_count(); ++v)
        if (remap[v] < 0) remap[v] = next_id++;

    std::vector<std::array<int, 3>> faces;
    for (int f = 0; f < a.face_count(); ++f)
        if (f != face_a) faces.push_back(a.faces()[f]);
    for (int f = 0; f < b.face_count(); ++f) {
        if (f == face_b) continue;
        const auto& t = b.faces()[f];
        faces.push_back({remap[t[0]], remap[t[1]], remap[t[2]]});
    }
    return TriMesh::from_faces(next_id, faces);
}

}  // namespace sphere7
