#pragma once

#include <array>
#include <map>
#include <random>
#include <set>
#include <vector>

#include "sphere7/mesh.hpp"

namespace sphere7::testsupport {

inline TriMesh tetrahedron() {
    return TriMesh::from_faces(4, {{0, 1, 2}, {0, 2, 3}, {0, 3, 1}, {1, 3, 2}});
}

inline TriMesh octahedron() {
    // Vertices: 0 north, 5 south, 1..4 equator (counterclockwise from north).
    return TriMesh::from_faces(6, {{0, 1, 2},
                                   {0, 2, 3},
                                   {0, 3, 4},
                                   {0, 4, 1},
                                   {5, 2, 1},
                                   {5, 3, 2},
                                   {5, 4, 3},
                                   {5, 1, 4}});
}

/// Grows a random edge-connected disk of triangles whose boundary is a single
/// simple cycle, oriented with the region on its left. Retries until found.
inline DirectedCycle random_simple_cycle(const TriMesh& m, std::mt19937& rng,
                                         std::set<int>* region_out = nullptr) {
    std::uniform_int_distribution<int> face_pick(0, m.face_count() - 1);
    for (int attempt = 0; attempt < 1000; ++attempt) {
        std::set<int> region;
        std::vector<int> frontier;
        int seed = face_pick(rng);
        region.insert(seed);
        frontier.push_back(seed);
        std::uniform_int_distribution<int> size_pick(1, std::max(1, m.face_count() / 2));
        int want = size_pick(rng);
        while (static_cast<int>(region.size()) < want && !frontier.empty()) {
            std::uniform_int_distribution<std::size_t> fp(0, frontier.size() - 1);
            std::size_t fi = fp(rng);
            int f = frontier[fi];
            const auto& tri = m.faces()[f];
            bool grew = false;
            for (int k = 0; k < 3 && !grew; ++k) {
                int g = m.face_left_of(tri[(k + 1) % 3], tri[k]);
                if (!region.count(g)) {
                    region.insert(g);
                    frontier.push_back(g);
                    grew = true;
                }
            }
            if (!grew) frontier.erase(frontier.begin() + fi);
        }
        if (static_cast<int>(region.size()) == m.face_count()) continue;

        // Boundary edges of the region.
        std::map<int, std::vector<int>> badj;
        std::set<std::pair<int, int>> bedges;
        for (int f : region) {
            const auto& tri = m.faces()[f];
            for (int k = 0; k < 3; ++k) {
                int u = tri[k], v = tri[(k + 1) % 3];
                if (!region.count(m.face_left_of(v, u))) {
                    badj[u].push_back(v);
                    badj[v].push_back(u);
                    bedges.insert({std::min(u, v), std::max(u, v)});
                }
            }
        }
        bool simple = !badj.empty();
        for (auto& [v, adj] : badj)
            if (adj.size() != 2) simple = false;
        if (!simple) continue;

        DirectedCycle c;
        int start = badj.begin()->first;
        int prev = start, cur = badj[start][0];
        c.verts.push_back(start);
        while (cur != start) {
            c.verts.push_back(cur);
            auto& a = badj[cur];
            int nxt = (a[0] == prev) ? a[1] : a[0];
            prev = cur;
            cur = nxt;
        }
        if (c.verts.size() != badj.size()) continue;  // several boundary loops
        if (!region.count(m.face_left_of(c.verts[0], c.verts[1]))) c = c.reversed();
        try {
            validate_cycle(m, c);
        } catch (const MeshError&) {
            continue;
        }
        if (region_out) *region_out = region;
        return c;
    }
    throw std::runtime_error("could not sample a simple separating cycle");
}

}  // namespace sphere7::testsupport
