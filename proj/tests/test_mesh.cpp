#include <doctest.h>

#include <algorithm>
#include <set>

#include "sphere7/geometry.hpp"
#include "sphere7/mesh.hpp"
#include "support.hpp"

using namespace sphere7;
using namespace sphere7::testsupport;

TEST_CASE("tetrahedron census") {
    TriMesh m = tetrahedron();
    CHECK(m.vertex_count() == 4);
    CHECK(m.edge_count() == 6);
    CHECK(m.face_count() == 4);
    CHECK(m.euler_characteristic() == 2);
    // Complete graph: every distinct pair at distance 1.
    for (int u = 0; u < 4; ++u)
        for (int v = 0; v < 4; ++v)
            if (u != v) CHECK(graph_distance(m, u, v) == 1);
}

TEST_CASE("icosahedron census and E = 3V - 6") {
    EmbeddedMesh em = geodesic_sphere(1, 1.0);
    const TriMesh& m = em.mesh;
    CHECK(m.vertex_count() == 12);
    CHECK(m.edge_count() == 30);
    CHECK(m.euler_characteristic() == 2);
    CHECK(m.edge_count() == 3 * m.vertex_count() - 6);
    auto irr = irregular_vertices(m);
    CHECK(irr.size() == 12);
    for (auto [v, mult] : irr) {
        (void)v;
        CHECK(mult == 1);
    }
    CHECK(irregular_multiplicity_sum(m) == 12);
}

TEST_CASE("octahedron irregular multiplicities") {
    TriMesh m = octahedron();
    auto irr = irregular_vertices(m);
    CHECK(irr.size() == 6);
    for (auto [v, mult] : irr) {
        (void)v;
        CHECK(mult == 2);
    }
    CHECK(irregular_multiplicity_sum(m) == 12);
}

TEST_CASE("flat torus grid has no irregular vertices") {
    TriMesh m = torus_grid_mesh(5, 6);
    CHECK(m.euler_characteristic() == 0);
    CHECK(m.edge_count() == 3 * m.vertex_count());
    CHECK(irregular_vertices(m).empty());
}

TEST_CASE("non-manifold input is rejected") {
    // Edge (0,1) bordered by three faces of consistent orientation.
    CHECK_THROWS_AS(TriMesh::from_faces(5, {{0, 1, 2}, {1, 0, 3}, {1, 0, 4}, {0, 1, 4}}),
                    MeshError);
    // Inconsistent orientation: (0,1) used twice in the same direction.
    CHECK_THROWS_AS(TriMesh::from_faces(4, {{0, 1, 2}, {0, 1, 3}, {0, 3, 1}, {2, 1, 3}}),
                    MeshError);
}

TEST_CASE("neighborhood sizes on a flat grid") {
    TriMesh m = torus_grid_mesh(9, 9);
    CHECK(neighborhood(m, 0, 0) == std::vector<int>{0});
    CHECK(neighborhood(m, 40, 1).size() == 7);
    CHECK(neighborhood(m, 40, 2).size() == 19);
    CHECK(strict_neighborhood(m, 40, 2).size() == 12);
}

TEST_CASE("interior region of a face boundary") {
    EmbeddedMesh em = geodesic_sphere(1, 1.0);
    const TriMesh& m = em.mesh;
    auto f = m.faces()[7];
    DirectedCycle c{{f[0], f[1], f[2]}};
    Region r = interior_region(m, c);
    CHECK(r.triangles.size() == 1);
    CHECK(r.interior_vertices.empty());
    CHECK(r.open_edges.empty());
}

TEST_CASE("octahedron equator splits four and four") {
    TriMesh oct = octahedron();
    DirectedCycle eq{{1, 2, 3, 4}};
    Region r1 = interior_region(oct, eq);
    Region r2 = interior_region(oct, eq.reversed());
    CHECK(r1.triangles.size() == 4);
    CHECK(r2.triangles.size() == 4);
    CHECK(r1.interior_vertices.size() == 1);
    CHECK(r2.interior_vertices.size() == 1);
    CHECK(r1.interior_vertices != r2.interior_vertices);
    CHECK(r1.triangles != r2.triangles);
}

TEST_CASE("region partition identity on random cycles") {
    std::mt19937 rng(7);
    EmbeddedMesh em = geodesic_sphere(3, 1.0);
    const TriMesh& m = em.mesh;
    for (int trial = 0; trial < 25; ++trial) {
        DirectedCycle c = random_simple_cycle(m, rng);
        Region in = interior_region(m, c);
        Region out = interior_region(m, c.reversed());
        CHECK(static_cast<int>(in.triangles.size() + out.triangles.size()) == m.face_count());
        std::set<int> cyc(c.verts.begin(), c.verts.end());
        CHECK(static_cast<int>(in.interior_vertices.size() + out.interior_vertices.size() +
                               cyc.size()) == m.vertex_count());
        CHECK(static_cast<long>(in.open_edges.size() + out.open_edges.size() + c.verts.size()) ==
              m.edge_count());
    }
}

TEST_CASE("non-separating cycle on a torus is rejected") {
    TriMesh m = torus_grid_mesh(6, 6);
    // A straight line wrapping the torus: vertices (i, 0).
    DirectedCycle wrap{{0, 6, 12, 18, 24, 30}};
    CHECK_THROWS_AS(interior_region(m, wrap), MeshError);
}

TEST_CASE("icosahedron distances and triangle adjacency") {
    EmbeddedMesh em = geodesic_sphere(1, 1.0);
    const TriMesh& m = em.mesh;
    int far = -1;
    for (int v = 1; v < m.vertex_count(); ++v)
        if (graph_distance(m, 0, v) == 3) far = v;
    CHECK(far >= 0);  // the antipodal vertex

    TriangleAdjacency ta = triangle_adjacency_graph(m);
    CHECK(ta.node_count == 20);
    CHECK(ta.connected);

    TriangleAdjacency tt = triangle_adjacency_graph(tetrahedron());
    CHECK(tt.node_count == 4);
    CHECK(tt.connected);
}

TEST_CASE("all pairs distances parallel matches serial") {
    EmbeddedMesh em = geodesic_sphere(3, 1.0);
    auto a = all_pairs_distances(em.mesh, ExecMode::Serial);
    auto b = all_pairs_distances(em.mesh, ExecMode::Parallel);
    CHECK(a == b);
}

TEST_CASE("connected sum builds the Euler obstruction mesh") {
    TriMesh g2 = connected_sum(torus_grid_mesh(6, 9), torus_grid_mesh(7, 7));
    CHECK(g2.vertex_count() == 100);
    CHECK(g2.euler_characteristic() == -2);
    CHECK(g2.edge_count() == 306);
}
