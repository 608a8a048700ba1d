#include <doctest.h>

#include "sphere7/coloring.hpp"
#include "sphere7/geometry.hpp"
#include "sphere7/mesh.hpp"

using namespace sphere7;

TEST_CASE("square graph of small graphs") {
    // 3-vertex path squares to the complete graph.
    Graph p3 = Graph::from_edges(3, {{0, 1}, {1, 2}});
    Graph sq = square_graph(p3);
    CHECK(sq.edge_count() == 3);
    // 6-cycle: every vertex gains the two distance-2 vertices, degree 4.
    Graph c6 = Graph::from_edges(6, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 0}});
    Graph sq6 = square_graph(c6);
    for (int v = 0; v < 6; ++v) CHECK(sq6.adj[v].size() == 4);
    // Interior vertex of the triangular lattice: 6 + 12 square-neighbors.
    TriMesh torus = torus_grid_mesh(9, 9);
    Graph sqt = square_graph(Graph::from_mesh(torus));
    CHECK(sqt.adj[40].size() == 18);
}

TEST_CASE("is_nice_coloring validates and witnesses") {
    EmbeddedMesh em = geodesic_sphere(1, 1.0);
    Graph g = Graph::from_mesh(em.mesh);
    std::vector<int> all_distinct(12);
    for (int i = 0; i < 12; ++i) all_distinct[i] = i + 1;
    CHECK(is_nice_coloring(g, all_distinct, 12).ok);

    std::vector<int> constant(12, 1);
    auto bad = is_nice_coloring(g, constant, 12);
    CHECK_FALSE(bad.ok);
    CHECK(bad.witness_u >= 0);
    CHECK(bad.witness_v > bad.witness_u);

    std::vector<int> out_of_range(12, 13);
    CHECK_THROWS(is_nice_coloring(g, out_of_range, 12));
}

TEST_CASE("flat torus with sublattice periods is 7-colorable") {
    // 7x7 grid: the wrap vectors (7,0) and (0,7) satisfy a + 3b = 0 mod 7.
    TriMesh m = torus_grid_mesh(7, 7);
    Graph g = Graph::from_mesh(m);
    SearchOptions opts;
    opts.k = 7;
    opts.mode = SearchMode::Find;
    auto out = search_nice_coloring(g, opts);
    REQUIRE(out.status == SearchOutcome::Status::Sat);
    CHECK(is_nice_coloring(g, *out.coloring, 7).ok);

    // The Isbell linear form is itself a witness.
    std::vector<int> isbell(49);
    for (int i = 0; i < 7; ++i)
        for (int j = 0; j < 7; ++j) isbell[i * 7 + j] = 1 + ((i + 3 * j) % 7);
    CHECK(is_nice_coloring(g, isbell, 7).ok);
}

TEST_CASE("incompatible torus periods are unsat for k = 7") {
    // 6x6 wraps are not same-color lattice vectors, so no nice 7-coloring.
    TriMesh m = torus_grid_mesh(6, 6);
    Graph g = Graph::from_mesh(m);
    SearchOptions opts;
    opts.k = 7;
    opts.mode = SearchMode::ProveUnsat;
    auto out = search_nice_coloring(g, opts);
    CHECK(out.status == SearchOutcome::Status::Unsat);
}

TEST_CASE("find and prove_unsat never disagree") {
    for (int n : {5, 6, 7}) {
        TriMesh m = torus_grid_mesh(n, 7);
        Graph g = Graph::from_mesh(m);
        SearchOptions f, u;
        f.k = u.k = 7;
        f.mode = SearchMode::Find;
        u.mode = SearchMode::ProveUnsat;
        auto fo = search_nice_coloring(g, f);
        auto uo = search_nice_coloring(g, u);
        bool sat_f = fo.status == SearchOutcome::Status::Sat;
        bool sat_u = uo.status == SearchOutcome::Status::Sat;
        CHECK(sat_f == sat_u);
    }
}

TEST_CASE("enumeration count is divisible by k on a vertex-transitive fragment") {
    Graph c5 = Graph::from_edges(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}});
    SearchOptions opts;
    opts.k = 7;
    opts.mode = SearchMode::Enumerate;
    auto out = search_nice_coloring(c5, opts);
    CHECK(out.status == SearchOutcome::Status::Enumerated);
    CHECK(out.count > 0);
    CHECK(out.count % 7 == 0);
}

TEST_CASE("degree at least 7 forces unsat for k = 7") {
    // Star with 7 leaves: the closed neighborhood needs 8 colors.
    std::vector<std::pair<int, int>> edges;
    for (int i = 1; i <= 7; ++i) edges.emplace_back(0, i);
    Graph star = Graph::from_edges(8, edges);
    SearchOptions opts;
    opts.k = 7;
    opts.mode = SearchMode::ProveUnsat;
    CHECK(search_nice_coloring(star, opts).status == SearchOutcome::Status::Unsat);
}

TEST_CASE("frequency-2 geodesic sphere graph has no nice 7-coloring") {
    EmbeddedMesh em = geodesic_sphere(2, 1.0);
    Graph g = Graph::from_mesh(em.mesh);
    SearchOptions opts;
    opts.k = 7;
    opts.mode = SearchMode::ProveUnsat;
    opts.fix_first_neighborhood = true;
    auto out = search_nice_coloring(g, opts);
    CHECK(out.status == SearchOutcome::Status::Unsat);

    // The symmetry-broken result must agree with the unrestricted search.
    SearchOptions plain = opts;
    plain.fix_first_neighborhood = false;
    CHECK(search_nice_coloring(g, plain).status == SearchOutcome::Status::Unsat);
}

TEST_CASE("timeout reports indeterminate, never unsat") {
    EmbeddedMesh em = geodesic_sphere(4, 1.0);
    Graph g = Graph::from_mesh(em.mesh);
    SearchOptions opts;
    opts.k = 7;
    opts.mode = SearchMode::ProveUnsat;
    opts.timeout_seconds = 1e-5;
    auto out = search_nice_coloring(g, opts);
    CHECK(out.status == SearchOutcome::Status::Indeterminate);
}

TEST_CASE("fixed partial assignments are respected") {
    Graph p3 = Graph::from_edges(3, {{0, 1}, {1, 2}});
    SearchOptions opts;
    opts.k = 3;
    opts.mode = SearchMode::Enumerate;
    opts.fixed = {1, 0, 0};
    auto out = search_nice_coloring(p3, opts);
    // Path of 3 squares to K3: the two free vertices take the remaining colors.
    CHECK(out.count == 2);
}

TEST_CASE("chromatic number brute force") {
    Graph k4 = Graph::from_edges(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
    CHECK(chromatic_number(k4) == 4);
    Graph c5 = Graph::from_edges(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}});
    CHECK(chromatic_number(c5) == 3);
}
