#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace sphere7 {

struct MeshError : std::runtime_error {
    explicit MeshError(const std::string& what) : std::runtime_error(what) {}
};

/// Oriented, fully triangulated closed surface stored as a rotation system:
/// rotation[v] lists the neighbors of v in counterclockwise order. Faces,
/// edge count and the Euler characteristic are derived at construction and
/// the object is immutable afterwards.
class TriMesh {
public:
    /// Builds the mesh from oriented faces (counterclockwise vertex triples).
    /// Vertex ids must be dense in 0..V-1. Throws MeshError on non-manifold
    /// input, inconsistent orientation, or a disconnected surface.
    static TriMesh from_faces(int vertex_count, const std::vector<std::array<int, 3>>& faces);

    /// Rebuilds a mesh from a rotation system, re-deriving and validating the
    /// face structure.
    static TriMesh from_rotation(std::vector<std::vector<int>> rotation);

    int vertex_count() const { return static_cast<int>(rotation_.size()); }
    long edge_count() const { return edge_count_; }
    int face_count() const { return static_cast<int>(faces_.size()); }
    int euler_characteristic() const { return chi_; }

    const std::vector<std::vector<int>>& rotation() const { return rotation_; }
    const std::vector<int>& neighbors(int v) const { return rotation_[v]; }
    int degree(int v) const { return static_cast<int>(rotation_[v].size()); }
    const std::vector<std::array<int, 3>>& faces() const { return faces_; }

    bool adjacent(int u, int v) const;
    /// Index of u in rotation[v]; throws if not adjacent.
    int rotation_index(int v, int u) const;
    /// Neighbor following u counterclockwise around v.
    int next_ccw(int v, int u) const;
    /// Neighbor preceding u counterclockwise around v (= next clockwise).
    int next_cw(int v, int u) const;

    /// Face lying to the left of the directed edge (u -> v).
    int face_left_of(int u, int v) const;
    /// The two faces incident to the undirected edge {u, v}: (left of u->v, left of v->u).
    std::pair<int, int> edge_faces(int u, int v) const;

private:
    std::vector<std::vector<int>> rotation_;
    std::vector<std::array<int, 3>> faces_;
    // face_left_[v] aligned with rotation_[v]: face to the left of (v -> rotation_[v][i]).
    std::vector<std::vector<int>> face_left_;
    long edge_count_ = 0;
    int chi_ = 0;

    void derive_faces_and_validate();
};

/// Directed simple cycle; consecutive vertices (indices mod length) are mesh
/// edges. The side to the left of the traversal is the interior.
struct DirectedCycle {
    std::vector<int> verts;

    int length() const { return static_cast<int>(verts.size()); }
    int at(int i) const {
        int n = length();
        return verts[((i % n) + n) % n];
    }
    DirectedCycle reversed() const {
        DirectedCycle r{std::vector<int>(verts.rbegin(), verts.rend())};
        return r;
    }
    bool same_undirected(const DirectedCycle& other) const;
};

/// Checks simplicity and edge-validity of a cycle against a mesh; throws on violation.
void validate_cycle(const TriMesh& m, const DirectedCycle& c);

/// Triangle/vertex/edge census of the region to the left of a directed cycle.
struct Region {
    std::vector<int> triangles;                   // face ids, sorted
    std::vector<int> interior_vertices;           // sorted
    std::vector<std::pair<int, int>> open_edges;  // interior open edges, endpoints ordered, sorted
};

/// Flood fill of the side left of (v0, v1), never crossing the cycle.
/// Throws MeshError for non-simple or non-separating cycles.
Region interior_region(const TriMesh& m, const DirectedCycle& c);

/// Irregular vertices (degree < 6) with multiplicity 6 - degree.
std::vector<std::pair<int, int>> irregular_vertices(const TriMesh& m);
/// Sum of multiplicities; 12 on every sphere mesh.
int irregular_multiplicity_sum(const TriMesh& m);

/// Closed i-neighborhood N_i(v): vertices within graph distance i.
std::vector<int> neighborhood(const TriMesh& m, int v, int radius);
/// Strict i-neighborhood n_i(v): vertices at graph distance exactly i.
std::vector<int> strict_neighborhood(const TriMesh& m, int v, int radius);

int graph_distance(const TriMesh& m, int u, int v);
int distance_to_set(const TriMesh& m, int v, const std::vector<int>& set);
/// Single-source distances by breadth-first search.
std::vector<int> bfs_distances(const TriMesh& m, int source, int cap = -1);

enum class ExecMode { Serial, Parallel };

/// All-pairs graph distances. The parallel variant runs the per-source
/// searches under OpenMP; results are identical to the serial reference.
std::vector<std::vector<int>> all_pairs_distances(const TriMesh& m, ExecMode mode = ExecMode::Parallel);

struct TriangleAdjacency {
    int node_count = 0;                      // = face count
    std::vector<std::array<int, 3>> adj;     // neighbors of each face across its 3 edges
    bool connected = false;
};

TriangleAdjacency triangle_adjacency_graph(const TriMesh& m);

/// Flat triangular-lattice torus (all vertices regular); chi = 0.
/// Requires n, m >= 4 so the quotient stays a simple graph.
TriMesh torus_grid_mesh(int n, int m);

/// Connected sum of two meshes along one face of each; chi = chi1 + chi2 - 2.
TriMesh connected_sum(const TriMesh& a, const TriMesh& b, int face_a = 0, int face_b = 0);

}  // namespace sphere7
