#pragma once

#include <array>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "sphere7/isbell.hpp"
#include "sphere7/mesh.hpp"

namespace sphere7 {

struct CurvatureResult {
    int total = 0;
    std::vector<int> per_vertex;  // aligned with the cycle
};

/// Local curvature 2 - deg_int summed over the cycle; requires a simple
/// separating cycle (interior = left side).
CurvatureResult cycle_curvature(const TriMesh& m, const DirectedCycle& c);

/// Multiplicity-weighted count of irregular vertices strictly inside c.
int irregular_inside(const TriMesh& m, const DirectedCycle& c);

enum class ContractStepKind { Type1, Type2 };

struct ContractStep {
    DirectedCycle cycle;    // cycle after the step
    ContractStepKind kind;
    int pivot;              // Type1: removed cycle vertex; Type2: inserted interior vertex
    int curvature_after;
};

struct ContractionTrace {
    DirectedCycle initial;
    int initial_curvature = 0;
    std::vector<ContractStep> steps;
};

/// One contraction step. Type1 cuts a corner whose triangle has two sides on
/// the cycle; Type2 reroutes one cycle edge through the interior vertex of
/// its inner triangle. Interior triangle count drops by exactly one.
std::pair<DirectedCycle, ContractStepKind> contract_step(const TriMesh& m, const DirectedCycle& c);

/// Contracts until the closed interior is a single triangle, recording the
/// curvature after every step.
ContractionTrace contract_to_triangle(const TriMesh& m, const DirectedCycle& c);

/// Graph H on the irregular vertices, edges between those at mesh graph
/// distance <= 3. Component structure drives the case split.
struct ProximityGraph {
    std::vector<int> vertices;        // mesh ids of irregular vertices
    std::vector<int> multiplicities;  // aligned, 6 - degree
    Graph graph;                      // on local indices
    std::vector<std::vector<int>> components;       // local indices, sorted
    std::vector<int> component_multiplicity;
    int multiplicity_sum = 0;
};

ProximityGraph proximity_graph(const TriMesh& m);

enum class CaseKind { Case1a, Case1b, Case2 };
CaseKind classify_case(const ProximityGraph& h);
const char* to_string(CaseKind k);

struct Tree {
    std::vector<int> vertices;                  // sorted mesh ids
    std::vector<std::pair<int, int>> edges;     // normalized (min,max), sorted
    int edge_count() const { return static_cast<int>(edges.size()); }
    bool contains(int v) const;
    std::vector<int> tree_neighbors(int v) const;
};

/// Steiner-style tree over all irregular vertices: spanning tree of H,
/// shortest connecting paths (length <= 3), then pruned. Edge count <= 33 is
/// asserted. Requires H connected (Case 1a).
Tree steiner_tree(const TriMesh& m, const ProximityGraph& h);

struct TreePair {
    Tree t1, t2;
    int shared_vertex = -1;  // -1 when vertex-disjoint (Case 1b)
};

/// Case 1a: exhaustive minimization over single shared-vertex splits whose
/// branch sets are consecutive around the joint vertex. max(E1,E2) <= 22 is
/// asserted, never silently accepted.
TreePair split_tree(const TriMesh& m, const Tree& t0);

/// Case 1b: one tree per proximity component; <= 15 edges each, disjoint.
TreePair component_trees(const TriMesh& m, const ProximityGraph& h);

/// Annulus obtained by cutting along the trees: split corner vertices, two
/// boundary cycles, Euler characteristic 0 for vertex-disjoint trees. A
/// single-vertex tree cuts to the vertex's link cycle (its star is removed).
struct CutMesh {
    TriMesh base;
    TreePair trees;
    int corner_count = 0;
    std::vector<int> corner_vertex;               // corner -> original vertex
    std::vector<std::vector<int>> corner_faces;   // base face ids, ccw within the corner arc
    std::vector<std::array<int, 3>> face_corners; // per base face; {-1,-1,-1} if removed
    std::vector<char> face_removed;
    std::vector<int> boundary1, boundary2;        // corner id cycles (t1', t2')
    long edge_count = 0;
    int kept_faces = 0;
    int chi = 0;
};

CutMesh cut_along_trees(const TriMesh& m, const TreePair& tp);

/// Curvature of a corner cycle separating the two boundaries, oriented with
/// the t1 side inside: sum over cycle corners of (#triangles on the t2 side) - 3.
int cut_cycle_curvature(const CutMesh& cm, const std::vector<int>& corner_cycle);

/// Closed walk around a tree in the base mesh (each tree edge used twice);
/// a single-vertex tree yields the degenerate one-vertex walk.
std::vector<int> tree_boundary_walk(const TriMesh& m, const Tree& t);

struct SweepTrace {
    std::vector<std::vector<int>> cycles;  // closed walks, c_0 = t1' .. c_p = t2'
    std::vector<int> step_kinds;           // 1, 2 or 3 per transition
    int side1_steps = 0;
    bool terminated = false;
    std::string diagnostic;
    int max_length = 0;
};

/// The two-sided cycle sweep between the tree boundaries: steps of kind 1
/// (corner cut), 2 (edge reroute) and 3 (ring advance), driven from t1' first
/// and from t2' when t1' is blocked, until the two fronts coincide.
SweepTrace sweep_cycles(const TriMesh& m, const TreePair& tp);
SweepTrace sweep_cycles(const CutMesh& cm);

/// Conditions 2 and 3 of the sweep lemma between consecutive cycles: every
/// vertex has a vertex of the neighbor cycle at graph distance <= 1, and every
/// edge has a neighbor-cycle vertex at distance <= 1 from both endpoints.
bool check_sweep_contracts(const TriMesh& m, const SweepTrace& trace, std::string* why = nullptr);

/// Case 2: a cycle at graph distance >= 2 from every irregular vertex that
/// separates them into groups of multiplicity not divisible by 6. The
/// interior is the side of the chosen component.
DirectedCycle separating_cycle(const TriMesh& m, int component = -1);

enum class Case2Status { Consistent, Contradiction, NotLocallyIsbell };

struct Case2Verdict {
    Case2Status status = Case2Status::NotLocallyIsbell;
    int curvature = 0;
    int curvature_mod6 = 0;
    int telescoped_sum_mod6 = 0;
    int charts_extended = 0;
    std::string details;
};

/// The mod-6 consistency check of the Case 2 argument: builds the chart of
/// each cycle vertex whose 2-neighborhood is fully colored, matches it to an
/// Isbell coloring, derives the direction table, and compares the telescoped
/// direction sum (0) against the cycle curvature mod 6. Colors use 0 for
/// unassigned vertices.
Case2Verdict case2_consistency(const TriMesh& m, const std::vector<int>& colors,
                               const DirectedCycle& c2);

/// Chart of the 2-neighborhood of cycle vertex i: mesh vertex for each GH
/// label index (same indexing as fragment(GH).points). Requires the vertex
/// and its neighbors regular.
std::vector<int> chart_psi(const TriMesh& m, const DirectedCycle& c2, int i);

}  // namespace sphere7
