#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sphere7/mesh.hpp"

namespace sphere7 {

/// Plain undirected graph with sorted adjacency lists.
struct Graph {
    int n = 0;
    std::vector<std::vector<int>> adj;

    static Graph from_edges(int n, const std::vector<std::pair<int, int>>& edges);
    static Graph from_mesh(const TriMesh& m);
    bool has_edge(int u, int v) const;
    long edge_count() const;
};

/// Square of a graph: edge iff graph distance is 1 or 2.
Graph square_graph(const Graph& g);

/// Colors are 1..k; 0 marks an unassigned vertex in partial colorings.
struct NiceCheckResult {
    bool ok = false;
    int witness_u = -1, witness_v = -1;  // first violating pair when !ok
};

/// True iff the total coloring properly colors the square graph.
/// Throws on out-of-range colors or incomplete assignments.
NiceCheckResult is_nice_coloring(const Graph& g, const std::vector<int>& colors, int k);

enum class SearchMode { Find, Enumerate, ProveUnsat };

struct SearchOptions {
    int k = 7;
    SearchMode mode = SearchMode::Find;
    std::vector<int> fixed;            // partial assignment (0 = free); may be empty
    bool fix_first_neighborhood = false; // symmetry breaking: pin one closed 1-neighborhood to 1..7
    double timeout_seconds = 1e18;
    bool collect_solutions = false;
    std::size_t max_collected = 16;
};

struct SearchStats {
    unsigned long long nodes_expanded = 0;
    int max_depth = 0;
    double elapsed_seconds = 0;
};

struct SearchOutcome {
    enum class Status { Sat, Unsat, Enumerated, Indeterminate };
    Status status = Status::Indeterminate;
    std::optional<std::vector<int>> coloring;  // a witness for Sat
    unsigned long long count = 0;              // solutions found (Enumerate)
    std::vector<std::vector<int>> solutions;   // collected when requested
    SearchStats stats;
};

/// Complete backtracking over the square graph with saturation-degree vertex
/// selection (ties by vertex id) and forced-assignment propagation. Unsat is
/// reported only when the tree was exhausted; timeouts yield Indeterminate.
SearchOutcome search_nice_coloring(const Graph& g, const SearchOptions& opts);

/// Chromatic number of a plain graph by exhaustive search (used for small
/// unit-distance graphs). Returns the smallest k admitting a proper coloring.
int chromatic_number(const Graph& g, int max_k = 8);

const char* to_string(SearchOutcome::Status s);

}  // namespace sphere7
