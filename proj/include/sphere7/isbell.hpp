#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sphere7/coloring.hpp"

namespace sphere7 {

/// Axial coordinates on the infinite triangular lattice. The six neighbors
/// are (+-1,0), (0,+-1), (+1,-1), (-1,+1); unit direction index d is the
/// angle d*60 degrees counterclockwise from (1,0).
struct LatticePoint {
    int a = 0, b = 0;
    bool operator<(const LatticePoint& o) const { return a < o.a || (a == o.a && b < o.b); }
    bool operator==(const LatticePoint& o) const { return a == o.a && b == o.b; }
};

extern const std::array<LatticePoint, 6> kLatticeDirections;

inline LatticePoint operator+(LatticePoint p, LatticePoint q) { return {p.a + q.a, p.b + q.b}; }
inline LatticePoint operator-(LatticePoint p, LatticePoint q) { return {p.a - q.a, p.b - q.b}; }
bool lattice_adjacent(LatticePoint p, LatticePoint q);
/// Direction index 0..5 of the unit step q - p; throws if not adjacent.
int direction_index(LatticePoint p, LatticePoint q);

enum class FragmentKind { Gh, GhPlus, GHMinus, GH, Custom };

/// Finite lattice patch with its induced adjacency. For GH the canonical
/// labels are u, u_1..u_6, u_{j,j}, u_{j,j+1} in counterclockwise layout.
struct LatticeFragment {
    FragmentKind kind = FragmentKind::Custom;
    std::vector<LatticePoint> points;     // index = local vertex id
    std::vector<std::string> labels;      // aligned with points
    Graph graph;                          // induced lattice adjacency
    int center = -1;                      // local id of u when present

    int index_of(LatticePoint p) const;   // -1 if absent
};

LatticeFragment fragment(FragmentKind kind);
LatticeFragment fragment_from_points(std::vector<LatticePoint> pts);

/// The two chirality classes of Isbell colorings, represented as linear
/// residue forms mod 7: residue(a, b) = (a + m*b) mod 7 with m = 3 (A) or
/// m = 5 (B). The representation is validated by the uniqueness check below.
enum class Chirality { A, B };
int chirality_multiplier(Chirality c);

struct IsbellParams {
    Chirality chirality = Chirality::A;
    std::array<int, 7> perm = {1, 2, 3, 4, 5, 6, 7};  // residue -> color in 1..7
    LatticePoint base{0, 0};
};

int isbell_color(const IsbellParams& p, LatticePoint q);
int isbell_residue(const IsbellParams& p, LatticePoint q);
/// True iff q - base lies in the period (same-color) sublattice.
bool isbell_period_member(const IsbellParams& p, LatticePoint q);

/// All 2 * 7! distinct Isbell colorings, base folded into the permutation.
std::vector<IsbellParams> all_isbell_colorings();

/// Ordered (color_i, color_j) -> unit direction 0..5; defined exactly on the
/// 42 ordered pairs realized on lattice edges.
struct DirectionTable {
    std::array<std::array<int, 8>, 8> dir;  // -1 where undefined; indices 1..7
    int lookup(int ci, int cj) const;       // throws on unrealizable pairs
    bool defined(int ci, int cj) const { return dir[ci][cj] >= 0; }
};

DirectionTable direction_table(const IsbellParams& p);

/// The coloring of the central hexagon used by the uniqueness figure:
/// center 1, neighbors (4, 5, 6, 7, 2, 3) in direction order.
std::array<int, 7> canonical_center_coloring();

struct UniquenessReport {
    unsigned long long fixed_center_count = 0;   // expected 2
    unsigned long long unrestricted_count = 0;   // expected 10080 = 7! * 2
    bool completions_are_isbell = false;
    bool all_colorings_are_isbell = false;
    bool pass = false;
};

/// Machine check that GH admits exactly two nice 7-colorings once the central
/// hexagon is pinned, both restrictions of Isbell colorings, and that every
/// unrestricted nice coloring of GH is an Isbell restriction (which also
/// certifies the linear-form representation is exhaustive).
UniquenessReport verify_isbell_uniqueness();

struct ExtensionReport {
    bool gh_always_two = false;       // every realizable G_h coloring: exactly 2 extensions
    bool ghplus_at_most_one = false;  // every realizable G_h+ coloring: exactly 1
    int gh_classes = 0;
    int ghplus_classes = 0;
    bool pass = false;
};

/// Machine check of the extension rigidity over all Isbell colorings.
ExtensionReport verify_isbell_extension();

/// Direction differences summed along a closed lattice walk, mod 6 (= 0).
int walk_direction_sum_mod6(const IsbellParams& p, const std::vector<LatticePoint>& closed_walk);

}  // namespace sphere7
